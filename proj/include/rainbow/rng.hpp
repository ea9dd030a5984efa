// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace rainbow {

// splitmix64 finaliser; used to derive independent sub-seeds by counter
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter = 0);

// The standard distributions are implementation defined, so everything that
// must reproduce byte for byte goes through these helpers instead.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

    std::uint64_t bits() { return engine_(); }

    // uniform in [0, n), n > 0
    std::uint64_t below(std::uint64_t n);

    // uniform in [0, 1)
    double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p)
    {
        if (p <= 0.0)
            return false;
        if (p >= 1.0)
            return true;
        return uniform() < p;
    }

    template <typename T> void shuffle(std::vector<T> &xs)
    {
        for (std::size_t i = xs.size(); i > 1; --i) {
            auto j = below(i);
            std::swap(xs[i - 1], xs[j]);
        }
    }

    // index drawn proportionally to non-negative weights (total > 0)
    std::size_t weighted(const std::vector<double> &weights);

  private:
    std::mt19937_64 engine_;
};

// k distinct values from [0, n), in random order
std::vector<std::uint32_t> sample_indices(Rng &rng, std::uint32_t n, std::uint32_t k);

} // namespace rainbow
