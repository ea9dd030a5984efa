// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/common.hpp"
#include "rainbow/rng.hpp"

#include <numeric>

namespace rainbow {

const char *to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Parse:
        return "parse";
    case ErrorKind::InvalidInput:
        return "invalid-input";
    case ErrorKind::Precondition:
        return "precondition";
    case ErrorKind::Gate:
        return "gate";
    case ErrorKind::RetriesExhausted:
        return "retries-exhausted";
    case ErrorKind::CapExceeded:
        return "cap-exceeded";
    case ErrorKind::Internal:
        return "internal";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string &what, const std::string &stage) { throw Error(kind, what, stage); }

std::uint64_t mix_seed(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
    return mix_seed(mix_seed(seed ^ mix_seed(stream + 0x632be59bd9b4e019ULL)) + counter);
}

std::uint64_t Rng::below(std::uint64_t n)
{
    // rejection on the top zone keeps it unbiased
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

std::size_t Rng::weighted(const std::vector<double> &weights)
{
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double x = uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (x < weights[i])
            return i;
        x -= weights[i];
    }
    // rounding: fall back to the last positive weight
    for (std::size_t i = weights.size(); i > 0; --i)
        if (weights[i - 1] > 0)
            return i - 1;
    return 0;
}

std::vector<std::uint32_t> sample_indices(Rng &rng, std::uint32_t n, std::uint32_t k)
{
    if (k > n)
        k = n;
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    for (std::uint32_t i = 0; i < k; ++i) {
        auto j = i + rng.below(n - i);
        std::swap(all[i], all[j]);
    }
    all.resize(k);
    return all;
}

} // namespace rainbow
