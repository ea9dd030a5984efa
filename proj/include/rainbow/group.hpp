// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rainbow {

// Finite abelian group on {0, ..., n-1} given by its Cayley table.
class AbelianGroup {
  public:
    // throws InvalidInput unless the table is associative, commutative, has an
    // identity and inverses
    static AbelianGroup from_table(std::vector<std::vector<std::uint32_t>> table);
    // Z_m1 x ... x Z_ms, elements in mixed radix with m1 least significant
    static AbelianGroup product(const std::vector<std::uint32_t> &moduli);
    static AbelianGroup cyclic(std::uint32_t n) { return product({n}); }
    // "Z16", "Z2xZ2xZ4" or "Z_2 x Z_8"
    static AbelianGroup parse_spec(const std::string &spec);
    // "order n" then n rows of n indices
    static AbelianGroup parse_table(std::istream &in);
    static AbelianGroup load_table(const std::string &path);

    std::uint32_t order() const { return n_; }
    std::uint32_t identity() const { return identity_; }
    std::uint32_t op(std::uint32_t a, std::uint32_t b) const { return table_[std::size_t(a) * n_ + b]; }
    std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
    const std::string &name() const { return name_; }

  private:
    std::uint32_t n_ = 0;
    std::uint32_t identity_ = 0;
    std::vector<std::uint32_t> table_;
    std::vector<std::uint32_t> inverse_;
    std::string name_;
};

} // namespace rainbow
