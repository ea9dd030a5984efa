// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#include "rainbow/group.hpp"

#include "rainbow/common.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace rainbow {

AbelianGroup AbelianGroup::from_table(std::vector<std::vector<std::uint32_t>> table)
{
    const auto n = std::uint32_t(table.size());
    if (n == 0)
        fail(ErrorKind::InvalidInput, "group table is empty");
    AbelianGroup g;
    g.n_ = n;
    g.table_.reserve(std::size_t(n) * n);
    for (std::uint32_t a = 0; a < n; ++a) {
        if (table[a].size() != n)
            fail(ErrorKind::InvalidInput, "group table row " + std::to_string(a) + " has " +
                                              std::to_string(table[a].size()) + " entries, expected " +
                                              std::to_string(n));
        for (auto x : table[a]) {
            if (x >= n)
                fail(ErrorKind::InvalidInput, "group table entry " + std::to_string(x) + " out of range");
            g.table_.push_back(x);
        }
    }
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            if (g.op(a, b) != g.op(b, a))
                fail(ErrorKind::InvalidInput,
                     "group table is not commutative at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    bool found = false;
    for (std::uint32_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::uint32_t a = 0; a < n && ok; ++a)
            ok = g.op(e, a) == a;
        if (ok) {
            g.identity_ = e;
            found = true;
        }
    }
    if (!found)
        fail(ErrorKind::InvalidInput, "group table has no identity");
    g.inverse_.assign(n, n);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            if (g.op(a, b) == g.identity_) {
                g.inverse_[a] = b;
                break;
            }
    for (std::uint32_t a = 0; a < n; ++a)
        if (g.inverse_[a] == n)
            fail(ErrorKind::InvalidInput, "element " + std::to_string(a) + " has no inverse");
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            for (std::uint32_t c = 0; c < n; ++c)
                if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
                    fail(ErrorKind::InvalidInput, "group table is not associative at (" + std::to_string(a) + "," +
                                                      std::to_string(b) + "," + std::to_string(c) + ")");
    g.name_ = "table(" + std::to_string(n) + ")";
    return g;
}

AbelianGroup AbelianGroup::product(const std::vector<std::uint32_t> &moduli)
{
    if (moduli.empty())
        fail(ErrorKind::InvalidInput, "group needs at least one factor");
    std::uint64_t n = 1;
    for (auto m : moduli) {
        if (m == 0)
            fail(ErrorKind::InvalidInput, "cyclic factor of order 0");
        n *= m;
        if (n > (1u << 16))
            fail(ErrorKind::CapExceeded, "group order above 65536");
    }
    AbelianGroup g;
    g.n_ = std::uint32_t(n);
    g.table_.resize(n * n);
    g.inverse_.resize(n);
    auto add = [&](std::uint32_t a, std::uint32_t b) {
        std::uint32_t out = 0, scale = 1;
        for (auto m : moduli) {
            out += ((a % m + b % m) % m) * scale;
            a /= m;
            b /= m;
            scale *= m;
        }
        return out;
    };
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            g.table_[std::size_t(a) * n + b] = add(a, b);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            if (g.op(a, b) == 0) {
                g.inverse_[a] = b;
                break;
            }
    for (std::size_t i = 0; i < moduli.size(); ++i)
        g.name_ += (i ? "xZ" : "Z") + std::to_string(moduli[i]);
    return g;
}

AbelianGroup AbelianGroup::parse_spec(const std::string &spec)
{
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '_')
            s += char(std::tolower(static_cast<unsigned char>(c)));
    std::vector<std::uint32_t> moduli;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        if (part.size() < 2 || part[0] != 'z' ||
            !std::all_of(part.begin() + 1, part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            fail(ErrorKind::Parse, "bad group spec '" + spec + "' (expected e.g. Z16 or Z2xZ8)");
        moduli.push_back(std::uint32_t(std::stoul(part.substr(1))));
    }
    if (moduli.empty())
        fail(ErrorKind::Parse, "bad group spec '" + spec + "'");
    return product(moduli);
}

AbelianGroup AbelianGroup::parse_table(std::istream &in)
{
    std::string word;
    std::size_t n = 0;
    if (!(in >> word >> n) || word != "order")
        fail(ErrorKind::Parse, "group table must start with 'order n'");
    if (n == 0 || n > (1u << 12))
        fail(ErrorKind::Parse, "group order " + std::to_string(n) + " out of range");
    std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            long long x;
            if (!(in >> x) || x < 0)
                fail(ErrorKind::Parse, "group table row " + std::to_string(a) + " is short or malformed");
            table[a][b] = std::uint32_t(x);
        }
    return from_table(std::move(table));
}

AbelianGroup AbelianGroup::load_table(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, "cannot open group table " + path);
    return parse_table(in);
}

} // namespace rainbow
