// Copyright 2026 The rainbow-embed Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

using Vertex = std::uint32_t;
using Colour = std::uint32_t;
using EdgeId = std::uint32_t;

// sorted, duplicate free
using ColourSet = std::vector<Colour>;
using VertexSet = std::vector<Vertex>;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge &, const Edge &) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline std::uint64_t edge_key(Vertex a, Vertex b)
{
    auto e = make_edge(a, b);
    return (std::uint64_t(e.u) << 32) | e.v;
}

enum class ErrorKind {
    Parse,          // malformed input text
    InvalidInput,   // well formed but violates an invariant (self loop, duplicate edge, ...)
    Precondition,   // operation called outside its contract
    Gate,           // feasibility gate rejected the instance
    RetriesExhausted,
    CapExceeded,
    Internal        // a verifier caught our own bug
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what, std::string stage = {})
        : std::runtime_error(what), kind_(kind), stage_(std::move(stage))
    {
    }

    ErrorKind kind() const { return kind_; }
    const std::string &stage() const { return stage_; }

    // free form lines attached by the thrower (per colour gate tables and the like)
    std::vector<std::string> details;

  private:
    ErrorKind kind_;
    std::string stage_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &what, const std::string &stage = {});

} // namespace rainbow
