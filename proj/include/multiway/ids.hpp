#pragma once

#include <cstdint>

namespace multiway {

// Globally unique identity of one atomic constituent of a state: a character
// occurrence, a hyperedge occurrence, or a term node. Rewrites consume the
// tokens they match and mint fresh tokens for the entire rhs instance.
using TokenId = std::uint64_t;

using RuleId = std::uint32_t;
using EventId = std::uint32_t;
using StateIndex = std::uint32_t;
using VertexId = std::uint64_t;

enum class Substrate { String, Hypergraph, Term };

inline const char* substrate_name(Substrate s) {
    switch (s) {
        case Substrate::String: return "string";
        case Substrate::Hypergraph: return "hypergraph";
        case Substrate::Term: return "term";
    }
    return "?";
}

}  // namespace multiway
