#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multiway/core.hpp"
#include "multiway/graph.hpp"

namespace multiway {

// Causal dependency network of one evolution: vertices are events, edge
// a -> b iff b consumed a token a produced, with the witnessing tokens.
struct CausalNetwork {
    std::vector<EventId> events;
    struct Edge {
        EventId from = 0, to = 0;
        std::vector<TokenId> witness;  // sorted
    };
    std::vector<Edge> edges;  // sorted by (from, to)
};

// Direct In/Out intersection over events with globally unique token ids
// (a single-way run). Throws DuplicateTokenProduction if two events claim
// one produced token.
CausalNetwork build_causal_network(const std::vector<Event>& events);

// Causal edges between the events of a merged multiway store. Token
// provenance is walked through the events' copied maps, so a token consumed
// generations after its mint still yields an edge to its producer(s).
CausalNetwork multiway_causal_network(const MultiwayGraph& g);

// Canonical certificate of a causal network viewed as a DAG, vertices
// colored by rule id when `labeled` (the default), uniformly otherwise.
std::string causal_certificate(const CausalNetwork& net, const std::vector<Event>& events,
                               bool labeled);

struct InvarianceReport {
    enum class Verdict { True, False, Inconclusive } verdict = Verdict::Inconclusive;
    std::size_t paths_enumerated = 0;
    std::uint32_t depth = 0;
    bool labeled = true;
    bool path_cap_exceeded = false;
    // Indices of the first differing pair when verdict == False.
    std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
    std::string certificate;  // the common certificate when verdict == True
};

// Enumerates at most path_cap maximal single-way match-choice sequences to
// `depth`, builds each causal network, and compares canonical certificates.
// Exceeding the cap yields Inconclusive, never a verdict. A depth-bounded
// necessary check, not a proof.
InvarianceReport causal_invariance_verdict(const State& initial,
                                           const std::vector<Rule>& rules,
                                           std::uint32_t depth, std::size_t path_cap,
                                           bool labeled = true);

}  // namespace multiway
