#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "multiway/core.hpp"

namespace multiway {

struct StoredState {
    StateIndex index = 0;
    std::string key;
    State instance;               // canonical payload, store-owned token ids
    std::uint32_t generation = 0; // first-reach depth
};

struct EvolveOptions {
    std::uint32_t max_states = 0;  // 0: use MULTIWAY_MAX_STATES env or 100000
    unsigned threads = 1;
};

// Merged multiway evolution graph: canonical states, deduplicated events
// (identity = rule + source + binding), and the rule tower that produced it.
// Construction is deterministic: identical inputs give identical stores,
// regardless of worker count.
class MultiwayGraph {
public:
    Substrate substrate = Substrate::String;
    std::vector<StoredState> states;
    std::vector<Event> events;
    std::vector<Rule> tower;              // every rule, all levels
    std::vector<std::string> initial_keys;
    std::uint32_t steps = 0;

    const StoredState& state_at(const std::string& key) const;
    bool has_state(const std::string& key) const;
    const StoredState* find_state(const std::string& key) const;

    // Sorted unique state pairs with at least one edge of the level.
    std::vector<EventId> events_from(const std::string& key) const;
    std::vector<EventId> events_into(const std::string& key) const;
    bool has_edge(const std::string& a, const std::string& b, int level) const;
    std::vector<std::string> targets_of(const std::string& key, int level) const;
    std::vector<std::string> sources_of(const std::string& key, int level) const;

    // Test/import builder: seed a state (payload parsed from text) or a bare
    // typed edge with empty token data.
    StateIndex seed_state(const std::string& text, std::uint32_t generation = 0);
    void seed_edge(const std::string& src_text, const std::string& dst_text, int level);

    void rebuild_adjacency();

private:
    std::unordered_map<std::string, StateIndex> by_key_;
    std::unordered_map<std::string, std::vector<EventId>> out_, in_;
    std::unordered_set<std::string> event_sigs_;
    TokenId next_token_ = 0;

    friend MultiwayGraph evolve(const std::vector<State>&, const std::vector<Rule>&,
                                std::uint32_t, const EvolveOptions&);
};

// Breadth-first closure to the given depth. States reached first at step g
// get generation g; rediscoveries only add events. Throws
// FrontierLimitExceeded when the state cap is passed.
MultiwayGraph evolve(const std::vector<State>& initials, const std::vector<Rule>& rules,
                     std::uint32_t steps, const EvolveOptions& opts = {});

// Single-way strategies.
//   FirstMatch: the first match in deterministic order, one event per step.
//   AllNonOverlapping: a greedy maximal set of token-disjoint matches in
//   seeded order, applied simultaneously.
struct Strategy {
    enum class Kind { FirstMatch, AllNonOverlapping } kind = Kind::FirstMatch;
    std::uint64_t seed = 0;
};

struct SinglewayStep {
    State state;                 // instance after the step (step 0: initial)
    std::vector<Event> events;   // events applied at this step (empty at 0)
};

struct SinglewayRun {
    std::vector<SinglewayStep> steps;
    std::vector<Event> all_events() const;
};

// Runs until `steps` events fire or no match remains. Token ids persist
// across steps for untouched constituents, so In/Out intersections across
// the run are meaningful.
SinglewayRun singleway_evolve(const State& initial, const std::vector<Rule>& rules,
                              const Strategy& strategy, std::uint32_t steps);

// Foliation by longest path from the initial states. Every edge strictly
// increases the time function. Throws CyclicGraph.
struct Foliation {
    std::vector<std::uint32_t> time;               // by state index
    std::vector<std::vector<std::string>> slices;  // keys, sorted within slice
};

Foliation foliate(const MultiwayGraph& g);

// Undirected weighted graph on one slice: weight = number of common
// ancestors within ancestor_depth reverse steps (proper ancestors only).
struct BranchialGraph {
    std::vector<std::string> vertices;  // sorted keys
    struct Edge {
        std::string a, b;          // a < b
        std::size_t weight = 0;
    };
    std::vector<Edge> edges;       // sorted by (a, b)
};

BranchialGraph branchial_graph(const MultiwayGraph& g, const Foliation& fol,
                               std::size_t slice_index, std::uint32_t ancestor_depth = 1);

// All directed walks a -> ... -> b with at most max_len edges, in
// lexicographic order of event-id sequences. a == b contributes the
// zero-length path. `truncated` reports hitting max_paths.
struct PathSet {
    std::vector<std::vector<EventId>> paths;
    bool truncated = false;
};

PathSet paths_between(const MultiwayGraph& g, const std::string& a_key,
                      const std::string& b_key, std::size_t max_len,
                      std::size_t max_paths);

// Keys of a path's state sequence (path given as event ids).
std::vector<std::string> path_states(const MultiwayGraph& g, const std::string& from,
                                     const std::vector<EventId>& path);

}  // namespace multiway
