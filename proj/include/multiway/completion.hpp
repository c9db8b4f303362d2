#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "multiway/core.hpp"
#include "multiway/graph.hpp"

namespace multiway {

// Critical pair of two string rules: peak = x·y·z where a suffix y of one
// lhs is a prefix of the other (or one lhs contains the other).
struct StringCriticalPair {
    std::string peak, left, right;
    RuleId rule1 = 0, rule2 = 0;
    std::size_t overlap_at = 0;  // offset of lhs2 inside the peak
};

// Critical pair of two term rules: lhs2 unified with a non-variable subterm
// of lhs1 (variables renamed apart).
struct TermCriticalPair {
    Term peak, left, right;
    RuleId rule1 = 0, rule2 = 0;
    std::vector<std::size_t> position;  // path of the overlapped subterm
};

using CriticalPair = std::variant<StringCriticalPair, TermCriticalPair>;

// All critical pairs, rule pairs in id order, overlaps left to right.
// Trivial self-overlap at offset 0 is excluded. Throws SubstrateUnsupported
// for hypergraph rules.
std::vector<CriticalPair> critical_pairs(const std::vector<Rule>& rules);

// Bounded joinability: both sides reach a common state within `depth`
// rewrites under `rules`.
bool joinable(const CriticalPair& cp, const std::vector<Rule>& rules,
              std::uint32_t depth);

// Reduction ordering used to orient equations.
struct ReductionOrdering {
    enum class Kind { Shortlex, Lpo } kind = Kind::Shortlex;
    std::string alphabet;                  // shortlex: symbol order, least first
    std::vector<std::string> precedence;   // lpo: greatest first
};

struct CompletionResult {
    enum class Status { Completed, Diverged, OrderFailure } status = Status::Completed;
    std::vector<Rule> rules;  // the completed system (on success)
    struct AddedRule {
        Rule rule;
        std::string peak_text;   // the peak whose divergence forced the rule
        std::string left_text, right_text;
    };
    std::vector<AddedRule> added;
    std::string detail;  // failure description (unorientable pair, cap hit)
};

// Knuth-Bendix completion with interreduction (on by default). Every initial
// rule must already satisfy lhs > rhs, else OrderFailure. Exceeding max_rules
// or max_iterations yields Diverged with the partial system in `rules`.
CompletionResult knuth_bendix(const std::vector<Rule>& rules,
                              const ReductionOrdering& ordering,
                              std::size_t max_rules = 64,
                              std::size_t max_iterations = 512,
                              bool interreduce = true);

// Normal form under leftmost-first rewriting, bounded by `fuel` steps.
// Returns the state text reached (fixed point within fuel or last state).
std::string normalize_text(Substrate sub, const std::string& text,
                           const std::vector<Rule>& rules, std::size_t fuel = 4096);

// Before/after comparison of branchial slice sizes: evolve `initial` under
// the original and the completed rules, foliate, and tabulate per-slice
// state and branchial-edge counts.
struct ObserverReport {
    struct SliceStat {
        std::size_t slice = 0;
        std::size_t states = 0;
        std::size_t branchial_edges = 0;
    };
    std::vector<SliceStat> before, after;
};

ObserverReport observer_report(const State& initial, const std::vector<Rule>& original,
                               const std::vector<Rule>& completed, std::uint32_t steps);

}  // namespace multiway
