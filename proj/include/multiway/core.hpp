#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "multiway/errors.hpp"
#include "multiway/hypergraph.hpp"
#include "multiway/ids.hpp"
#include "multiway/strings.hpp"
#include "multiway/term.hpp"

namespace multiway {

// A state instance: canonical-or-raw payload plus its token identities.
using State = std::variant<StringState, GraphState, TermState>;

Substrate substrate_of(const State& s);
std::size_t token_count(const State& s);
const std::vector<TokenId>& tokens_of(const State& s);

// Identity of a state in the multiway store. Strings compare by equality,
// hypergraphs by exact isomorphism (canonical certificate), terms
// syntactically.  Keys are prefixed with the substrate tag, so keys of
// different substrates never collide.
std::string canonical_key(const State& s);

// Human-readable text of the payload (also the parseable state text).
std::string state_text(const State& s);

// Rewrite rule over one substrate. level 0 rules are ordinary evolution
// rules; level k >= 1 rules are homotopy rules produced by synthesis or
// declared with @level k. Homotopy rules default to anchored (whole-state)
// matching.
struct Rule {
    RuleId id = 0;
    int level = 0;
    bool anchored = false;
    Substrate substrate = Substrate::String;
    std::variant<StringRulePattern, HyperRulePattern, TermRulePattern> pattern;
};

// Structural equality ignoring id (used for rule-set deduplication).
bool same_rule(const Rule& a, const Rule& b);

// One concrete way a rule matches a state.
struct Match {
    RuleId rule = 0;
    std::variant<StringMatch, GraphMatch, TermMatch> where;
};

// Deterministic text form of a match's binding; part of event identity.
std::string binding_repr(const Match& m);

// An applied rewrite. consumed/produced are token id sets (sorted); copied
// records surviving tokens as (source id, target id) pairs. consumed and
// produced are always disjoint.
struct Event {
    EventId id = 0;
    RuleId rule = 0;
    int level = 0;
    std::string source_key;
    std::string target_key;
    std::vector<TokenId> consumed;
    std::vector<TokenId> produced;
    std::vector<std::pair<TokenId, TokenId>> copied;
    std::uint32_t generation = 0;
    std::string binding;
};

// All matches of the given rules anywhere in the state, rules in id order,
// matches in enumeration order.
std::vector<Match> all_matches(const State& s, const std::vector<Rule>& rules);

// Structural application: the raw (uncanonicalized) result plus the
// source-position provenance needed for token bookkeeping.
//   consumed_src: source token positions removed
//   kept: (source position, raw result position) of surviving tokens
//   fresh_raw: raw result positions minted by the rhs instance
struct RawApply {
    State result;
    std::vector<std::size_t> consumed_src;
    std::vector<std::pair<std::size_t, std::size_t>> kept;
    std::vector<std::size_t> fresh_raw;
};

RawApply apply_match_raw(const State& s, const Rule& r, const Match& m);

// Canonicalize a raw result: payload in canonical form, token slots permuted
// accordingly. perm[p] = raw position at canonical position p.
struct Canonicalized {
    State state;
    std::string key;
    std::vector<std::size_t> perm;
};

Canonicalized canonicalize_state(const State& raw);

// One successor of s: the event (token-accurate, persistent ids for
// untouched constituents) and the canonical target instance.
struct Successor {
    Event event;
    State state;
};

// One successor per distinct match of any rule anywhere in s. Fresh tokens
// are minted from *next_token in match order. Event ids number successors
// 0..n-1; generation is left 0.
std::vector<Successor> successors(const State& s, const std::vector<Rule>& rules,
                                  TokenId* next_token);

// The rule set united with its reversals, deduplicated structurally. Fresh
// rhs variables of hypergraph rules become matched lhs variables of the
// reversal.  Throws NonInvertibleRule for empty or bare-variable reverse lhs.
// Idempotent: add_inverses(add_inverses(R)) == add_inverses(R) as a set.
std::vector<Rule> add_inverses(const std::vector<Rule>& rules);

// Parse/print state text for a substrate ({{1,2}} / ABBA / g[a,inv[a]]).
State parse_state_text(Substrate sub, const std::string& text);

// Rule text: "lhs -> rhs" plus " @level k" for homotopy rules.
std::string rule_text(const Rule& r);

}  // namespace multiway
