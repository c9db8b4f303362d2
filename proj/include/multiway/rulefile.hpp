#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multiway/core.hpp"

namespace multiway {

// Parsed rule file. Sections in any order before the first rule line:
//   substrate: string | hypergraph | term
//   alphabet: AB              (strings; inferred from rules when absent)
//   signature: g/2 inv/1 a/0  (terms)
//   variables: x y z          (terms; hypergraph vertex variables are implicit)
//   precedence: g > inv > a   (terms; descending, '>' optional)
//   init: AA                  (repeatable)
// Rule lines: lhs -> rhs  with optional trailing @level k. '#' starts a comment.
struct RuleFile {
    Substrate substrate = Substrate::String;
    std::optional<std::string> alphabet;
    std::vector<std::pair<std::string, std::size_t>> signature;  // symbol, arity
    std::vector<std::string> variables;
    std::vector<std::string> precedence;  // greatest first
    std::vector<std::string> inits;       // state text, substrate syntax
    std::vector<Rule> rules;
};

// Throws ParseError with 1-based line/column on malformed input and
// SemanticError on declared-but-inconsistent content (unknown symbol,
// arity clash, rhs-only term variable, bare-variable lhs).
RuleFile parse_rule_file(const std::string& text);

RuleFile load_rule_file(const std::string& path);

// Canonical text form; parse_rule_file(print_rule_file(f)) reproduces f.
std::string print_rule_file(const RuleFile& f);

// Initial states materialized against the declared substrate.
std::vector<State> initial_states(const RuleFile& f);

}  // namespace multiway
