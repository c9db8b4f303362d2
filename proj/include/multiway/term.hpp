#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multiway/ids.hpp"

namespace multiway {

// First-order term. Variables occur only inside rule patterns; states are
// ground. Constants are nullary function symbols.
struct Term {
    std::string head;
    bool is_var = false;
    std::vector<Term> args;

    bool operator==(const Term& o) const {
        return is_var == o.is_var && head == o.head && args == o.args;
    }
    bool operator!=(const Term& o) const { return !(*this == o); }
};

// Node count, the size measure used everywhere (variables count as one node).
std::size_t term_size(const Term& t);

// Canonical text: head[arg,arg,...], nullary heads bare.
std::string to_text(const Term& t);

struct TermState {
    Term root;
    std::vector<TokenId> tokens;  // one per node, preorder
};

struct TermRulePattern {
    Term lhs;
    Term rhs;
};

// Path from the root: arg indices. Preorder index is carried alongside since
// token ranges are preorder-contiguous.
struct TermMatch {
    std::vector<std::size_t> path;
    std::size_t preorder = 0;       // preorder index of the matched node
    std::size_t subtree_size = 0;   // nodes covered by the matched subterm
    std::map<std::string, Term> binding;
};

// All positions where lhs matches a subterm of host, preorder. Repeated
// variables require syntactically equal captures. Anchored patterns match at
// the root only. Throws BareVariableLhs.
std::vector<TermMatch> enumerate_matches(const Term& host, const Term& lhs,
                                         bool anchored);

// Substitute binding into a pattern term (every variable must be bound).
Term instantiate(const Term& pattern, const std::map<std::string, Term>& binding);

// Replace the subterm at path with `replacement`.
Term replace_at(const Term& host, const std::vector<std::size_t>& path,
                const Term& replacement);

enum class Cmp { Less, Equal, Greater };

struct TermOrdering {
    enum class Kind { Shortlex, Lpo } kind = Kind::Lpo;
    // Symbol precedence, greatest first. Symbols absent from the list rank
    // below every listed one, ordered by name.
    std::vector<std::string> precedence;
};

// Shortlex compares sizes, then the preorder symbol sequences under the
// precedence order. Lpo is the standard lexicographic path order. Throws
// Incomparable when neither relation holds (open terms under lpo).
Cmp compare(const Term& a, const Term& b, const TermOrdering& ord);

// Syntactic unification with occurs check; std::nullopt when not unifiable.
std::optional<std::map<std::string, Term>> unify(const Term& a, const Term& b);

}  // namespace multiway
