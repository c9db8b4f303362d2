#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multiway/ids.hpp"

namespace multiway {

// An ordered hyperedge: a tuple of vertex labels. Arity >= 1.
using HyperEdge = std::vector<VertexId>;

// A hypergraph is a MULTISET of ordered hyperedges; edge list order carries no
// meaning beyond token bookkeeping ({{0,0},{0,0}} has two distinct edge
// occurrences). One token per edge occurrence.
struct Hypergraph {
    std::vector<HyperEdge> edges;
};

struct GraphState {
    Hypergraph graph;
    std::vector<TokenId> tokens;  // tokens.size() == graph.edges.size()
};

// One pattern slot: either a variable name or a literal vertex.
struct PatternAtom {
    bool is_var = false;
    std::string var;      // set when is_var
    VertexId literal = 0; // set when !is_var
};

using PatternEdge = std::vector<PatternAtom>;

struct PatternGraph {
    std::vector<PatternEdge> edges;
};

struct HyperRulePattern {
    PatternGraph lhs;
    PatternGraph rhs;
};

// Match of a pattern against a host graph.
//   assignment[i] = host edge index bound by pattern edge i (repetition
//   allowed: two pattern edges may name the same occurrence of a duplicated
//   edge value; apply resolves the extra occurrences deterministically).
//   consumed = host edge indices actually removed on apply, sorted ascending;
//   |consumed| == |pattern lhs| always.
struct GraphMatch {
    std::vector<std::size_t> assignment;
    std::vector<std::size_t> consumed;
    std::map<std::string, VertexId> binding;
};

// All matches of lhs in host, in lexicographic order of assignment tuples.
// Set vertex_injective to forbid two variables sharing one host vertex.
// Throws EmptyLhs.
std::vector<GraphMatch> enumerate_matches(const Hypergraph& host,
                                          const PatternGraph& lhs,
                                          bool vertex_injective = false);

// Result of removing a match and instantiating a rhs over its binding.
// Fresh rhs-only variables take the smallest positive labels absent from the
// host, in rhs left-to-right order. `kept` maps surviving host edge indices to
// their positions in the new edge list; `fresh` lists the rhs instance
// positions.
struct GraphRewrite {
    Hypergraph result;
    std::vector<std::pair<std::size_t, std::size_t>> kept;
    std::vector<std::size_t> fresh;
};

GraphRewrite apply_match(const Hypergraph& host, const HyperRulePattern& rule,
                         const GraphMatch& match);

// Exact canonical form under vertex relabeling: the lexicographically least
// relabeled sorted edge list, found by partition refinement plus backtracking.
// edge_perm[p] = original index of the edge at canonical position p (ties
// between equal canonical edges broken by original index).
struct CanonicalForm {
    std::vector<HyperEdge> edges;
    std::vector<std::size_t> edge_perm;
    std::string certificate;
};

CanonicalForm canonicalize(const Hypergraph& h);

// Colored variant for event-graph certificates: vertices are 0..n-1 (isolated
// vertices allowed), and only color-preserving relabelings are considered.
// The certificate covers vertex count, the canonical color sequence and the
// canonical edge list.
CanonicalForm canonicalize_colored(std::size_t n_vertices,
                                   const std::vector<HyperEdge>& edges,
                                   const std::vector<int>& colors);

// Brute-force isomorphism over all vertex bijections. Exponential; meant as an
// oracle for small graphs.
bool isomorphic_brute_force(const Hypergraph& a, const Hypergraph& b);

// Closure presets over unary/binary graphs. categorify: least fixpoint adding
// {a,c} whenever {a,b},{b,c} are present and {a,a} for every vertex.
// groupoidify additionally closes under {a,b} => {b,a}. Both are monotone,
// idempotent, and never duplicate an existing edge value. Throws ArityError on
// any edge of arity >= 3.
Hypergraph categorify(const Hypergraph& h);
Hypergraph groupoidify(const Hypergraph& h);

// Text forms: {{1,2},{2,3}}. Patterns admit lowercase variable names.
std::string to_text(const Hypergraph& h);
std::string to_text(const PatternGraph& p);

}  // namespace multiway
