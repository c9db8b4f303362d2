#include "multiway/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "multiway/errors.hpp"

namespace multiway {

// ===========================================================================
// Matching
// ===========================================================================

namespace {

bool bind_atom(const PatternAtom& atom, VertexId value,
               std::map<std::string, VertexId>& binding, bool vertex_injective) {
    if (!atom.is_var) return atom.literal == value;
    auto it = binding.find(atom.var);
    if (it != binding.end()) return it->second == value;
    if (vertex_injective) {
        for (const auto& [name, bound] : binding)
            if (bound == value) return false;
    }
    binding.emplace(atom.var, value);
    return true;
}

bool match_edge(const PatternEdge& pe, const HyperEdge& he,
                std::map<std::string, VertexId>& binding, bool vertex_injective) {
    if (pe.size() != he.size()) return false;
    for (std::size_t i = 0; i < pe.size(); ++i)
        if (!bind_atom(pe[i], he[i], binding, vertex_injective)) return false;
    return true;
}

HyperEdge instantiate_edge(const PatternEdge& pe,
                           const std::map<std::string, VertexId>& binding) {
    HyperEdge out;
    out.reserve(pe.size());
    for (const auto& atom : pe) {
        if (atom.is_var) {
            auto it = binding.find(atom.var);
            if (it == binding.end())
                throw SemanticError("unbound hypergraph variable '" + atom.var + "'");
            out.push_back(it->second);
        } else {
            out.push_back(atom.literal);
        }
    }
    return out;
}

// The multiset of instantiated lhs edges must be removable from the host:
// pattern edges may share one host occurrence during assignment, but apply
// removes one occurrence per pattern edge.
bool multiset_available(const Hypergraph& host, const PatternGraph& lhs,
                        const std::map<std::string, VertexId>& binding) {
    std::map<HyperEdge, std::size_t> need;
    for (const auto& pe : lhs.edges) ++need[instantiate_edge(pe, binding)];
    for (const auto& [value, count] : need) {
        std::size_t have = 0;
        for (const auto& he : host.edges)
            if (he == value) ++have;
        if (have < count) return false;
    }
    return true;
}

std::vector<std::size_t> resolve_consumed(const Hypergraph& host,
                                          const std::vector<std::size_t>& assignment) {
    std::vector<bool> taken(host.edges.size(), false);
    std::vector<std::size_t> consumed;
    consumed.reserve(assignment.size());
    for (std::size_t h : assignment) {
        if (!taken[h]) {
            taken[h] = true;
            consumed.push_back(h);
            continue;
        }
        // Shared occurrence: take the lowest free occurrence of equal value.
        std::size_t j = 0;
        for (; j < host.edges.size(); ++j)
            if (!taken[j] && host.edges[j] == host.edges[h]) break;
        taken[j] = true;
        consumed.push_back(j);
    }
    std::sort(consumed.begin(), consumed.end());
    return consumed;
}

void search_assignments(const Hypergraph& host, const PatternGraph& lhs,
                        bool vertex_injective, std::size_t depth,
                        std::vector<std::size_t>& assignment,
                        std::map<std::string, VertexId>& binding,
                        std::vector<GraphMatch>& out) {
    if (depth == lhs.edges.size()) {
        if (!multiset_available(host, lhs, binding)) return;
        out.push_back({assignment, resolve_consumed(host, assignment), binding});
        return;
    }
    for (std::size_t h = 0; h < host.edges.size(); ++h) {
        auto saved = binding;
        if (match_edge(lhs.edges[depth], host.edges[h], binding, vertex_injective)) {
            assignment.push_back(h);
            search_assignments(host, lhs, vertex_injective, depth + 1, assignment,
                               binding, out);
            assignment.pop_back();
        }
        binding = std::move(saved);
    }
}

}  // namespace

std::vector<GraphMatch> enumerate_matches(const Hypergraph& host,
                                          const PatternGraph& lhs,
                                          bool vertex_injective) {
    if (lhs.edges.empty()) throw EmptyLhs("hypergraph pattern with no edges");
    std::vector<GraphMatch> out;
    std::vector<std::size_t> assignment;
    std::map<std::string, VertexId> binding;
    search_assignments(host, lhs, vertex_injective, 0, assignment, binding, out);
    return out;
}

// ===========================================================================
// Rewriting
// ===========================================================================

GraphRewrite apply_match(const Hypergraph& host, const HyperRulePattern& rule,
                         const GraphMatch& match) {
    // Guard against replay on a changed host.
    for (std::size_t i = 0; i < match.assignment.size(); ++i) {
        std::size_t h = match.assignment[i];
        if (h >= host.edges.size())
            throw StaleMatch("assigned edge index out of range");
        std::map<std::string, VertexId> binding = match.binding;
        if (!match_edge(rule.lhs.edges[i], host.edges[h], binding, false))
            throw StaleMatch("assigned edge no longer matches its pattern edge");
    }

    std::set<VertexId> used;
    for (const auto& he : host.edges)
        for (VertexId v : he) used.insert(v);

    // Fresh rhs-only variables take the smallest positive labels absent from
    // the host, first occurrence order.
    std::map<std::string, VertexId> binding = match.binding;
    VertexId next = 1;
    for (const auto& pe : rule.rhs.edges) {
        for (const auto& atom : pe) {
            if (!atom.is_var || binding.count(atom.var)) continue;
            while (used.count(next)) ++next;
            binding.emplace(atom.var, next);
            used.insert(next);
        }
    }

    std::vector<bool> removed(host.edges.size(), false);
    for (std::size_t c : match.consumed) {
        if (c >= host.edges.size()) throw StaleMatch("consumed edge index out of range");
        removed[c] = true;
    }

    GraphRewrite out;
    for (std::size_t i = 0; i < host.edges.size(); ++i) {
        if (removed[i]) continue;
        out.kept.emplace_back(i, out.result.edges.size());
        out.result.edges.push_back(host.edges[i]);
    }
    for (const auto& pe : rule.rhs.edges) {
        out.fresh.push_back(out.result.edges.size());
        out.result.edges.push_back(instantiate_edge(pe, binding));
    }
    return out;
}

// ===========================================================================
// Canonicalization
// ===========================================================================

namespace {

bool edge_less(const HyperEdge& a, const HyperEdge& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

bool edge_list_less(const std::vector<HyperEdge>& a, const std::vector<HyperEdge>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (edge_less(a[i], b[i])) return true;
        if (edge_less(b[i], a[i])) return false;
    }
    return a.size() < b.size();
}

// Ordered partition of vertex slots 0..n-1 (vertex identities live in a
// side table). Cells split in place, so color/seed blocks keep their span.
struct Partition {
    std::vector<std::vector<std::size_t>> cells;

    bool discrete() const {
        for (const auto& c : cells)
            if (c.size() > 1) return false;
        return true;
    }
};

// Signature of one vertex slot under the current partition: the sorted list
// of (arity, position, cell ids of the whole edge) over incident occurrences.
using Signature = std::vector<std::vector<std::size_t>>;

Signature slot_signature(std::size_t slot,
                         const std::vector<std::vector<std::size_t>>& edges_slots,
                         const std::vector<std::size_t>& cell_of) {
    Signature sig;
    for (const auto& e : edges_slots) {
        for (std::size_t p = 0; p < e.size(); ++p) {
            if (e[p] != slot) continue;
            std::vector<std::size_t> row{e.size(), p};
            for (std::size_t q : e) row.push_back(cell_of[q]);
            sig.push_back(std::move(row));
        }
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

void refine(Partition& part, const std::vector<std::vector<std::size_t>>& edges_slots,
            std::size_t n_slots) {
    for (;;) {
        std::vector<std::size_t> cell_of(n_slots, 0);
        for (std::size_t c = 0; c < part.cells.size(); ++c)
            for (std::size_t s : part.cells[c]) cell_of[s] = c;

        Partition next;
        bool split = false;
        for (const auto& cell : part.cells) {
            if (cell.size() == 1) {
                next.cells.push_back(cell);
                continue;
            }
            std::map<Signature, std::vector<std::size_t>> groups;
            for (std::size_t s : cell)
                groups[slot_signature(s, edges_slots, cell_of)].push_back(s);
            if (groups.size() > 1) split = true;
            for (auto& [sig, members] : groups) next.cells.push_back(std::move(members));
        }
        part = std::move(next);
        if (!split) return;
    }
}

struct CanonSearch {
    const std::vector<std::vector<std::size_t>>& edges_slots;
    std::size_t n_slots;
    std::vector<HyperEdge> best_edges;
    std::vector<std::size_t> best_label;  // slot -> canonical label
    bool have_best = false;

    void leaf(const Partition& part) {
        std::vector<std::size_t> label(n_slots, 0);
        for (std::size_t c = 0; c < part.cells.size(); ++c) label[part.cells[c][0]] = c;
        std::vector<HyperEdge> relabeled;
        relabeled.reserve(edges_slots.size());
        for (const auto& e : edges_slots) {
            HyperEdge he;
            he.reserve(e.size());
            for (std::size_t s : e) he.push_back(label[s]);
            relabeled.push_back(std::move(he));
        }
        std::sort(relabeled.begin(), relabeled.end(), edge_less);
        if (!have_best || edge_list_less(relabeled, best_edges)) {
            best_edges = std::move(relabeled);
            best_label = std::move(label);
            have_best = true;
        }
    }

    void search(Partition part) {
        refine(part, edges_slots, n_slots);
        if (part.discrete()) {
            leaf(part);
            return;
        }
        std::size_t target = 0;
        while (part.cells[target].size() == 1) ++target;
        for (std::size_t pick : part.cells[target]) {
            Partition child;
            for (std::size_t c = 0; c < part.cells.size(); ++c) {
                if (c != target) {
                    child.cells.push_back(part.cells[c]);
                    continue;
                }
                child.cells.push_back({pick});
                std::vector<std::size_t> rest;
                for (std::size_t s : part.cells[c])
                    if (s != pick) rest.push_back(s);
                child.cells.push_back(std::move(rest));
            }
            search(std::move(child));
        }
    }
};

std::string certificate_text(std::size_t n, const std::vector<HyperEdge>& edges,
                             const std::vector<int>* colors) {
    std::string cert = "v" + std::to_string(n) + ";";
    if (colors) {
        cert += "c";
        for (std::size_t i = 0; i < colors->size(); ++i) {
            if (i) cert += ',';
            cert += std::to_string((*colors)[i]);
        }
        cert += ";";
    }
    for (const auto& e : edges) {
        cert += '(';
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) cert += ',';
            cert += std::to_string(e[i]);
        }
        cert += ')';
    }
    return cert;
}

CanonicalForm canonical_from_slots(const std::vector<std::vector<std::size_t>>& edges_slots,
                                   std::size_t n_slots, Partition initial,
                                   const std::vector<int>* slot_colors) {
    CanonSearch cs{edges_slots, n_slots, {}, {}, false};
    if (n_slots == 0) {
        cs.have_best = true;
    } else {
        cs.search(std::move(initial));
    }

    CanonicalForm out;
    out.edges = cs.best_edges;

    // Stable tie-break: equal canonical edges keep original index order.
    std::vector<std::size_t> order(edges_slots.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<HyperEdge> relabeled(edges_slots.size());
    for (std::size_t i = 0; i < edges_slots.size(); ++i) {
        HyperEdge he;
        he.reserve(edges_slots[i].size());
        for (std::size_t s : edges_slots[i]) he.push_back(cs.best_label[s]);
        relabeled[i] = std::move(he);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return edge_less(relabeled[a], relabeled[b]);
    });
    out.edge_perm = std::move(order);

    std::vector<int> canon_colors;
    if (slot_colors) {
        canon_colors.resize(n_slots);
        for (std::size_t s = 0; s < n_slots; ++s)
            canon_colors[cs.best_label[s]] = (*slot_colors)[s];
    }
    out.certificate =
        certificate_text(n_slots, out.edges, slot_colors ? &canon_colors : nullptr);
    return out;
}

}  // namespace

CanonicalForm canonicalize(const Hypergraph& h) {
    // Dense slot ids for the vertex labels that actually occur.
    std::map<VertexId, std::size_t> slot_of;
    for (const auto& e : h.edges)
        for (VertexId v : e) slot_of.emplace(v, 0);
    std::size_t n = 0;
    for (auto& [v, s] : slot_of) s = n++;

    std::vector<std::vector<std::size_t>> edges_slots;
    edges_slots.reserve(h.edges.size());
    for (const auto& e : h.edges) {
        std::vector<std::size_t> row;
        row.reserve(e.size());
        for (VertexId v : e) row.push_back(slot_of[v]);
        edges_slots.push_back(std::move(row));
    }

    Partition initial;
    if (n > 0) {
        initial.cells.emplace_back();
        for (std::size_t s = 0; s < n; ++s) initial.cells[0].push_back(s);
    }
    return canonical_from_slots(edges_slots, n, std::move(initial), nullptr);
}

CanonicalForm canonicalize_colored(std::size_t n_vertices,
                                   const std::vector<HyperEdge>& edges,
                                   const std::vector<int>& colors) {
    if (colors.size() != n_vertices)
        throw ArityError("color list must cover every vertex");
    std::vector<std::vector<std::size_t>> edges_slots;
    edges_slots.reserve(edges.size());
    for (const auto& e : edges) {
        std::vector<std::size_t> row;
        row.reserve(e.size());
        for (VertexId v : e) {
            if (v >= n_vertices) throw KeyNotFound("edge vertex out of range");
            row.push_back(static_cast<std::size_t>(v));
        }
        edges_slots.push_back(std::move(row));
    }

    // Initial cells grouped by color, ascending.
    std::map<int, std::vector<std::size_t>> by_color;
    for (std::size_t s = 0; s < n_vertices; ++s) by_color[colors[s]].push_back(s);
    Partition initial;
    for (auto& [color, members] : by_color) initial.cells.push_back(std::move(members));

    return canonical_from_slots(edges_slots, n_vertices, std::move(initial), &colors);
}

bool isomorphic_brute_force(const Hypergraph& a, const Hypergraph& b) {
    if (a.edges.size() != b.edges.size()) return false;
    std::set<VertexId> va_set, vb_set;
    for (const auto& e : a.edges)
        for (VertexId v : e) va_set.insert(v);
    for (const auto& e : b.edges)
        for (VertexId v : e) vb_set.insert(v);
    if (va_set.size() != vb_set.size()) return false;

    std::vector<VertexId> va(va_set.begin(), va_set.end());
    std::vector<VertexId> vb(vb_set.begin(), vb_set.end());

    auto sorted_edges = [](std::vector<HyperEdge> es) {
        std::sort(es.begin(), es.end(), edge_less);
        return es;
    };
    auto target = sorted_edges(b.edges);

    std::vector<std::size_t> perm(va.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::map<VertexId, VertexId> pi;
        for (std::size_t i = 0; i < va.size(); ++i) pi[va[i]] = vb[perm[i]];
        std::vector<HyperEdge> mapped;
        mapped.reserve(a.edges.size());
        for (const auto& e : a.edges) {
            HyperEdge he;
            he.reserve(e.size());
            for (VertexId v : e) he.push_back(pi[v]);
            mapped.push_back(std::move(he));
        }
        if (sorted_edges(std::move(mapped)) == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// ===========================================================================
// Closure presets
// ===========================================================================

namespace {

Hypergraph close_relation(const Hypergraph& h, bool symmetric) {
    std::set<VertexId> vertices;
    std::set<std::pair<VertexId, VertexId>> relation;
    for (const auto& e : h.edges) {
        if (e.size() != 1 && e.size() != 2)
            throw ArityError("closure presets accept only unary and binary edges, got arity " +
                             std::to_string(e.size()));
        for (VertexId v : e) vertices.insert(v);
        if (e.size() == 2) relation.emplace(e[0], e[1]);
    }

    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::pair<VertexId, VertexId>> add;
        if (symmetric) {
            for (const auto& [x, y] : relation)
                if (!relation.count({y, x})) add.emplace_back(y, x);
        }
        for (const auto& [x, y] : relation)
            for (const auto& [y2, z] : relation)
                if (y == y2 && !relation.count({x, z})) add.emplace_back(x, z);
        for (const auto& p : add)
            if (relation.insert(p).second) grew = true;
    }
    for (VertexId v : vertices) relation.emplace(v, v);

    std::set<HyperEdge> present(h.edges.begin(), h.edges.end());
    Hypergraph out = h;
    for (const auto& [x, y] : relation) {
        HyperEdge e{x, y};
        if (!present.count(e)) out.edges.push_back(std::move(e));
    }
    std::sort(out.edges.begin() + static_cast<std::ptrdiff_t>(h.edges.size()),
              out.edges.end(), edge_less);
    return out;
}

}  // namespace

Hypergraph categorify(const Hypergraph& h) { return close_relation(h, false); }

Hypergraph groupoidify(const Hypergraph& h) { return close_relation(h, true); }

// ===========================================================================
// Text forms
// ===========================================================================

std::string to_text(const Hypergraph& h) {
    std::string out = "{";
    for (std::size_t i = 0; i < h.edges.size(); ++i) {
        if (i) out += ',';
        out += '{';
        for (std::size_t j = 0; j < h.edges[i].size(); ++j) {
            if (j) out += ',';
            out += std::to_string(h.edges[i][j]);
        }
        out += '}';
    }
    out += '}';
    return out;
}

std::string to_text(const PatternGraph& p) {
    std::string out = "{";
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        if (i) out += ',';
        out += '{';
        for (std::size_t j = 0; j < p.edges[i].size(); ++j) {
            if (j) out += ',';
            const auto& atom = p.edges[i][j];
            out += atom.is_var ? atom.var : std::to_string(atom.literal);
        }
        out += '}';
    }
    out += '}';
    return out;
}

}  // namespace multiway
