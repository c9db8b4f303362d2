#include "multiway/completion.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace multiway {

namespace {

const StringRulePattern& string_pattern(const Rule& r) {
    return std::get<StringRulePattern>(r.pattern);
}

const TermRulePattern& term_pattern(const Rule& r) {
    return std::get<TermRulePattern>(r.pattern);
}

Substrate common_substrate(const std::vector<Rule>& rules) {
    Substrate sub = rules.front().substrate;
    for (const Rule& r : rules)
        if (r.substrate != sub)
            throw SubstrateMismatch("completion over mixed substrates");
    if (sub == Substrate::Hypergraph)
        throw SubstrateUnsupported("no critical pair notion for hypergraph rules here");
    return sub;
}

// One leftmost rewrite, position-major then rule order. Returns false at a
// normal form.
bool step_string(std::string& s, const std::vector<Rule>& rules) {
    for (std::size_t pos = 0; pos < s.size(); ++pos)
        for (const Rule& r : rules) {
            const auto& p = string_pattern(r);
            if (p.lhs.empty() || p.lhs.size() > s.size() - pos) continue;
            if (s.compare(pos, p.lhs.size(), p.lhs) != 0) continue;
            s = s.substr(0, pos) + p.rhs + s.substr(pos + p.lhs.size());
            return true;
        }
    return false;
}

bool step_term(Term& t, const std::vector<Rule>& rules) {
    bool found = false;
    std::size_t best_preorder = 0;
    std::size_t best_rule = 0;
    TermMatch best;
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
        const auto& p = term_pattern(rules[ri]);
        for (const TermMatch& m : enumerate_matches(t, p.lhs, false)) {
            if (!found || m.preorder < best_preorder ||
                (m.preorder == best_preorder && ri < best_rule)) {
                found = true;
                best_preorder = m.preorder;
                best_rule = ri;
                best = m;
            }
        }
    }
    if (!found) return false;
    const auto& p = term_pattern(rules[best_rule]);
    t = replace_at(t, best.path, instantiate(p.rhs, best.binding));
    return true;
}

std::string normalize_string(std::string s, const std::vector<Rule>& rules,
                             std::size_t fuel, bool* converged) {
    while (fuel-- > 0) {
        if (!step_string(s, rules)) {
            if (converged) *converged = true;
            return s;
        }
    }
    if (converged) *converged = !step_string(s, rules);
    return s;
}

Term normalize_term(Term t, const std::vector<Rule>& rules, std::size_t fuel,
                    bool* converged) {
    while (fuel-- > 0) {
        if (!step_term(t, rules)) {
            if (converged) *converged = true;
            return t;
        }
    }
    Term probe = t;
    if (converged) *converged = !step_term(probe, rules);
    return t;
}

Term subst(const Term& t, const std::map<std::string, Term>& sigma) {
    if (t.is_var) {
        auto it = sigma.find(t.head);
        return it == sigma.end() ? t : it->second;
    }
    Term out{t.head, false, {}};
    out.args.reserve(t.args.size());
    for (const Term& a : t.args) out.args.push_back(subst(a, sigma));
    return out;
}

Term rename_vars(const Term& t, const std::string& suffix) {
    if (t.is_var) return Term{t.head + suffix, true, {}};
    Term out{t.head, false, {}};
    out.args.reserve(t.args.size());
    for (const Term& a : t.args) out.args.push_back(rename_vars(a, suffix));
    return out;
}

void collect_positions(const Term& t, std::vector<std::size_t>& path,
                       std::vector<std::vector<std::size_t>>& out) {
    if (t.is_var) return;
    out.push_back(path);
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        path.push_back(i);
        collect_positions(t.args[i], path, out);
        path.pop_back();
    }
}

const Term& subterm_at(const Term& t, const std::vector<std::size_t>& path) {
    const Term* cur = &t;
    for (std::size_t i : path) cur = &cur->args[i];
    return *cur;
}

void string_pairs_of(const Rule& r1, const Rule& r2, std::vector<CriticalPair>& out) {
    const auto& p1 = string_pattern(r1);
    const auto& p2 = string_pattern(r2);
    const std::string& l1 = p1.lhs;
    const std::string& l2 = p2.lhs;
    for (std::size_t o = 0; o < l1.size(); ++o) {
        if (o + l2.size() <= l1.size()) {
            // l2 inside l1; full self-containment is the trivial pair.
            if (r1.id == r2.id && o == 0 && l1.size() == l2.size()) continue;
            if (l1.compare(o, l2.size(), l2) != 0) continue;
            StringCriticalPair cp;
            cp.peak = l1;
            cp.left = p1.rhs;
            cp.right = l1.substr(0, o) + p2.rhs + l1.substr(o + l2.size());
            cp.rule1 = r1.id;
            cp.rule2 = r2.id;
            cp.overlap_at = o;
            out.push_back(std::move(cp));
        } else {
            std::size_t k = l1.size() - o;  // proper suffix of l1 = prefix of l2
            if (k >= l2.size()) continue;
            if (l1.compare(o, k, l2, 0, k) != 0) continue;
            StringCriticalPair cp;
            cp.peak = l1 + l2.substr(k);
            cp.left = p1.rhs + l2.substr(k);
            cp.right = l1.substr(0, o) + p2.rhs;
            cp.rule1 = r1.id;
            cp.rule2 = r2.id;
            cp.overlap_at = o;
            out.push_back(std::move(cp));
        }
    }
}

void term_pairs_of(const Rule& r1, const Rule& r2, std::vector<CriticalPair>& out) {
    const auto& p1 = term_pattern(r1);
    const auto& p2 = term_pattern(r2);
    Term l2 = rename_vars(p2.lhs, "#2");
    Term rhs2 = rename_vars(p2.rhs, "#2");
    std::vector<std::vector<std::size_t>> positions;
    std::vector<std::size_t> path;
    collect_positions(p1.lhs, path, positions);
    for (const auto& pos : positions) {
        if (r1.id == r2.id && pos.empty()) continue;
        auto sigma = unify(subterm_at(p1.lhs, pos), l2);
        if (!sigma) continue;
        TermCriticalPair cp;
        cp.peak = subst(p1.lhs, *sigma);
        cp.left = subst(p1.rhs, *sigma);
        cp.right = subst(replace_at(p1.lhs, pos, rhs2), *sigma);
        cp.rule1 = r1.id;
        cp.rule2 = r2.id;
        cp.position = pos;
        out.push_back(std::move(cp));
    }
}

// Breadth-first reachability set of state texts within `depth` rewrites.
std::set<std::string> reach_strings(const std::string& start,
                                    const std::vector<Rule>& rules, std::uint32_t depth) {
    std::set<std::string> seen{start};
    std::vector<std::string> frontier{start};
    for (std::uint32_t d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<std::string> next;
        for (const std::string& s : frontier)
            for (std::size_t pos = 0; pos < s.size(); ++pos)
                for (const Rule& r : rules) {
                    const auto& p = string_pattern(r);
                    if (p.lhs.empty() || p.lhs.size() > s.size() - pos) continue;
                    if (s.compare(pos, p.lhs.size(), p.lhs) != 0) continue;
                    std::string t = s.substr(0, pos) + p.rhs + s.substr(pos + p.lhs.size());
                    if (seen.insert(t).second) next.push_back(std::move(t));
                }
        frontier = std::move(next);
    }
    return seen;
}

std::set<std::string> reach_terms(const Term& start, const std::vector<Rule>& rules,
                                  std::uint32_t depth) {
    std::set<std::string> seen{to_text(start)};
    std::vector<Term> frontier{start};
    for (std::uint32_t d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<Term> next;
        for (const Term& s : frontier)
            for (const Rule& r : rules) {
                const auto& p = term_pattern(r);
                for (const TermMatch& m : enumerate_matches(s, p.lhs, false)) {
                    Term t = replace_at(s, m.path, instantiate(p.rhs, m.binding));
                    if (seen.insert(to_text(t)).second) next.push_back(std::move(t));
                }
            }
        frontier = std::move(next);
    }
    return seen;
}

std::string cp_signature(const CriticalPair& cp) {
    if (const auto* s = std::get_if<StringCriticalPair>(&cp))
        return s->peak + "|" + s->left + "|" + s->right;
    const auto& t = std::get<TermCriticalPair>(cp);
    return to_text(t.peak) + "|" + to_text(t.left) + "|" + to_text(t.right);
}

std::string nth_var_name(std::size_t n) {
    switch (n) {
        case 0: return "x";
        case 1: return "y";
        case 2: return "z";
        case 3: return "w";
        case 4: return "u";
        case 5: return "v";
        default: return "v" + std::to_string(n);
    }
}

// Canonical variable names for a freshly oriented rule, first occurrence in
// the lhs first. Keeps renamed-apart markers out of the final system.
void canonize_rule_vars(Term& lhs, Term& rhs) {
    std::map<std::string, std::string> names;
    auto visit = [&](auto&& self, Term& t) -> void {
        if (t.is_var) {
            auto it = names.find(t.head);
            if (it == names.end()) it = names.emplace(t.head, nth_var_name(names.size())).first;
            t.head = it->second;
            return;
        }
        for (Term& a : t.args) self(self, a);
    };
    visit(visit, lhs);
    visit(visit, rhs);
}

struct PendingEquation {
    std::string s_left, s_right;  // strings
    Term t_left, t_right;         // terms
    std::string origin;           // peak or removed-rule text
};

}  // namespace

std::vector<CriticalPair> critical_pairs(const std::vector<Rule>& rules) {
    std::vector<CriticalPair> out;
    if (rules.empty()) return out;
    Substrate sub = common_substrate(rules);
    std::vector<const Rule*> ordered;
    ordered.reserve(rules.size());
    for (const Rule& r : rules) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const Rule* a, const Rule* b) { return a->id < b->id; });
    for (const Rule* r1 : ordered)
        for (const Rule* r2 : ordered) {
            if (sub == Substrate::String)
                string_pairs_of(*r1, *r2, out);
            else
                term_pairs_of(*r1, *r2, out);
        }
    return out;
}

bool joinable(const CriticalPair& cp, const std::vector<Rule>& rules,
              std::uint32_t depth) {
    if (const auto* s = std::get_if<StringCriticalPair>(&cp)) {
        if (s->left == s->right) return true;
        auto a = reach_strings(s->left, rules, depth);
        auto b = reach_strings(s->right, rules, depth);
        for (const std::string& x : a)
            if (b.count(x)) return true;
        return false;
    }
    const auto& t = std::get<TermCriticalPair>(cp);
    if (t.left == t.right) return true;
    auto a = reach_terms(t.left, rules, depth);
    auto b = reach_terms(t.right, rules, depth);
    for (const std::string& x : a)
        if (b.count(x)) return true;
    return false;
}

CompletionResult knuth_bendix(const std::vector<Rule>& rules,
                              const ReductionOrdering& ordering,
                              std::size_t max_rules, std::size_t max_iterations,
                              bool interreduce) {
    CompletionResult result;
    result.rules = rules;
    if (rules.empty()) return result;
    Substrate sub = common_substrate(rules);
    const bool is_string = sub == Substrate::String;
    TermOrdering term_ord{ordering.kind == ReductionOrdering::Kind::Shortlex
                              ? TermOrdering::Kind::Shortlex
                              : TermOrdering::Kind::Lpo,
                          ordering.precedence};

    // -1, 0, +1 comparison of the two sides; throws Incomparable.
    auto cmp_strings = [&](const std::string& a, const std::string& b) {
        return shortlex_compare(a, b, ordering.alphabet);
    };
    auto cmp_terms = [&](const Term& a, const Term& b) {
        Cmp c = compare(a, b, term_ord);
        return c == Cmp::Less ? -1 : c == Cmp::Greater ? 1 : 0;
    };

    std::vector<Rule> active = rules;
    std::sort(active.begin(), active.end(),
              [](const Rule& a, const Rule& b) { return a.id < b.id; });
    for (const Rule& r : active) {
        try {
            int c = is_string
                        ? cmp_strings(string_pattern(r).lhs, string_pattern(r).rhs)
                        : cmp_terms(term_pattern(r).lhs, term_pattern(r).rhs);
            if (c <= 0) {
                result.status = CompletionResult::Status::OrderFailure;
                result.detail = "rule not oriented by the ordering: " + rule_text(r);
                return result;
            }
        } catch (const Incomparable&) {
            result.status = CompletionResult::Status::OrderFailure;
            result.detail = "rule incomparable under the ordering: " + rule_text(r);
            return result;
        }
    }

    RuleId next_id = 0;
    for (const Rule& r : active) next_id = std::max(next_id, r.id + 1);

    std::deque<PendingEquation> pending;
    std::set<std::string> processed;
    const std::size_t fuel = 4096;
    std::size_t iterations = 0;

    auto diverged = [&](const std::string& why) {
        result.status = CompletionResult::Status::Diverged;
        result.detail = why;
        result.rules = active;
        return result;
    };

    while (true) {
        PendingEquation eq;
        bool have = false;
        if (!pending.empty()) {
            eq = std::move(pending.front());
            pending.pop_front();
            have = true;
        } else {
            for (const CriticalPair& cp : critical_pairs(active)) {
                std::string sig = cp_signature(cp);
                if (processed.count(sig)) continue;
                processed.insert(sig);
                if (const auto* s = std::get_if<StringCriticalPair>(&cp)) {
                    eq.s_left = s->left;
                    eq.s_right = s->right;
                    eq.origin = s->peak;
                } else {
                    const auto& t = std::get<TermCriticalPair>(cp);
                    eq.t_left = t.left;
                    eq.t_right = t.right;
                    eq.origin = to_text(t.peak);
                }
                have = true;
                break;
            }
        }
        if (!have) break;  // no pending equations, every pair processed
        if (++iterations > max_iterations) return diverged("iteration cap exceeded");

        bool ok_l = false, ok_r = false;
        Rule fresh;
        fresh.id = next_id;
        fresh.substrate = sub;
        std::string left_text, right_text;
        if (is_string) {
            std::string nl = normalize_string(eq.s_left, active, fuel, &ok_l);
            std::string nr = normalize_string(eq.s_right, active, fuel, &ok_r);
            if (!ok_l || !ok_r) return diverged("normalization fuel exhausted");
            if (nl == nr) continue;
            int c;
            try {
                c = cmp_strings(nl, nr);
            } catch (const Incomparable&) {
                c = 0;
            }
            if (c == 0) {
                result.status = CompletionResult::Status::OrderFailure;
                result.detail = "cannot orient " + nl + " = " + nr;
                result.rules = active;
                return result;
            }
            if (c < 0) std::swap(nl, nr);
            left_text = nl;
            right_text = nr;
            fresh.pattern = StringRulePattern{nl, nr};
        } else {
            Term nl = normalize_term(eq.t_left, active, fuel, &ok_l);
            Term nr = normalize_term(eq.t_right, active, fuel, &ok_r);
            if (!ok_l || !ok_r) return diverged("normalization fuel exhausted");
            if (nl == nr) continue;
            int c;
            try {
                c = cmp_terms(nl, nr);
            } catch (const Incomparable&) {
                c = 0;
            }
            if (c == 0) {
                result.status = CompletionResult::Status::OrderFailure;
                result.detail = "cannot orient " + to_text(nl) + " = " + to_text(nr);
                result.rules = active;
                return result;
            }
            if (c < 0) std::swap(nl, nr);
            canonize_rule_vars(nl, nr);
            left_text = to_text(nl);
            right_text = to_text(nr);
            fresh.pattern = TermRulePattern{nl, nr};
        }

        if (active.size() + 1 > max_rules) return diverged("rule cap exceeded");
        ++next_id;
        active.push_back(fresh);
        result.added.push_back({fresh, eq.origin, left_text, right_text});

        if (!interreduce) continue;
        std::vector<Rule> kept;
        kept.reserve(active.size());
        for (Rule& r : active) {
            if (r.id == fresh.id) {
                kept.push_back(r);
                continue;
            }
            bool lhs_reducible;
            if (is_string) {
                const auto& fp = string_pattern(fresh);
                lhs_reducible = string_pattern(r).lhs.find(fp.lhs) != std::string::npos;
            } else {
                const auto& fp = term_pattern(fresh);
                lhs_reducible =
                    !enumerate_matches(term_pattern(r).lhs, fp.lhs, false).empty();
            }
            if (lhs_reducible) {
                PendingEquation back;
                back.origin = rule_text(r);
                if (is_string) {
                    back.s_left = string_pattern(r).lhs;
                    back.s_right = string_pattern(r).rhs;
                } else {
                    back.t_left = term_pattern(r).lhs;
                    back.t_right = term_pattern(r).rhs;
                }
                pending.push_back(std::move(back));
                continue;  // dropped; its equation is re-derived
            }
            bool ok = false;
            if (is_string) {
                auto p = string_pattern(r);
                p.rhs = normalize_string(p.rhs, active, fuel, &ok);
                if (!ok) return diverged("normalization fuel exhausted");
                r.pattern = p;
            } else {
                auto p = term_pattern(r);
                p.rhs = normalize_term(p.rhs, active, fuel, &ok);
                if (!ok) return diverged("normalization fuel exhausted");
                r.pattern = p;
            }
            kept.push_back(r);
        }
        active = std::move(kept);
    }

    result.status = CompletionResult::Status::Completed;
    result.rules = active;
    return result;
}

std::string normalize_text(Substrate sub, const std::string& text,
                           const std::vector<Rule>& rules, std::size_t fuel) {
    if (sub == Substrate::Hypergraph)
        throw SubstrateUnsupported("no deterministic normal form for hypergraphs here");
    if (sub == Substrate::String) {
        std::string s = text;
        while (fuel-- > 0 && step_string(s, rules)) {
        }
        return s;
    }
    State st = parse_state_text(sub, text);
    Term t = std::get<TermState>(st).root;
    while (fuel-- > 0 && step_term(t, rules)) {
    }
    return to_text(t);
}

ObserverReport observer_report(const State& initial, const std::vector<Rule>& original,
                               const std::vector<Rule>& completed, std::uint32_t steps) {
    ObserverReport report;
    auto tabulate = [&](const std::vector<Rule>& rules) {
        std::vector<ObserverReport::SliceStat> stats;
        MultiwayGraph g = evolve({initial}, rules, steps);
        Foliation fol = foliate(g);
        for (std::size_t i = 0; i < fol.slices.size(); ++i) {
            BranchialGraph b = branchial_graph(g, fol, i);
            stats.push_back({i, fol.slices[i].size(), b.edges.size()});
        }
        return stats;
    };
    report.before = tabulate(original);
    report.after = tabulate(completed);
    return report;
}

}  // namespace multiway
