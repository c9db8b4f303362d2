#include "multiway/term.hpp"

#include <algorithm>
#include <functional>

#include "multiway/errors.hpp"

namespace multiway {

std::size_t term_size(const Term& t) {
    std::size_t n = 1;
    for (const auto& a : t.args) n += term_size(a);
    return n;
}

std::string to_text(const Term& t) {
    std::string out = t.head;
    if (!t.args.empty()) {
        out += '[';
        for (std::size_t i = 0; i < t.args.size(); ++i) {
            if (i) out += ',';
            out += to_text(t.args[i]);
        }
        out += ']';
    }
    return out;
}

namespace {

// Match lhs against a concrete subterm, extending binding. Repeated variables
// must capture syntactically equal subterms.
bool match_at(const Term& node, const Term& lhs, std::map<std::string, Term>& binding) {
    if (lhs.is_var) {
        auto it = binding.find(lhs.head);
        if (it == binding.end()) {
            binding.emplace(lhs.head, node);
            return true;
        }
        return it->second == node;
    }
    if (node.is_var || node.head != lhs.head || node.args.size() != lhs.args.size())
        return false;
    for (std::size_t i = 0; i < lhs.args.size(); ++i)
        if (!match_at(node.args[i], lhs.args[i], binding)) return false;
    return true;
}

void collect_matches(const Term& node, const Term& lhs, std::vector<std::size_t>& path,
                     std::size_t preorder, std::vector<TermMatch>& out) {
    std::map<std::string, Term> binding;
    if (match_at(node, lhs, binding))
        out.push_back({path, preorder, term_size(node), std::move(binding)});
    std::size_t child_pre = preorder + 1;
    for (std::size_t i = 0; i < node.args.size(); ++i) {
        path.push_back(i);
        collect_matches(node.args[i], lhs, path, child_pre, out);
        path.pop_back();
        child_pre += term_size(node.args[i]);
    }
}

}  // namespace

std::vector<TermMatch> enumerate_matches(const Term& host, const Term& lhs,
                                         bool anchored) {
    if (lhs.is_var) throw BareVariableLhs("term pattern lhs is a bare variable");
    std::vector<TermMatch> out;
    if (anchored) {
        std::map<std::string, Term> binding;
        if (match_at(host, lhs, binding))
            out.push_back({{}, 0, term_size(host), std::move(binding)});
        return out;
    }
    std::vector<std::size_t> path;
    collect_matches(host, lhs, path, 0, out);
    return out;
}

Term instantiate(const Term& pattern, const std::map<std::string, Term>& binding) {
    if (pattern.is_var) {
        auto it = binding.find(pattern.head);
        if (it == binding.end())
            throw SemanticError("unbound variable '" + pattern.head + "' in rhs");
        return it->second;
    }
    Term out{pattern.head, false, {}};
    out.args.reserve(pattern.args.size());
    for (const auto& a : pattern.args) out.args.push_back(instantiate(a, binding));
    return out;
}

Term replace_at(const Term& host, const std::vector<std::size_t>& path,
                const Term& replacement) {
    if (path.empty()) return replacement;
    Term out = host;
    Term* node = &out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) node = &node->args.at(path[i]);
    node->args.at(path.back()) = replacement;
    return out;
}

namespace {

std::size_t precedence_rank(const std::string& head,
                            const std::vector<std::string>& precedence) {
    for (std::size_t i = 0; i < precedence.size(); ++i)
        if (precedence[i] == head) return i;
    return precedence.size();
}

// Greatest-first precedence: lower rank means greater symbol. Unlisted
// symbols rank below every listed one, ordered by name.
int head_compare(const Term& a, const Term& b, const std::vector<std::string>& prec) {
    auto ra = precedence_rank(a.head, prec);
    auto rb = precedence_rank(b.head, prec);
    if (ra != rb) return ra < rb ? 1 : -1;
    if (ra == prec.size()) {
        if (a.head != b.head) return a.head < b.head ? 1 : -1;  // earlier name greater
    }
    return 0;
}

void preorder_symbols(const Term& t, std::vector<const Term*>& out) {
    out.push_back(&t);
    for (const auto& a : t.args) preorder_symbols(a, out);
}

bool occurs_in(const Term& t, const std::string& var) {
    if (t.is_var) return t.head == var;
    for (const auto& a : t.args)
        if (occurs_in(a, var)) return true;
    return false;
}

bool lpo_greater(const Term& s, const Term& t, const std::vector<std::string>& prec);

bool lpo_ge(const Term& s, const Term& t, const std::vector<std::string>& prec) {
    return s == t || lpo_greater(s, t, prec);
}

bool lpo_greater(const Term& s, const Term& t, const std::vector<std::string>& prec) {
    if (s.is_var) return false;
    if (t.is_var) return occurs_in(s, t.head);  // s > x iff x occurs in s, s != x
    // Case 1: some argument of s already dominates t.
    for (const auto& si : s.args)
        if (lpo_ge(si, t, prec)) return true;
    int hc = head_compare(s, t, prec);
    if (hc > 0) {
        for (const auto& ti : t.args)
            if (!lpo_greater(s, ti, prec)) return false;
        return true;
    }
    if (hc == 0 && s.head == t.head && s.args.size() == t.args.size()) {
        // Lexicographic descent on the first differing argument.
        for (std::size_t i = 0; i < s.args.size(); ++i) {
            if (s.args[i] == t.args[i]) continue;
            if (!lpo_greater(s.args[i], t.args[i], prec)) return false;
            for (std::size_t j = i + 1; j < t.args.size(); ++j)
                if (!lpo_greater(s, t.args[j], prec)) return false;
            return true;
        }
    }
    return false;
}

}  // namespace

Cmp compare(const Term& a, const Term& b, const TermOrdering& ord) {
    if (a == b) return Cmp::Equal;
    if (ord.kind == TermOrdering::Kind::Shortlex) {
        auto na = term_size(a), nb = term_size(b);
        if (na != nb) return na < nb ? Cmp::Less : Cmp::Greater;
        std::vector<const Term*> pa, pb;
        preorder_symbols(a, pa);
        preorder_symbols(b, pb);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            if (pa[i]->is_var != pb[i]->is_var)
                throw Incomparable("shortlex on variable/symbol clash: " + to_text(a) +
                                   " vs " + to_text(b));
            if (pa[i]->is_var) {
                if (pa[i]->head == pb[i]->head) continue;
                throw Incomparable("shortlex on distinct variables: " + to_text(a) +
                                   " vs " + to_text(b));
            }
            int hc = head_compare(*pa[i], *pb[i], ord.precedence);
            if (hc != 0) return hc > 0 ? Cmp::Greater : Cmp::Less;
        }
        return Cmp::Equal;  // unreachable: equal terms returned above
    }
    if (lpo_greater(a, b, ord.precedence)) return Cmp::Greater;
    if (lpo_greater(b, a, ord.precedence)) return Cmp::Less;
    throw Incomparable("lpo cannot orient " + to_text(a) + " vs " + to_text(b));
}

namespace {

Term apply_subst(const Term& t, const std::map<std::string, Term>& subst) {
    if (t.is_var) {
        auto it = subst.find(t.head);
        return it == subst.end() ? t : it->second;
    }
    Term out{t.head, false, {}};
    out.args.reserve(t.args.size());
    for (const auto& a : t.args) out.args.push_back(apply_subst(a, subst));
    return out;
}

bool unify_rec(Term a, Term b, std::map<std::string, Term>& subst) {
    a = apply_subst(a, subst);
    b = apply_subst(b, subst);
    if (a == b) return true;
    if (a.is_var) {
        if (occurs_in(b, a.head)) return false;
        // Apply the new binding into existing ranges to keep subst idempotent.
        std::map<std::string, Term> one{{a.head, b}};
        for (auto& [k, v] : subst) v = apply_subst(v, one);
        subst[a.head] = b;
        return true;
    }
    if (b.is_var) return unify_rec(b, a, subst);
    if (a.head != b.head || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!unify_rec(a.args[i], b.args[i], subst)) return false;
    return true;
}

}  // namespace

std::optional<std::map<std::string, Term>> unify(const Term& a, const Term& b) {
    std::map<std::string, Term> subst;
    if (!unify_rec(a, b, subst)) return std::nullopt;
    return subst;
}

}  // namespace multiway
