#include "multiway/core.hpp"

#include <algorithm>
#include <numeric>

#include "parse_detail.hpp"

namespace multiway {

Substrate substrate_of(const State& s) {
    if (std::holds_alternative<StringState>(s)) return Substrate::String;
    if (std::holds_alternative<GraphState>(s)) return Substrate::Hypergraph;
    return Substrate::Term;
}

std::size_t token_count(const State& s) { return tokens_of(s).size(); }

const std::vector<TokenId>& tokens_of(const State& s) {
    if (const auto* ss = std::get_if<StringState>(&s)) return ss->tokens;
    if (const auto* gs = std::get_if<GraphState>(&s)) return gs->tokens;
    return std::get<TermState>(s).tokens;
}

namespace {

std::vector<TokenId>& tokens_of_mut(State& s) {
    if (auto* ss = std::get_if<StringState>(&s)) return ss->tokens;
    if (auto* gs = std::get_if<GraphState>(&s)) return gs->tokens;
    return std::get<TermState>(s).tokens;
}

}  // namespace

std::string canonical_key(const State& s) {
    if (const auto* ss = std::get_if<StringState>(&s)) return "s:" + ss->chars;
    if (const auto* gs = std::get_if<GraphState>(&s))
        return "h:" + canonicalize(gs->graph).certificate;
    return "t:" + to_text(std::get<TermState>(s).root);
}

std::string state_text(const State& s) {
    if (const auto* ss = std::get_if<StringState>(&s)) return ss->chars;
    if (const auto* gs = std::get_if<GraphState>(&s)) return to_text(gs->graph);
    return to_text(std::get<TermState>(s).root);
}

namespace {

bool same_pattern_graph(const PatternGraph& a, const PatternGraph& b) {
    if (a.edges.size() != b.edges.size()) return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        if (a.edges[i].size() != b.edges[i].size()) return false;
        for (std::size_t j = 0; j < a.edges[i].size(); ++j) {
            const auto& x = a.edges[i][j];
            const auto& y = b.edges[i][j];
            if (x.is_var != y.is_var) return false;
            if (x.is_var ? x.var != y.var : x.literal != y.literal) return false;
        }
    }
    return true;
}

}  // namespace

bool same_rule(const Rule& a, const Rule& b) {
    if (a.level != b.level || a.anchored != b.anchored || a.substrate != b.substrate)
        return false;
    if (a.pattern.index() != b.pattern.index()) return false;
    if (const auto* sa = std::get_if<StringRulePattern>(&a.pattern)) {
        const auto& sb = std::get<StringRulePattern>(b.pattern);
        return sa->lhs == sb.lhs && sa->rhs == sb.rhs;
    }
    if (const auto* ha = std::get_if<HyperRulePattern>(&a.pattern)) {
        const auto& hb = std::get<HyperRulePattern>(b.pattern);
        return same_pattern_graph(ha->lhs, hb.lhs) && same_pattern_graph(ha->rhs, hb.rhs);
    }
    const auto& ta = std::get<TermRulePattern>(a.pattern);
    const auto& tb = std::get<TermRulePattern>(b.pattern);
    return ta.lhs == tb.lhs && ta.rhs == tb.rhs;
}

std::string binding_repr(const Match& m) {
    std::string out = "@";
    if (const auto* sm = std::get_if<StringMatch>(&m.where)) {
        out += std::to_string(sm->pos);
        return out;
    }
    if (const auto* gm = std::get_if<GraphMatch>(&m.where)) {
        out += '[';
        for (std::size_t i = 0; i < gm->assignment.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(gm->assignment[i]);
        }
        out += "]{";
        bool first = true;
        for (const auto& [var, value] : gm->binding) {
            if (!first) out += ',';
            first = false;
            out += var + "=" + std::to_string(value);
        }
        out += '}';
        return out;
    }
    const auto& tm = std::get<TermMatch>(m.where);
    for (std::size_t i = 0; i < tm.path.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(tm.path[i]);
    }
    out += '{';
    bool first = true;
    for (const auto& [var, value] : tm.binding) {
        if (!first) out += ',';
        first = false;
        out += var + "=" + to_text(value);
    }
    out += '}';
    return out;
}

std::vector<Match> all_matches(const State& s, const std::vector<Rule>& rules) {
    std::vector<std::size_t> order(rules.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rules[a].id < rules[b].id; });

    std::vector<Match> out;
    for (std::size_t idx : order) {
        const Rule& r = rules[idx];
        if (r.substrate != substrate_of(s))
            throw SubstrateMismatch("rule " + std::to_string(r.id) + " is " +
                                    substrate_name(r.substrate) + ", state is " +
                                    substrate_name(substrate_of(s)));
        if (const auto* sp = std::get_if<StringRulePattern>(&r.pattern)) {
            const auto& host = std::get<StringState>(s).chars;
            for (auto& sm : enumerate_matches(host, sp->lhs, r.anchored))
                out.push_back({r.id, sm});
        } else if (const auto* hp = std::get_if<HyperRulePattern>(&r.pattern)) {
            const auto& host = std::get<GraphState>(s).graph;
            auto found = enumerate_matches(host, hp->lhs, false);
            if (r.anchored) {
                // Whole-state rewrites: the match must consume every edge, and
                // assignment-order duplicates of one consumption collapse.
                std::vector<GraphMatch> kept;
                std::set<std::string> seen;
                for (auto& gm : found) {
                    if (gm.consumed.size() != host.edges.size()) continue;
                    std::string sig;
                    for (auto c : gm.consumed) sig += std::to_string(c) + ",";
                    sig += "|";
                    for (const auto& [var, value] : gm.binding)
                        sig += var + "=" + std::to_string(value) + ",";
                    if (seen.insert(sig).second) kept.push_back(std::move(gm));
                }
                found = std::move(kept);
            }
            for (auto& gm : found) out.push_back({r.id, std::move(gm)});
        } else {
            const auto& tp = std::get<TermRulePattern>(r.pattern);
            const auto& host = std::get<TermState>(s).root;
            for (auto& tm : enumerate_matches(host, tp.lhs, r.anchored))
                out.push_back({r.id, std::move(tm)});
        }
    }
    return out;
}

namespace {

const Rule& rule_by_id(const std::vector<Rule>& rules, RuleId id) {
    for (const auto& r : rules)
        if (r.id == id) return r;
    throw KeyNotFound("rule id " + std::to_string(id) + " not in rule set");
}

RawApply apply_string(const StringState& s, const StringRulePattern& p,
                      const StringMatch& m) {
    if (m.pos + m.len > s.chars.size() || s.chars.compare(m.pos, m.len, p.lhs) != 0)
        throw StaleMatch("string match does not fit the current state");
    RawApply out;
    StringState result;
    result.chars = s.chars.substr(0, m.pos) + p.rhs + s.chars.substr(m.pos + m.len);
    result.tokens.assign(result.chars.size(), 0);
    for (std::size_t i = 0; i < m.pos; ++i) out.kept.emplace_back(i, i);
    for (std::size_t i = 0; i < m.len; ++i) out.consumed_src.push_back(m.pos + i);
    for (std::size_t i = 0; i < p.rhs.size(); ++i) out.fresh_raw.push_back(m.pos + i);
    for (std::size_t i = m.pos + m.len; i < s.chars.size(); ++i)
        out.kept.emplace_back(i, i - m.len + p.rhs.size());
    out.result = std::move(result);
    return out;
}

RawApply apply_graph(const GraphState& s, const HyperRulePattern& p,
                     const GraphMatch& m) {
    GraphRewrite rw = apply_match(s.graph, p, m);
    RawApply out;
    GraphState result;
    result.graph = std::move(rw.result);
    result.tokens.assign(result.graph.edges.size(), 0);
    out.consumed_src = m.consumed;
    out.kept = std::move(rw.kept);
    out.fresh_raw = std::move(rw.fresh);
    out.result = std::move(result);
    return out;
}

const Term& subterm_at(const Term& root, const std::vector<std::size_t>& path) {
    const Term* node = &root;
    for (std::size_t idx : path) {
        if (idx >= node->args.size()) throw StaleMatch("term match path out of range");
        node = &node->args[idx];
    }
    return *node;
}

RawApply apply_term(const TermState& s, const TermRulePattern& p, const TermMatch& m) {
    const Term& matched = subterm_at(s.root, m.path);
    if (instantiate(p.lhs, m.binding) != matched)
        throw StaleMatch("term match does not fit the current state");
    Term rhs_instance = instantiate(p.rhs, m.binding);
    std::size_t old_size = m.subtree_size;
    std::size_t new_size = term_size(rhs_instance);

    RawApply out;
    TermState result;
    result.root = replace_at(s.root, m.path, rhs_instance);
    std::size_t total = term_size(result.root);
    result.tokens.assign(total, 0);

    for (std::size_t i = 0; i < m.preorder; ++i) out.kept.emplace_back(i, i);
    for (std::size_t i = 0; i < old_size; ++i) out.consumed_src.push_back(m.preorder + i);
    for (std::size_t i = 0; i < new_size; ++i) out.fresh_raw.push_back(m.preorder + i);
    for (std::size_t i = m.preorder + old_size; i < s.tokens.size(); ++i)
        out.kept.emplace_back(i, i - old_size + new_size);
    out.result = std::move(result);
    return out;
}

}  // namespace

RawApply apply_match_raw(const State& s, const Rule& r, const Match& m) {
    if (r.substrate != substrate_of(s))
        throw SubstrateMismatch("rule and state substrates differ");
    if (const auto* sp = std::get_if<StringRulePattern>(&r.pattern))
        return apply_string(std::get<StringState>(s), *sp, std::get<StringMatch>(m.where));
    if (const auto* hp = std::get_if<HyperRulePattern>(&r.pattern))
        return apply_graph(std::get<GraphState>(s), *hp, std::get<GraphMatch>(m.where));
    return apply_term(std::get<TermState>(s), std::get<TermRulePattern>(r.pattern),
                      std::get<TermMatch>(m.where));
}

Canonicalized canonicalize_state(const State& raw) {
    Canonicalized out;
    if (const auto* gs = std::get_if<GraphState>(&raw)) {
        CanonicalForm cf = canonicalize(gs->graph);
        GraphState canon;
        canon.graph.edges = cf.edges;
        canon.tokens.resize(gs->tokens.size());
        for (std::size_t p = 0; p < cf.edge_perm.size(); ++p)
            canon.tokens[p] = gs->tokens[cf.edge_perm[p]];
        out.perm = cf.edge_perm;
        out.key = "h:" + cf.certificate;
        out.state = std::move(canon);
        return out;
    }
    out.state = raw;
    out.key = canonical_key(raw);
    out.perm.resize(token_count(raw));
    std::iota(out.perm.begin(), out.perm.end(), 0);
    return out;
}

std::vector<Successor> successors(const State& s, const std::vector<Rule>& rules,
                                  TokenId* next_token) {
    std::vector<Successor> out;
    std::string src_key = canonical_key(s);
    const auto& src_tokens = tokens_of(s);
    auto matches = all_matches(s, rules);
    for (const auto& m : matches) {
        const Rule& r = rule_by_id(rules, m.rule);
        RawApply raw = apply_match_raw(s, r, m);

        Event ev;
        ev.id = static_cast<EventId>(out.size());
        ev.rule = r.id;
        ev.level = r.level;
        ev.source_key = src_key;
        ev.binding = binding_repr(m);

        auto& raw_tokens = tokens_of_mut(raw.result);
        for (std::size_t pos : raw.consumed_src) ev.consumed.push_back(src_tokens[pos]);
        std::sort(ev.consumed.begin(), ev.consumed.end());
        for (const auto& [srcp, rawp] : raw.kept) {
            raw_tokens[rawp] = src_tokens[srcp];
            ev.copied.emplace_back(src_tokens[srcp], src_tokens[srcp]);
        }
        std::sort(ev.copied.begin(), ev.copied.end());
        for (std::size_t rawp : raw.fresh_raw) {
            TokenId t = (*next_token)++;
            raw_tokens[rawp] = t;
            ev.produced.push_back(t);
        }
        std::sort(ev.produced.begin(), ev.produced.end());

        Canonicalized canon = canonicalize_state(raw.result);
        ev.target_key = canon.key;
        out.push_back({std::move(ev), std::move(canon.state)});
    }
    return out;
}

namespace {

void term_vars(const Term& t, std::set<std::string>& out) {
    if (t.is_var) {
        out.insert(t.head);
        return;
    }
    for (const auto& a : t.args) term_vars(a, out);
}

Rule reversed_rule(const Rule& r) {
    Rule rev = r;
    if (const auto* sp = std::get_if<StringRulePattern>(&r.pattern)) {
        if (sp->rhs.empty())
            throw NonInvertibleRule("reversal of '" + rule_text(r) + "' has an empty lhs");
        rev.pattern = StringRulePattern{sp->rhs, sp->lhs};
    } else if (const auto* hp = std::get_if<HyperRulePattern>(&r.pattern)) {
        if (hp->rhs.edges.empty())
            throw NonInvertibleRule("reversal of '" + rule_text(r) + "' has an empty lhs");
        rev.pattern = HyperRulePattern{hp->rhs, hp->lhs};
    } else {
        const auto& tp = std::get<TermRulePattern>(r.pattern);
        if (tp.rhs.is_var)
            throw NonInvertibleRule("reversal of '" + rule_text(r) +
                                    "' has a bare-variable lhs");
        std::set<std::string> lv, rv;
        term_vars(tp.lhs, lv);
        term_vars(tp.rhs, rv);
        for (const auto& v : lv)
            if (!rv.count(v))
                throw NonInvertibleRule("reversal of '" + rule_text(r) +
                                        "' leaves variable '" + v + "' unbound");
        rev.pattern = TermRulePattern{tp.rhs, tp.lhs};
    }
    return rev;
}

}  // namespace

std::vector<Rule> add_inverses(const std::vector<Rule>& rules) {
    std::vector<Rule> out = rules;
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<RuleId>(i);
    for (const auto& r : rules) {
        Rule rev = reversed_rule(r);
        bool present = false;
        for (const auto& existing : out)
            if (same_rule(existing, rev)) {
                present = true;
                break;
            }
        if (!present) {
            rev.id = static_cast<RuleId>(out.size());
            out.push_back(std::move(rev));
        }
    }
    return out;
}

State parse_state_text(Substrate sub, const std::string& text) {
    std::string body = detail::trim(text);
    switch (sub) {
        case Substrate::String: {
            StringState s;
            s.chars = body;
            s.tokens.resize(s.chars.size());
            std::iota(s.tokens.begin(), s.tokens.end(), 0);
            return s;
        }
        case Substrate::Hypergraph: {
            GraphState s;
            s.graph = detail::pattern_to_ground(
                detail::parse_pattern_graph_text(body, 1, false), 1);
            s.tokens.resize(s.graph.edges.size());
            std::iota(s.tokens.begin(), s.tokens.end(), 0);
            return s;
        }
        case Substrate::Term: {
            TermState s;
            s.root = detail::parse_term_text(body, 1, nullptr);
            s.tokens.resize(term_size(s.root));
            std::iota(s.tokens.begin(), s.tokens.end(), 0);
            return s;
        }
    }
    throw Error("unknown substrate");
}

std::string rule_text(const Rule& r) {
    std::string out;
    if (const auto* sp = std::get_if<StringRulePattern>(&r.pattern)) {
        out = sp->lhs + " -> " + sp->rhs;
    } else if (const auto* hp = std::get_if<HyperRulePattern>(&r.pattern)) {
        out = to_text(hp->lhs) + " -> " + to_text(hp->rhs);
    } else {
        const auto& tp = std::get<TermRulePattern>(r.pattern);
        out = to_text(tp.lhs) + " -> " + to_text(tp.rhs);
    }
    if (r.level > 0) out += " @level " + std::to_string(r.level);
    return out;
}

}  // namespace multiway
