#include "multiway/causal.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

namespace multiway {

namespace {

std::vector<TokenId>& tokens_ref(State& s) {
    if (auto* p = std::get_if<StringState>(&s)) return p->tokens;
    if (auto* p = std::get_if<GraphState>(&s)) return p->tokens;
    return std::get<TermState>(s).tokens;
}

CausalNetwork finish_network(std::vector<EventId> ids,
                             std::map<std::pair<EventId, EventId>, std::set<TokenId>>&& hits) {
    std::sort(ids.begin(), ids.end());
    CausalNetwork net;
    net.events = std::move(ids);
    for (auto& [fromto, tokens] : hits) {
        CausalNetwork::Edge e;
        e.from = fromto.first;
        e.to = fromto.second;
        e.witness.assign(tokens.begin(), tokens.end());
        net.edges.push_back(std::move(e));
    }
    return net;
}

}  // namespace

CausalNetwork build_causal_network(const std::vector<Event>& events) {
    std::unordered_map<TokenId, EventId> produced_by;
    std::vector<EventId> ids;
    ids.reserve(events.size());
    for (const Event& e : events) {
        ids.push_back(e.id);
        for (TokenId t : e.produced) {
            auto [it, fresh] = produced_by.emplace(t, e.id);
            if (!fresh && it->second != e.id)
                throw DuplicateTokenProduction("token " + std::to_string(t) +
                                               " produced by events " +
                                               std::to_string(it->second) + " and " +
                                               std::to_string(e.id));
        }
    }
    std::map<std::pair<EventId, EventId>, std::set<TokenId>> hits;
    for (const Event& e : events)
        for (TokenId t : e.consumed) {
            auto it = produced_by.find(t);
            if (it == produced_by.end() || it->second == e.id) continue;
            hits[{it->second, e.id}].insert(t);
        }
    return finish_network(std::move(ids), std::move(hits));
}

CausalNetwork multiway_causal_network(const MultiwayGraph& g) {
    // Value provenance of every instance token: the set of events whose
    // output the token's value descends from, through any chain of copies.
    // Merging events legitimately share produced tokens (several events
    // reaching one canonical state all claim its instance tokens), so a
    // token may have many producers here, unlike in one evolution.
    std::unordered_map<TokenId, std::vector<EventId>> produced_by;
    std::unordered_map<TokenId, std::vector<TokenId>> copied_from;
    std::vector<EventId> ids;
    ids.reserve(g.events.size());
    for (const Event& e : g.events) {
        ids.push_back(e.id);
        for (TokenId t : e.produced) produced_by[t].push_back(e.id);
        for (auto& [src, tgt] : e.copied) copied_from[tgt].push_back(src);
    }

    // Fixpoint, not a memoized walk: copy chains can revisit a state through
    // a cycle, so origin sets grow monotonically until stable.
    std::unordered_map<TokenId, std::set<EventId>> origins;
    std::unordered_map<TokenId, std::vector<TokenId>> copies_onto;
    std::vector<TokenId> work;
    for (auto& [tgt, srcs] : copied_from)
        for (TokenId src : srcs) copies_onto[src].push_back(tgt);
    for (auto& [t, evs] : produced_by) {
        origins[t].insert(evs.begin(), evs.end());
        work.push_back(t);
    }
    while (!work.empty()) {
        TokenId t = work.back();
        work.pop_back();
        auto onto = copies_onto.find(t);
        if (onto == copies_onto.end()) continue;
        const auto& src_set = origins[t];
        for (TokenId tgt : onto->second) {
            auto& dst = origins[tgt];
            std::size_t before = dst.size();
            dst.insert(src_set.begin(), src_set.end());
            if (dst.size() != before) work.push_back(tgt);
        }
    }

    std::map<std::pair<EventId, EventId>, std::set<TokenId>> hits;
    for (const Event& e : g.events)
        for (TokenId t : e.consumed) {
            auto it = origins.find(t);
            if (it == origins.end()) continue;
            for (EventId from : it->second)
                if (from != e.id) hits[{from, e.id}].insert(t);
        }
    return finish_network(std::move(ids), std::move(hits));
}

std::string causal_certificate(const CausalNetwork& net, const std::vector<Event>& events,
                               bool labeled) {
    std::vector<EventId> order = net.events;
    std::sort(order.begin(), order.end());
    std::unordered_map<EventId, std::size_t> slot;
    for (std::size_t i = 0; i < order.size(); ++i) slot[order[i]] = i;

    std::vector<int> colors(order.size(), 0);
    if (labeled) {
        std::unordered_map<EventId, RuleId> rule_of;
        for (const Event& e : events) rule_of[e.id] = e.rule;
        for (std::size_t i = 0; i < order.size(); ++i)
            colors[i] = static_cast<int>(rule_of[order[i]]);
    }

    std::vector<HyperEdge> edges;
    edges.reserve(net.edges.size());
    for (const auto& e : net.edges)
        edges.push_back({static_cast<VertexId>(slot.at(e.from)),
                         static_cast<VertexId>(slot.at(e.to))});
    return canonicalize_colored(order.size(), edges, colors).certificate;
}

InvarianceReport causal_invariance_verdict(const State& initial,
                                           const std::vector<Rule>& rules,
                                           std::uint32_t depth, std::size_t path_cap,
                                           bool labeled) {
    InvarianceReport report;
    report.depth = depth;
    report.labeled = labeled;

    TokenId base_token = 0;
    for (TokenId t : tokens_of(initial)) base_token = std::max(base_token, t + 1);

    struct Walker {
        const std::vector<Rule>& rules;
        std::uint32_t depth;
        std::size_t path_cap;
        bool labeled;
        InvarianceReport& report;
        bool done = false;

        const Rule& rule_by(RuleId id) const {
            for (const Rule& r : rules)
                if (r.id == id) return r;
            throw KeyNotFound("rule " + std::to_string(id));
        }

        void finish_path(const std::vector<Event>& events) {
            if (report.paths_enumerated == path_cap) {
                report.path_cap_exceeded = true;
                done = true;
                return;
            }
            CausalNetwork net = build_causal_network(events);
            std::string cert = causal_certificate(net, events, labeled);
            std::size_t index = report.paths_enumerated++;
            if (index == 0) {
                report.certificate = cert;
            } else if (cert != report.certificate) {
                report.verdict = InvarianceReport::Verdict::False;
                report.witness_pair = {std::size_t{0}, index};
                done = true;
            }
        }

        void walk(const State& s, std::vector<Event>& events, TokenId next_token) {
            if (done) return;
            if (events.size() == depth) {
                finish_path(events);
                return;
            }
            std::vector<Match> matches = all_matches(s, rules);
            if (matches.empty()) {
                finish_path(events);
                return;
            }
            const auto& src_tokens = tokens_of(s);
            for (const Match& m : matches) {
                if (done) return;
                const Rule& r = rule_by(m.rule);
                RawApply raw = apply_match_raw(s, r, m);
                auto& out_tokens = tokens_ref(raw.result);
                Event ev;
                ev.id = static_cast<EventId>(events.size());
                ev.rule = r.id;
                ev.level = r.level;
                ev.binding = binding_repr(m);
                for (std::size_t pos : raw.consumed_src) ev.consumed.push_back(src_tokens[pos]);
                std::sort(ev.consumed.begin(), ev.consumed.end());
                for (auto& [src_pos, raw_pos] : raw.kept) out_tokens[raw_pos] = src_tokens[src_pos];
                TokenId next = next_token;
                for (std::size_t raw_pos : raw.fresh_raw) {
                    out_tokens[raw_pos] = next;
                    ev.produced.push_back(next++);
                }
                events.push_back(std::move(ev));
                walk(raw.result, events, next);
                events.pop_back();
            }
        }
    };

    Walker walker{rules, depth, path_cap, labeled, report};
    std::vector<Event> events;
    walker.walk(initial, events, base_token);

    if (report.path_cap_exceeded) {
        report.verdict = InvarianceReport::Verdict::Inconclusive;
        report.certificate.clear();
    } else if (report.verdict == InvarianceReport::Verdict::False) {
        report.certificate.clear();
    } else if (report.paths_enumerated > 0) {
        report.verdict = InvarianceReport::Verdict::True;
    }
    return report;
}

}  // namespace multiway
