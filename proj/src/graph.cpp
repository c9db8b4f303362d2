#include "multiway/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "multiway/errors.hpp"

namespace multiway {

namespace {

std::uint32_t resolve_max_states(std::uint32_t requested) {
    if (requested) return requested;
    if (const char* env = std::getenv("MULTIWAY_MAX_STATES")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::uint32_t>(v);
    }
    return 100000;
}

std::vector<TokenId>& tokens_mut(State& s) {
    if (auto* ss = std::get_if<StringState>(&s)) return ss->tokens;
    if (auto* gs = std::get_if<GraphState>(&s)) return gs->tokens;
    return std::get<TermState>(s).tokens;
}

const Rule& rule_by_id(const std::vector<Rule>& rules, RuleId id) {
    for (const auto& r : rules)
        if (r.id == id) return r;
    throw KeyNotFound("rule id " + std::to_string(id) + " not in rule set");
}

}  // namespace

// ===========================================================================
// Store accessors
// ===========================================================================

const StoredState& MultiwayGraph::state_at(const std::string& key) const {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) throw KeyNotFound("state key not stored: " + key);
    return states[it->second];
}

bool MultiwayGraph::has_state(const std::string& key) const {
    return by_key_.count(key) != 0;
}

const StoredState* MultiwayGraph::find_state(const std::string& key) const {
    auto it = by_key_.find(key);
    return it == by_key_.end() ? nullptr : &states[it->second];
}

std::vector<EventId> MultiwayGraph::events_from(const std::string& key) const {
    auto it = out_.find(key);
    return it == out_.end() ? std::vector<EventId>{} : it->second;
}

std::vector<EventId> MultiwayGraph::events_into(const std::string& key) const {
    auto it = in_.find(key);
    return it == in_.end() ? std::vector<EventId>{} : it->second;
}

bool MultiwayGraph::has_edge(const std::string& a, const std::string& b, int level) const {
    auto it = out_.find(a);
    if (it == out_.end()) return false;
    for (EventId id : it->second)
        if (events[id].level == level && events[id].target_key == b) return true;
    return false;
}

std::vector<std::string> MultiwayGraph::targets_of(const std::string& key, int level) const {
    std::set<std::string> found;
    auto it = out_.find(key);
    if (it != out_.end())
        for (EventId id : it->second)
            if (events[id].level == level) found.insert(events[id].target_key);
    return {found.begin(), found.end()};
}

std::vector<std::string> MultiwayGraph::sources_of(const std::string& key, int level) const {
    std::set<std::string> found;
    auto it = in_.find(key);
    if (it != in_.end())
        for (EventId id : it->second)
            if (events[id].level == level) found.insert(events[id].source_key);
    return {found.begin(), found.end()};
}

StateIndex MultiwayGraph::seed_state(const std::string& text, std::uint32_t generation) {
    State parsed = parse_state_text(substrate, text);
    Canonicalized canon = canonicalize_state(parsed);
    auto it = by_key_.find(canon.key);
    if (it != by_key_.end()) return it->second;
    StoredState st;
    st.index = static_cast<StateIndex>(states.size());
    st.key = canon.key;
    st.generation = generation;
    st.instance = std::move(canon.state);
    for (auto& t : tokens_mut(st.instance)) t = next_token_++;
    by_key_.emplace(st.key, st.index);
    if (generation == 0 &&
        std::find(initial_keys.begin(), initial_keys.end(), st.key) == initial_keys.end())
        initial_keys.push_back(st.key);
    states.push_back(std::move(st));
    return static_cast<StateIndex>(states.size() - 1);
}

void MultiwayGraph::seed_edge(const std::string& src_text, const std::string& dst_text,
                              int level) {
    StateIndex si = seed_state(src_text, 0);
    StateIndex di = seed_state(dst_text, 0);
    Event ev;
    ev.id = static_cast<EventId>(events.size());
    ev.rule = 0;
    ev.level = level;
    ev.source_key = states[si].key;
    ev.target_key = states[di].key;
    out_[ev.source_key].push_back(ev.id);
    in_[ev.target_key].push_back(ev.id);
    events.push_back(std::move(ev));
}

void MultiwayGraph::rebuild_adjacency() {
    by_key_.clear();
    out_.clear();
    in_.clear();
    event_sigs_.clear();
    next_token_ = 0;
    for (const auto& st : states) {
        by_key_[st.key] = st.index;
        for (TokenId t : tokens_of(st.instance))
            if (t >= next_token_) next_token_ = t + 1;
    }
    for (const auto& ev : events) {
        out_[ev.source_key].push_back(ev.id);
        in_[ev.target_key].push_back(ev.id);
        event_sigs_.insert(std::to_string(ev.rule) + "|" + ev.source_key + "|" + ev.binding);
        for (TokenId t : ev.produced)
            if (t >= next_token_) next_token_ = t + 1;
    }
}

// ===========================================================================
// Multiway evolution
// ===========================================================================

MultiwayGraph evolve(const std::vector<State>& initials, const std::vector<Rule>& rules,
                     std::uint32_t steps, const EvolveOptions& opts) {
    MultiwayGraph g;
    g.tower = rules;
    for (std::size_t i = 0; i < g.tower.size(); ++i)
        g.tower[i].id = static_cast<RuleId>(i);
    if (!initials.empty())
        g.substrate = substrate_of(initials[0]);
    else if (!g.tower.empty())
        g.substrate = g.tower[0].substrate;
    for (const auto& s : initials)
        if (substrate_of(s) != g.substrate)
            throw SubstrateMismatch("initial states span substrates");
    for (const auto& r : g.tower)
        if (r.substrate != g.substrate)
            throw SubstrateMismatch("rule substrate differs from the initial states");
    g.steps = steps;
    const std::uint32_t cap = resolve_max_states(opts.max_states);

    auto insert_state = [&g, cap](const Canonicalized& canon, std::uint32_t gen,
                                  std::uint32_t step) -> StateIndex {
        auto it = g.by_key_.find(canon.key);
        if (it != g.by_key_.end()) return it->second;
        if (g.states.size() >= cap)
            throw FrontierLimitExceeded(
                "state cap of " + std::to_string(cap) + " exceeded", step);
        StoredState st;
        st.index = static_cast<StateIndex>(g.states.size());
        st.key = canon.key;
        st.generation = gen;
        st.instance = canon.state;
        for (auto& t : tokens_mut(st.instance)) t = g.next_token_++;
        g.by_key_.emplace(st.key, st.index);
        g.states.push_back(std::move(st));
        return static_cast<StateIndex>(g.states.size() - 1);
    };

    for (const auto& s : initials) {
        Canonicalized canon = canonicalize_state(s);
        bool existed = g.by_key_.count(canon.key) != 0;
        insert_state(canon, 0, 0);
        if (!existed) g.initial_keys.push_back(canon.key);
    }

    // Worker output is purely structural; tokens are minted during the
    // sequential merge, so the store is identical for any thread count.
    struct RawSuccessor {
        RuleId rule = 0;
        int level = 0;
        std::string binding;
        std::vector<std::size_t> consumed_src;
        std::vector<std::pair<std::size_t, std::size_t>> kept;
        std::vector<std::size_t> fresh_raw;
        Canonicalized canon;
    };

    std::vector<StateIndex> frontier(g.states.size());
    std::iota(frontier.begin(), frontier.end(), 0);

    for (std::uint32_t step = 1; step <= steps && !frontier.empty(); ++step) {
        std::vector<std::vector<RawSuccessor>> results(frontier.size());
        auto work = [&](std::size_t slot) {
            const State& src = g.states[frontier[slot]].instance;
            for (const auto& m : all_matches(src, g.tower)) {
                const Rule& r = g.tower[m.rule];
                RawApply ra = apply_match_raw(src, r, m);
                RawSuccessor out;
                out.rule = r.id;
                out.level = r.level;
                out.binding = binding_repr(m);
                out.consumed_src = std::move(ra.consumed_src);
                out.kept = std::move(ra.kept);
                out.fresh_raw = std::move(ra.fresh_raw);
                out.canon = canonicalize_state(ra.result);
                results[slot].push_back(std::move(out));
            }
        };

        unsigned nthreads = opts.threads ? opts.threads : 1;
        if (nthreads <= 1 || frontier.size() <= 1) {
            for (std::size_t i = 0; i < frontier.size(); ++i) work(i);
        } else {
            std::atomic<std::size_t> cursor{0};
            std::exception_ptr error;
            std::mutex error_mu;
            auto runner = [&] {
                try {
                    for (;;) {
                        std::size_t i = cursor.fetch_add(1);
                        if (i >= frontier.size()) return;
                        work(i);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mu);
                    if (!error) error = std::current_exception();
                }
            };
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < nthreads && t < frontier.size(); ++t)
                pool.emplace_back(runner);
            for (auto& th : pool) th.join();
            if (error) std::rethrow_exception(error);
        }

        std::size_t first_new = g.states.size();
        for (std::size_t slot = 0; slot < frontier.size(); ++slot) {
            // Copy source identity up front: inserting targets grows g.states.
            const std::string src_key = g.states[frontier[slot]].key;
            const std::vector<TokenId> src_tokens =
                tokens_of(g.states[frontier[slot]].instance);
            for (RawSuccessor& raw : results[slot]) {
                std::string sig =
                    std::to_string(raw.rule) + "|" + src_key + "|" + raw.binding;
                if (!g.event_sigs_.insert(sig).second) continue;

                StateIndex tgt = insert_state(raw.canon, step, step);
                const auto& tgt_tokens = tokens_of(g.states[tgt].instance);
                std::vector<std::size_t> slot_of_raw(raw.canon.perm.size());
                for (std::size_t p = 0; p < raw.canon.perm.size(); ++p)
                    slot_of_raw[raw.canon.perm[p]] = p;

                Event ev;
                ev.id = static_cast<EventId>(g.events.size());
                ev.rule = raw.rule;
                ev.level = raw.level;
                ev.source_key = src_key;
                ev.target_key = g.states[tgt].key;
                ev.generation = step;
                ev.binding = raw.binding;
                for (std::size_t pos : raw.consumed_src)
                    ev.consumed.push_back(src_tokens[pos]);
                std::sort(ev.consumed.begin(), ev.consumed.end());
                for (const auto& [srcp, rawp] : raw.kept)
                    ev.copied.emplace_back(src_tokens[srcp], tgt_tokens[slot_of_raw[rawp]]);
                std::sort(ev.copied.begin(), ev.copied.end());
                for (std::size_t rawp : raw.fresh_raw)
                    ev.produced.push_back(tgt_tokens[slot_of_raw[rawp]]);
                std::sort(ev.produced.begin(), ev.produced.end());

                g.out_[ev.source_key].push_back(ev.id);
                g.in_[ev.target_key].push_back(ev.id);
                g.events.push_back(std::move(ev));
            }
        }

        frontier.clear();
        for (std::size_t i = first_new; i < g.states.size(); ++i)
            frontier.push_back(static_cast<StateIndex>(i));
    }
    return g;
}

// ===========================================================================
// Single-way evolution
// ===========================================================================

namespace {

std::vector<TokenId> match_consumed_tokens(const State& s, const Match& m) {
    const auto& toks = tokens_of(s);
    std::vector<TokenId> out;
    if (const auto* sm = std::get_if<StringMatch>(&m.where)) {
        for (std::size_t i = 0; i < sm->len; ++i) out.push_back(toks[sm->pos + i]);
    } else if (const auto* gm = std::get_if<GraphMatch>(&m.where)) {
        for (std::size_t c : gm->consumed) out.push_back(toks[c]);
    } else {
        const auto& tm = std::get<TermMatch>(m.where);
        for (std::size_t i = 0; i < tm.subtree_size; ++i)
            out.push_back(toks[tm.preorder + i]);
    }
    return out;
}

// Apply a token-disjoint match set as one simultaneous step. Events come out
// in selection order; all share the pre-step source and post-step target.
std::pair<State, std::vector<Event>> apply_simultaneous(
    const State& s, const std::vector<Rule>& rules, const std::vector<Match>& chosen,
    TokenId* next_token, EventId first_event_id, std::uint32_t generation) {
    std::vector<Event> events(chosen.size());
    State next = s;

    if (const auto* ss0 = std::get_if<StringState>(&s)) {
        StringState cur = *ss0;
        std::vector<std::size_t> order(chosen.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::get<StringMatch>(chosen[a].where).pos >
                   std::get<StringMatch>(chosen[b].where).pos;
        });
        for (std::size_t rank : order) {
            const Match& m = chosen[rank];
            const Rule& r = rule_by_id(rules, m.rule);
            const auto& p = std::get<StringRulePattern>(r.pattern);
            const auto& sm = std::get<StringMatch>(m.where);
            if (sm.pos + sm.len > cur.chars.size() ||
                cur.chars.compare(sm.pos, sm.len, p.lhs) != 0)
                throw StaleMatch("string match does not fit the current state");
            Event& ev = events[rank];
            ev.rule = r.id;
            ev.level = r.level;
            ev.binding = binding_repr(m);
            for (std::size_t i = 0; i < sm.len; ++i)
                ev.consumed.push_back(cur.tokens[sm.pos + i]);
            std::sort(ev.consumed.begin(), ev.consumed.end());
            std::vector<TokenId> fresh;
            for (std::size_t i = 0; i < p.rhs.size(); ++i) fresh.push_back((*next_token)++);
            ev.produced = fresh;
            cur.chars = cur.chars.substr(0, sm.pos) + p.rhs + cur.chars.substr(sm.pos + sm.len);
            cur.tokens.erase(cur.tokens.begin() + static_cast<std::ptrdiff_t>(sm.pos),
                             cur.tokens.begin() + static_cast<std::ptrdiff_t>(sm.pos + sm.len));
            cur.tokens.insert(cur.tokens.begin() + static_cast<std::ptrdiff_t>(sm.pos),
                              fresh.begin(), fresh.end());
        }
        next = std::move(cur);
    } else if (const auto* gs0 = std::get_if<GraphState>(&s)) {
        const GraphState& cur = *gs0;
        std::vector<bool> removed(cur.graph.edges.size(), false);
        for (const Match& m : chosen)
            for (std::size_t c : std::get<GraphMatch>(m.where).consumed) {
                if (c >= removed.size() || removed[c])
                    throw StaleMatch("overlapping or stale hypergraph match set");
                removed[c] = true;
            }
        GraphState out;
        for (std::size_t i = 0; i < cur.graph.edges.size(); ++i) {
            if (removed[i]) continue;
            out.graph.edges.push_back(cur.graph.edges[i]);
            out.tokens.push_back(cur.tokens[i]);
        }
        std::set<VertexId> used;
        for (const auto& e : cur.graph.edges)
            for (VertexId v : e) used.insert(v);
        VertexId probe = 1;
        for (std::size_t rank = 0; rank < chosen.size(); ++rank) {
            const Match& m = chosen[rank];
            const Rule& r = rule_by_id(rules, m.rule);
            const auto& p = std::get<HyperRulePattern>(r.pattern);
            const auto& gm = std::get<GraphMatch>(m.where);
            std::map<std::string, VertexId> binding = gm.binding;
            for (const auto& pe : p.rhs.edges)
                for (const auto& atom : pe) {
                    if (!atom.is_var || binding.count(atom.var)) continue;
                    while (used.count(probe)) ++probe;
                    binding.emplace(atom.var, probe);
                    used.insert(probe);
                }
            Event& ev = events[rank];
            ev.rule = r.id;
            ev.level = r.level;
            ev.binding = binding_repr(m);
            for (std::size_t c : gm.consumed) ev.consumed.push_back(cur.tokens[c]);
            std::sort(ev.consumed.begin(), ev.consumed.end());
            for (const auto& pe : p.rhs.edges) {
                HyperEdge he;
                for (const auto& atom : pe)
                    he.push_back(atom.is_var ? binding.at(atom.var) : atom.literal);
                out.graph.edges.push_back(std::move(he));
                TokenId t = (*next_token)++;
                out.tokens.push_back(t);
                ev.produced.push_back(t);
            }
            std::sort(ev.produced.begin(), ev.produced.end());
        }
        next = std::move(out);
    } else {
        TermState cur = std::get<TermState>(s);
        std::vector<std::size_t> order(chosen.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::get<TermMatch>(chosen[a].where).preorder >
                   std::get<TermMatch>(chosen[b].where).preorder;
        });
        for (std::size_t rank : order) {
            const Match& m = chosen[rank];
            const Rule& r = rule_by_id(rules, m.rule);
            const auto& p = std::get<TermRulePattern>(r.pattern);
            const auto& tm = std::get<TermMatch>(m.where);
            Term rhs_instance = instantiate(p.rhs, tm.binding);
            std::size_t new_size = term_size(rhs_instance);
            Event& ev = events[rank];
            ev.rule = r.id;
            ev.level = r.level;
            ev.binding = binding_repr(m);
            for (std::size_t i = 0; i < tm.subtree_size; ++i)
                ev.consumed.push_back(cur.tokens[tm.preorder + i]);
            std::sort(ev.consumed.begin(), ev.consumed.end());
            std::vector<TokenId> fresh;
            for (std::size_t i = 0; i < new_size; ++i) fresh.push_back((*next_token)++);
            ev.produced = fresh;
            cur.root = replace_at(cur.root, tm.path, rhs_instance);
            cur.tokens.erase(
                cur.tokens.begin() + static_cast<std::ptrdiff_t>(tm.preorder),
                cur.tokens.begin() + static_cast<std::ptrdiff_t>(tm.preorder + tm.subtree_size));
            cur.tokens.insert(cur.tokens.begin() + static_cast<std::ptrdiff_t>(tm.preorder),
                              fresh.begin(), fresh.end());
        }
        next = std::move(cur);
    }

    std::string src_key = canonical_key(s);
    std::string tgt_key = canonical_key(next);
    for (std::size_t rank = 0; rank < events.size(); ++rank) {
        events[rank].id = first_event_id + static_cast<EventId>(rank);
        events[rank].source_key = src_key;
        events[rank].target_key = tgt_key;
        events[rank].generation = generation;
    }
    return {std::move(next), std::move(events)};
}

}  // namespace

std::vector<Event> SinglewayRun::all_events() const {
    std::vector<Event> out;
    for (const auto& st : steps) out.insert(out.end(), st.events.begin(), st.events.end());
    return out;
}

SinglewayRun singleway_evolve(const State& initial, const std::vector<Rule>& rules,
                              const Strategy& strategy, std::uint32_t steps) {
    std::vector<Rule> rs = rules;
    for (std::size_t i = 0; i < rs.size(); ++i) rs[i].id = static_cast<RuleId>(i);

    SinglewayRun run;
    run.steps.push_back({initial, {}});
    State cur = initial;
    TokenId next_token = 0;
    for (TokenId t : tokens_of(initial))
        if (t >= next_token) next_token = t + 1;
    std::mt19937_64 rng(strategy.seed);
    EventId next_event = 0;

    // one sweep per step: FirstMatch fires the first match, AllNonOverlapping
    // a maximal token-disjoint set, greedily in (seeded) match order
    for (std::uint32_t step = 1; step <= steps; ++step) {
        auto matches = all_matches(cur, rs);
        if (matches.empty()) break;

        std::vector<Match> chosen;
        if (strategy.kind == Strategy::Kind::FirstMatch) {
            chosen.push_back(matches[0]);
        } else {
            if (strategy.seed != 0) std::shuffle(matches.begin(), matches.end(), rng);
            std::set<TokenId> used;
            for (const auto& m : matches) {
                auto cons = match_consumed_tokens(cur, m);
                bool clash = false;
                for (TokenId t : cons)
                    if (used.count(t)) {
                        clash = true;
                        break;
                    }
                if (clash) continue;
                used.insert(cons.begin(), cons.end());
                chosen.push_back(m);
            }
        }

        auto [next, evs] = apply_simultaneous(cur, rs, chosen, &next_token, next_event, step);
        next_event += static_cast<EventId>(evs.size());
        run.steps.push_back({next, std::move(evs)});
        cur = std::move(next);
    }
    return run;
}

// ===========================================================================
// Foliation, branchial structure, path queries
// ===========================================================================

Foliation foliate(const MultiwayGraph& g) {
    const std::size_t n = g.states.size();
    std::vector<std::vector<std::pair<StateIndex, EventId>>> out_l0(n);
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& ev : g.events) {
        if (ev.level != 0) continue;
        StateIndex a = g.state_at(ev.source_key).index;
        StateIndex b = g.state_at(ev.target_key).index;
        out_l0[a].emplace_back(b, ev.id);
        ++indeg[b];
    }

    Foliation fol;
    fol.time.assign(n, 0);
    std::vector<StateIndex> queue;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) queue.push_back(static_cast<StateIndex>(i));
    std::size_t processed = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        StateIndex v = queue[qi];
        ++processed;
        for (const auto& [w, ev] : out_l0[v]) {
            if (fol.time[v] + 1 > fol.time[w]) fol.time[w] = fol.time[v] + 1;
            if (--indeg[w] == 0) queue.push_back(w);
        }
    }
    if (processed != n)
        throw CyclicGraph("level-0 evolution graph has a directed cycle");

    std::uint32_t horizon = 0;
    for (std::size_t i = 0; i < n; ++i) horizon = std::max(horizon, fol.time[i]);
    fol.slices.assign(n == 0 ? 0 : horizon + 1, {});
    for (std::size_t i = 0; i < n; ++i) fol.slices[fol.time[i]].push_back(g.states[i].key);
    for (auto& slice : fol.slices) std::sort(slice.begin(), slice.end());
    return fol;
}

namespace {

std::set<std::string> proper_ancestors(const MultiwayGraph& g, const std::string& key,
                                       std::uint32_t depth) {
    std::set<std::string> seen;
    std::vector<std::string> layer{key};
    for (std::uint32_t d = 0; d < depth && !layer.empty(); ++d) {
        std::vector<std::string> next;
        for (const auto& k : layer)
            for (EventId id : g.events_into(k)) {
                if (g.events[id].level != 0) continue;
                const auto& src = g.events[id].source_key;
                if (seen.insert(src).second) next.push_back(src);
            }
        layer = std::move(next);
    }
    seen.erase(key);
    return seen;
}

}  // namespace

BranchialGraph branchial_graph(const MultiwayGraph& g, const Foliation& fol,
                               std::size_t slice_index, std::uint32_t ancestor_depth) {
    if (slice_index >= fol.slices.size())
        throw KeyNotFound("foliation has no slice " + std::to_string(slice_index));
    BranchialGraph bg;
    bg.vertices = fol.slices[slice_index];

    std::vector<std::set<std::string>> anc;
    anc.reserve(bg.vertices.size());
    for (const auto& key : bg.vertices)
        anc.push_back(proper_ancestors(g, key, ancestor_depth));

    for (std::size_t i = 0; i < bg.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < bg.vertices.size(); ++j) {
            std::size_t weight = 0;
            for (const auto& a : anc[i])
                if (anc[j].count(a)) ++weight;
            if (weight > 0) bg.edges.push_back({bg.vertices[i], bg.vertices[j], weight});
        }
    return bg;
}

PathSet paths_between(const MultiwayGraph& g, const std::string& a_key,
                      const std::string& b_key, std::size_t max_len,
                      std::size_t max_paths) {
    if (!g.has_state(a_key)) throw KeyNotFound("path start not stored: " + a_key);
    if (!g.has_state(b_key)) throw KeyNotFound("path end not stored: " + b_key);

    PathSet out;
    std::vector<EventId> current;
    // Out-lists hold ascending event ids, so prefix-order recursion emits
    // paths in lexicographic order.
    std::function<bool(const std::string&)> visit = [&](const std::string& at) -> bool {
        if (at == b_key) {
            if (out.paths.size() >= max_paths) {
                out.truncated = true;
                return false;
            }
            out.paths.push_back(current);
        }
        if (current.size() >= max_len) return true;
        for (EventId id : g.events_from(at)) {
            current.push_back(id);
            bool keep = visit(g.events[id].target_key);
            current.pop_back();
            if (!keep) return false;
        }
        return true;
    };
    visit(a_key);
    return out;
}

std::vector<std::string> path_states(const MultiwayGraph& g, const std::string& from,
                                     const std::vector<EventId>& path) {
    std::vector<std::string> out{from};
    std::string at = from;
    for (EventId id : path) {
        if (id >= g.events.size()) throw KeyNotFound("event id out of range");
        const Event& ev = g.events[id];
        if (ev.source_key != at)
            throw EndpointMismatch("event " + std::to_string(id) +
                                   " does not leave the path's current state");
        at = ev.target_key;
        out.push_back(at);
    }
    return out;
}

}  // namespace multiway
