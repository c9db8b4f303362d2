#include "multiway/homotopy.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace multiway {

namespace {

// Ground pattern: every vertex a literal atom.
PatternGraph ground_pattern(const Hypergraph& h) {
    PatternGraph p;
    p.edges.reserve(h.edges.size());
    for (const HyperEdge& e : h.edges) {
        PatternEdge pe;
        pe.reserve(e.size());
        for (VertexId v : e) {
            PatternAtom a;
            a.is_var = false;
            a.literal = v;
            pe.push_back(std::move(a));
        }
        p.edges.push_back(std::move(pe));
    }
    return p;
}

Rule whole_state_rule(const MultiwayGraph& g, const std::string& from_key,
                      const std::string& to_key, RuleId id, int level, bool anchored) {
    const State& from = g.state_at(from_key).instance;
    const State& to = g.state_at(to_key).instance;
    Rule r;
    r.id = id;
    r.level = level;
    r.anchored = anchored;
    r.substrate = g.substrate;
    switch (g.substrate) {
        case Substrate::String:
            r.pattern = StringRulePattern{std::get<StringState>(from).chars,
                                          std::get<StringState>(to).chars};
            break;
        case Substrate::Hypergraph: {
            HyperRulePattern p;
            p.lhs = ground_pattern(std::get<GraphState>(from).graph);
            p.rhs = ground_pattern(std::get<GraphState>(to).graph);
            r.pattern = std::move(p);
            break;
        }
        case Substrate::Term:
            r.pattern = TermRulePattern{std::get<TermState>(from).root,
                                        std::get<TermState>(to).root};
            break;
    }
    return r;
}

// Sorted unique level-l targets of key, plus key itself as the degenerate
// continuation.
std::vector<std::string> slot_targets(const MultiwayGraph& g, const std::string& key,
                                      int level) {
    std::vector<std::string> out = g.targets_of(key, level);
    out.push_back(key);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

RuleTower RuleTower::from_rules(const std::vector<Rule>& rules) {
    RuleTower tower;
    int height = -1;
    for (const Rule& r : rules) {
        if (r.level < 0) throw Error("negative rule level");
        height = std::max(height, r.level);
    }
    tower.levels.resize(static_cast<std::size_t>(height + 1));
    for (const Rule& r : rules) tower.levels[static_cast<std::size_t>(r.level)].push_back(r);
    if (tower.levels.empty() || tower.levels[0].empty())
        throw Error("rule tower has no level-0 rules");
    return tower;
}

std::vector<Rule> RuleTower::flatten() const {
    std::vector<Rule> out;
    for (const auto& level : levels) out.insert(out.end(), level.begin(), level.end());
    return out;
}

std::vector<Rule> synthesize_homotopy_rules(const MultiwayGraph& g,
                                            const std::vector<std::string>& path1_keys,
                                            const std::vector<std::string>& path2_keys,
                                            int level, bool anchored) {
    if (path1_keys.size() != path2_keys.size())
        throw LengthMismatch("paths of length " + std::to_string(path1_keys.size()) +
                             " and " + std::to_string(path2_keys.size()));
    if (path1_keys.empty()) return {};
    for (const std::string& k : path1_keys)
        if (!g.has_state(k)) throw KeyNotFound(k);
    for (const std::string& k : path2_keys)
        if (!g.has_state(k)) throw KeyNotFound(k);
    if (path1_keys.front() != path2_keys.front() || path1_keys.back() != path2_keys.back())
        throw EndpointMismatch("paired paths must share both endpoints");

    RuleId next_id = 0;
    for (const Rule& r : g.tower) next_id = std::max(next_id, r.id + 1);

    std::vector<Rule> out;
    for (std::size_t i = 1; i + 1 < path1_keys.size(); ++i) {
        if (path1_keys[i] == path2_keys[i]) continue;
        Rule r = whole_state_rule(g, path1_keys[i], path2_keys[i], next_id, level, anchored);
        bool dup = false;
        for (const Rule& seen : out)
            if (same_rule(seen, r)) {
                dup = true;
                break;
            }
        if (dup) continue;
        ++next_id;
        out.push_back(std::move(r));
    }
    return out;
}

MultiwayGraph induce(const MultiwayGraph& g, const std::vector<Rule>& new_rules,
                     std::uint32_t steps, const EvolveOptions& opts) {
    std::vector<Rule> rules = g.tower;
    for (const Rule& r : new_rules) {
        bool dup = false;
        for (const Rule& seen : rules)
            if (same_rule(seen, r)) {
                dup = true;
                break;
            }
        if (!dup) rules.push_back(r);
    }
    std::vector<State> initials;
    initials.reserve(g.initial_keys.size());
    for (const std::string& k : g.initial_keys) initials.push_back(g.state_at(k).instance);
    return evolve(initials, rules, steps, opts);
}

std::vector<Square> find_squares(const MultiwayGraph& g) {
    std::vector<Square> out;
    for (const StoredState& s : g.states) {
        const std::string& a = s.key;
        for (const std::string& b : slot_targets(g, a, 0))
            for (const std::string& c : slot_targets(g, a, 1))
                for (const std::string& d : slot_targets(g, c, 0)) {
                    bool vertical_real = a != b || c != d;
                    bool horizontal_real = a != c || b != d;
                    if (!vertical_real || !horizontal_real) continue;
                    if (b != d && !g.has_edge(b, d, 1)) continue;
                    out.push_back({a, b, c, d});
                }
    }
    std::sort(out.begin(), out.end(), [](const Square& x, const Square& y) {
        return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
    });
    return out;
}

std::vector<Cube> find_cubes(const MultiwayGraph& g) {
    std::vector<Square> squares = find_squares(g);
    std::set<std::array<std::string, 4>> square_set;
    for (const Square& s : squares) square_set.insert({s.a, s.b, s.c, s.d});

    std::vector<Cube> out;
    for (const Square& f : squares) {
        for (const std::string& a2 : slot_targets(g, f.a, 2))
            for (const std::string& b2 : slot_targets(g, f.b, 2))
                for (const std::string& c2 : slot_targets(g, f.c, 2))
                    for (const std::string& d2 : slot_targets(g, f.d, 2)) {
                        if (a2 == f.a && b2 == f.b && c2 == f.c && d2 == f.d)
                            continue;  // no real front-to-back edge
                        if (!square_set.count({a2, b2, c2, d2})) continue;
                        out.push_back({{f.a, f.b, f.c, f.d, a2, b2, c2, d2}});
                    }
    }
    std::sort(out.begin(), out.end(),
              [](const Cube& x, const Cube& y) { return x.corners < y.corners; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ClosureReport check_composition_closure(const MultiwayGraph& g, int dimension) {
    ClosureReport report;
    report.dimension = dimension;
    switch (dimension) {
        case 1: {
            for (const Event& e : g.events) {
                ++report.cells_checked;
                if (!g.has_state(e.source_key))
                    report.violations.push_back("event " + std::to_string(e.id) +
                                                " dangling source " + e.source_key);
                if (!g.has_state(e.target_key))
                    report.violations.push_back("event " + std::to_string(e.id) +
                                                " dangling target " + e.target_key);
            }
            break;
        }
        case 2: {
            for (const Square& s : find_squares(g)) {
                ++report.cells_checked;
                auto down_b = g.targets_of(s.b, 0);
                auto down_d = g.targets_of(s.d, 0);
                if (!down_b.empty() && !down_d.empty()) {
                    bool closes = false;
                    for (const std::string& b2 : down_b) {
                        for (const std::string& d2 : down_d)
                            if (b2 == d2 || g.has_edge(b2, d2, 1)) {
                                closes = true;
                                break;
                            }
                        if (closes) break;
                    }
                    if (!closes)
                        report.violations.push_back("square " + s.a + "," + s.b + "," +
                                                    s.c + "," + s.d +
                                                    " has no downward pasting");
                }
                auto up_a = g.sources_of(s.a, 0);
                auto up_c = g.sources_of(s.c, 0);
                if (!up_a.empty() && !up_c.empty()) {
                    bool closes = false;
                    for (const std::string& a0 : up_a) {
                        for (const std::string& c0 : up_c)
                            if (a0 == c0 || g.has_edge(a0, c0, 1)) {
                                closes = true;
                                break;
                            }
                        if (closes) break;
                    }
                    if (!closes)
                        report.violations.push_back("square " + s.a + "," + s.b + "," +
                                                    s.c + "," + s.d +
                                                    " has no upward pasting");
                }
            }
            break;
        }
        case 3: {
            std::set<std::array<std::string, 4>> square_set;
            for (const Square& s : find_squares(g)) square_set.insert({s.a, s.b, s.c, s.d});
            for (const Cube& c : find_cubes(g)) {
                ++report.cells_checked;
                if (!square_set.count(
                        {c.corners[0], c.corners[1], c.corners[2], c.corners[3]}))
                    report.violations.push_back("cube front face not a detected square");
                if (!square_set.count(
                        {c.corners[4], c.corners[5], c.corners[6], c.corners[7]}))
                    report.violations.push_back("cube back face not a detected square");
            }
            break;
        }
        default:
            throw Error("closure dimension must be 1, 2, or 3");
    }
    return report;
}

}  // namespace multiway
