#include "multiway/export.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace multiway {

namespace {

using nlohmann::ordered_json;

const char* level_color(int level) {
    switch (level) {
        case 0: return "gray";
        case 1: return "purple";
        default: return "orange";
    }
}

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

// Unique (from, to, level) triples over the event list, sorted.
std::vector<std::tuple<std::string, std::string, int>> edge_triples(
    const MultiwayGraph& g) {
    std::vector<std::tuple<std::string, std::string, int>> out;
    for (const Event& e : g.events) out.emplace_back(e.source_key, e.target_key, e.level);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ordered_json term_to_json(const Term& t) {
    ordered_json j;
    j["head"] = t.head;
    j["var"] = t.is_var;
    ordered_json args = ordered_json::array();
    for (const Term& a : t.args) args.push_back(term_to_json(a));
    j["args"] = std::move(args);
    return j;
}

Term term_from_json(const ordered_json& j) {
    Term t;
    t.head = j.at("head").get<std::string>();
    t.is_var = j.at("var").get<bool>();
    for (const auto& a : j.at("args")) t.args.push_back(term_from_json(a));
    return t;
}

ordered_json pattern_to_json(const PatternGraph& p) {
    ordered_json edges = ordered_json::array();
    for (const PatternEdge& e : p.edges) {
        ordered_json edge = ordered_json::array();
        for (const PatternAtom& a : e) {
            if (a.is_var)
                edge.push_back(a.var);
            else
                edge.push_back(a.literal);
        }
        edges.push_back(std::move(edge));
    }
    return edges;
}

PatternGraph pattern_from_json(const ordered_json& j) {
    PatternGraph p;
    for (const auto& edge : j) {
        PatternEdge pe;
        for (const auto& atom : edge) {
            PatternAtom a;
            if (atom.is_string()) {
                a.is_var = true;
                a.var = atom.get<std::string>();
            } else {
                a.is_var = false;
                a.literal = atom.get<VertexId>();
            }
            pe.push_back(std::move(a));
        }
        p.edges.push_back(std::move(pe));
    }
    return p;
}

ordered_json rule_to_json(const Rule& r) {
    ordered_json j;
    j["id"] = r.id;
    j["level"] = r.level;
    j["anchored"] = r.anchored;
    switch (r.substrate) {
        case Substrate::String: {
            const auto& p = std::get<StringRulePattern>(r.pattern);
            j["lhs"] = p.lhs;
            j["rhs"] = p.rhs;
            break;
        }
        case Substrate::Hypergraph: {
            const auto& p = std::get<HyperRulePattern>(r.pattern);
            j["lhs"] = pattern_to_json(p.lhs);
            j["rhs"] = pattern_to_json(p.rhs);
            break;
        }
        case Substrate::Term: {
            const auto& p = std::get<TermRulePattern>(r.pattern);
            j["lhs"] = term_to_json(p.lhs);
            j["rhs"] = term_to_json(p.rhs);
            break;
        }
    }
    return j;
}

Rule rule_from_json(const ordered_json& j, Substrate sub) {
    Rule r;
    r.id = j.at("id").get<RuleId>();
    r.level = j.at("level").get<int>();
    r.anchored = j.at("anchored").get<bool>();
    r.substrate = sub;
    switch (sub) {
        case Substrate::String:
            r.pattern = StringRulePattern{j.at("lhs").get<std::string>(),
                                          j.at("rhs").get<std::string>()};
            break;
        case Substrate::Hypergraph:
            r.pattern =
                HyperRulePattern{pattern_from_json(j.at("lhs")), pattern_from_json(j.at("rhs"))};
            break;
        case Substrate::Term:
            r.pattern =
                TermRulePattern{term_from_json(j.at("lhs")), term_from_json(j.at("rhs"))};
            break;
    }
    return r;
}

Substrate substrate_from_name(const std::string& name) {
    if (name == "string") return Substrate::String;
    if (name == "hypergraph") return Substrate::Hypergraph;
    if (name == "term") return Substrate::Term;
    throw Error("unknown substrate in document: " + name);
}

}  // namespace

std::string to_dot(const MultiwayGraph& g, const ExportArtifacts& artifacts) {
    if (g.states.empty() && !artifacts.causal) return "digraph { }\n";
    std::ostringstream out;
    out << "digraph multiway {\n";
    out << "  rankdir=TB;\n";
    out << "  node [shape=box];\n";
    for (const StoredState& s : g.states)
        out << "  \"" << dot_escape(s.key) << "\" [label=\""
            << dot_escape(state_text(s.instance)) << "\"];\n";
    for (const auto& [from, to, level] : edge_triples(g))
        out << "  \"" << dot_escape(from) << "\" -> \"" << dot_escape(to) << "\" [color="
            << level_color(level) << "];\n";
    if (artifacts.causal) {
        std::unordered_map<EventId, const Event*> by_id;
        for (const Event& e : g.events) by_id[e.id] = &e;
        std::vector<EventId> order = artifacts.causal->events;
        std::sort(order.begin(), order.end());
        for (EventId id : order) {
            out << "  \"e" << id << "\" [shape=ellipse, label=\"e" << id;
            auto it = by_id.find(id);
            if (it != by_id.end()) out << ":r" << it->second->rule;
            out << "\"];\n";
        }
        for (EventId id : order) {
            auto it = by_id.find(id);
            if (it == by_id.end()) continue;
            const Event& e = *it->second;
            out << "  \"" << dot_escape(e.source_key) << "\" -> \"e" << id
                << "\" [color=gray];\n";
            out << "  \"e" << id << "\" -> \"" << dot_escape(e.target_key)
                << "\" [color=gray];\n";
        }
        for (const auto& edge : artifacts.causal->edges)
            out << "  \"e" << edge.from << "\" -> \"e" << edge.to
                << "\" [color=orange, style=dashed];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const CausalNetwork& net) {
    if (net.events.empty()) return "digraph { }\n";
    std::ostringstream out;
    out << "digraph causal {\n";
    out << "  node [shape=ellipse];\n";
    std::vector<EventId> order = net.events;
    std::sort(order.begin(), order.end());
    for (EventId id : order) out << "  \"e" << id << "\";\n";
    for (const auto& edge : net.edges) {
        out << "  \"e" << edge.from << "\" -> \"e" << edge.to
            << "\" [color=orange, style=dashed, label=\"";
        for (std::size_t i = 0; i < edge.witness.size(); ++i)
            out << (i ? "," : "") << edge.witness[i];
        out << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

nlohmann::ordered_json to_json(const MultiwayGraph& g, const ExportArtifacts& artifacts) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["substrate"] = substrate_name(g.substrate);
    doc["steps"] = g.steps;
    doc["initial"] = g.initial_keys;

    ordered_json rules = ordered_json::array();
    for (const Rule& r : g.tower) rules.push_back(rule_to_json(r));
    doc["rules"] = std::move(rules);

    ordered_json states = ordered_json::array();
    for (const StoredState& s : g.states) {
        ordered_json js;
        js["key"] = s.key;
        js["text"] = state_text(s.instance);
        js["generation"] = s.generation;
        js["tokens"] = tokens_of(s.instance);
        states.push_back(std::move(js));
    }
    doc["states"] = std::move(states);

    ordered_json events = ordered_json::array();
    for (const Event& e : g.events) {
        ordered_json je;
        je["id"] = e.id;
        je["rule"] = e.rule;
        je["level"] = e.level;
        je["source"] = e.source_key;
        je["target"] = e.target_key;
        je["consumed"] = e.consumed;
        je["produced"] = e.produced;
        ordered_json copied = ordered_json::array();
        for (const auto& [src, tgt] : e.copied)
            copied.push_back(ordered_json::array({src, tgt}));
        je["copied"] = std::move(copied);
        je["generation"] = e.generation;
        je["binding"] = e.binding;
        events.push_back(std::move(je));
    }
    doc["events"] = std::move(events);

    ordered_json edges = ordered_json::array();
    for (const auto& [from, to, level] : edge_triples(g)) {
        ordered_json je;
        je["from"] = from;
        je["to"] = to;
        je["level"] = level;
        edges.push_back(std::move(je));
    }
    doc["edges"] = std::move(edges);

    ordered_json cells;
    ordered_json squares = ordered_json::array();
    if (artifacts.squares)
        for (const Square& s : *artifacts.squares)
            squares.push_back(ordered_json::array({s.a, s.b, s.c, s.d}));
    cells["squares"] = std::move(squares);
    ordered_json cubes = ordered_json::array();
    if (artifacts.cubes)
        for (const Cube& c : *artifacts.cubes) {
            ordered_json corners = ordered_json::array();
            for (const std::string& k : c.corners) corners.push_back(k);
            cubes.push_back(std::move(corners));
        }
    cells["cubes"] = std::move(cubes);
    doc["cells"] = std::move(cells);

    ordered_json reports = ordered_json::object();
    for (const auto& [name, body] : artifacts.reports) reports[name] = body;
    doc["reports"] = std::move(reports);
    return doc;
}

ImportedDocument from_json(const nlohmann::ordered_json& doc) {
    if (doc.at("schema_version").get<int>() != 1)
        throw Error("unsupported schema version");
    ImportedDocument imported;
    MultiwayGraph& g = imported.graph;
    g.substrate = substrate_from_name(doc.at("substrate").get<std::string>());
    g.steps = doc.at("steps").get<std::uint32_t>();
    g.initial_keys = doc.at("initial").get<std::vector<std::string>>();
    for (const auto& jr : doc.at("rules")) g.tower.push_back(rule_from_json(jr, g.substrate));

    StateIndex index = 0;
    for (const auto& js : doc.at("states")) {
        StoredState s;
        s.index = index++;
        s.key = js.at("key").get<std::string>();
        s.generation = js.at("generation").get<std::uint32_t>();
        s.instance = parse_state_text(g.substrate, js.at("text").get<std::string>());
        auto tokens = js.at("tokens").get<std::vector<TokenId>>();
        std::visit([&](auto& payload) { payload.tokens = tokens; }, s.instance);
        g.states.push_back(std::move(s));
    }

    for (const auto& je : doc.at("events")) {
        Event e;
        e.id = je.at("id").get<EventId>();
        e.rule = je.at("rule").get<RuleId>();
        e.level = je.at("level").get<int>();
        e.source_key = je.at("source").get<std::string>();
        e.target_key = je.at("target").get<std::string>();
        e.consumed = je.at("consumed").get<std::vector<TokenId>>();
        e.produced = je.at("produced").get<std::vector<TokenId>>();
        for (const auto& pair : je.at("copied"))
            e.copied.emplace_back(pair.at(0).get<TokenId>(), pair.at(1).get<TokenId>());
        e.generation = je.at("generation").get<std::uint32_t>();
        e.binding = je.at("binding").get<std::string>();
        g.events.push_back(std::move(e));
    }
    g.rebuild_adjacency();

    const auto& cells = doc.at("cells");
    for (const auto& js : cells.at("squares")) {
        Square s;
        s.a = js.at(0).get<std::string>();
        s.b = js.at(1).get<std::string>();
        s.c = js.at(2).get<std::string>();
        s.d = js.at(3).get<std::string>();
        imported.squares.push_back(std::move(s));
    }
    for (const auto& jc : cells.at("cubes")) {
        Cube c;
        for (std::size_t i = 0; i < 8; ++i) c.corners[i] = jc.at(i).get<std::string>();
        imported.cubes.push_back(std::move(c));
    }
    imported.reports = doc.at("reports");
    return imported;
}

}  // namespace multiway
