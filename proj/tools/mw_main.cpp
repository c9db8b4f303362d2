#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "multiway/completion.hpp"
#include "multiway/export.hpp"
#include "multiway/rulefile.hpp"

namespace mw = multiway;
using nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::string rules_path;
    std::uint32_t steps = 4;
    std::uint32_t max_states = 0;
    unsigned threads = 1;
    std::string format = "json";
    std::string out_path;
    bool unanchored = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-r,--rules", o.rules_path, "rule file")->required();
    cmd->add_option("--steps", o.steps, "evolution steps");
    cmd->add_option("--max-states", o.max_states,
                    "state cap; 0 reads MULTIWAY_MAX_STATES or uses 100000");
    cmd->add_option("--threads", o.threads, "worker threads");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "dot"}));
    cmd->add_option("--out", o.out_path, "write output to this file instead of stdout");
    cmd->add_flag("--unanchored", o.unanchored,
                  "match level >= 1 rules anywhere, not whole-state");
}

struct Loaded {
    mw::RuleFile file;
    std::vector<mw::State> initials;
};

Loaded load_rules_only(const CommonOpts& o) {
    Loaded l;
    l.file = mw::load_rule_file(o.rules_path);
    if (o.unanchored)
        for (mw::Rule& r : l.file.rules)
            if (r.level >= 1) r.anchored = false;
    l.initials = mw::initial_states(l.file);
    return l;
}

Loaded load(const CommonOpts& o) {
    Loaded l = load_rules_only(o);
    if (l.initials.empty()) throw mw::Error("rule file declares no initial states");
    return l;
}

mw::EvolveOptions evolve_opts(const CommonOpts& o) { return {o.max_states, o.threads}; }

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw mw::Error("cannot open output file: " + out_path);
    out << text;
}

std::string render(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json event_json(const mw::Event& e) {
    ordered_json je;
    je["id"] = e.id;
    je["rule"] = e.rule;
    je["level"] = e.level;
    je["source"] = e.source_key;
    je["target"] = e.target_key;
    je["consumed"] = e.consumed;
    je["produced"] = e.produced;
    ordered_json copied = ordered_json::array();
    for (const auto& [src, tgt] : e.copied) copied.push_back(ordered_json::array({src, tgt}));
    je["copied"] = std::move(copied);
    je["binding"] = e.binding;
    return je;
}

ordered_json network_json(const mw::CausalNetwork& net, const std::vector<mw::Event>& events,
                          const char* mode) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["mode"] = mode;
    doc["events"] = net.events;
    ordered_json edges = ordered_json::array();
    for (const auto& e : net.edges) {
        ordered_json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["witness"] = e.witness;
        edges.push_back(std::move(je));
    }
    doc["edges"] = std::move(edges);
    doc["certificate"] = mw::causal_certificate(net, events, true);
    return doc;
}

ordered_json closure_json(const mw::ClosureReport& rep) {
    ordered_json j;
    j["dimension"] = rep.dimension;
    j["cells_checked"] = rep.cells_checked;
    j["violations"] = rep.violations;
    j["closed"] = rep.closed();
    return j;
}

std::vector<std::string> keys_from_texts(mw::Substrate sub,
                                         const std::vector<std::string>& texts) {
    std::vector<std::string> keys;
    keys.reserve(texts.size());
    for (const std::string& t : texts)
        keys.push_back(mw::canonical_key(mw::parse_state_text(sub, t)));
    return keys;
}

int run_evolve(const CommonOpts& o) {
    Loaded l = load(o);
    mw::MultiwayGraph g = mw::evolve(l.initials, l.file.rules, o.steps, evolve_opts(o));
    emit(o.format == "dot" ? mw::to_dot(g) : render(mw::to_json(g)), o.out_path);
    return 0;
}

int run_singleway(const CommonOpts& o, const std::string& strategy_name,
                  std::uint64_t seed) {
    Loaded l = load(o);
    mw::Strategy strategy;
    strategy.kind = strategy_name == "simultaneous" ? mw::Strategy::Kind::AllNonOverlapping
                                                    : mw::Strategy::Kind::FirstMatch;
    strategy.seed = seed;
    mw::SinglewayRun run =
        mw::singleway_evolve(l.initials[0], l.file.rules, strategy, o.steps);
    if (o.format == "dot") {
        std::ostringstream out;
        out << "digraph singleway {\n  rankdir=TB;\n  node [shape=box];\n";
        for (std::size_t i = 0; i < run.steps.size(); ++i)
            out << "  \"n" << i << "\" [label=\"" << mw::state_text(run.steps[i].state)
                << "\"];\n";
        for (std::size_t i = 1; i < run.steps.size(); ++i) {
            out << "  \"n" << i - 1 << "\" -> \"n" << i << "\" [color=gray, label=\"";
            const auto& evs = run.steps[i].events;
            for (std::size_t k = 0; k < evs.size(); ++k)
                out << (k ? "," : "") << "r" << evs[k].rule;
            out << "\"];\n";
        }
        out << "}\n";
        emit(out.str(), o.out_path);
        return 0;
    }
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["substrate"] = mw::substrate_name(l.file.substrate);
    doc["strategy"] = strategy_name;
    doc["seed"] = seed;
    ordered_json trajectory = ordered_json::array();
    for (const auto& step : run.steps) {
        ordered_json js;
        js["state"] = mw::state_text(step.state);
        ordered_json events = ordered_json::array();
        for (const mw::Event& e : step.events) events.push_back(event_json(e));
        js["events"] = std::move(events);
        trajectory.push_back(std::move(js));
    }
    doc["trajectory"] = std::move(trajectory);
    emit(render(doc), o.out_path);
    return 0;
}

int run_causal(const CommonOpts& o, bool singleway, bool invariance, bool overlay,
               std::uint32_t depth, std::size_t path_cap, bool unlabeled) {
    Loaded l = load(o);
    if (invariance) {
        mw::InvarianceReport rep = mw::causal_invariance_verdict(
            l.initials[0], l.file.rules, depth, path_cap, !unlabeled);
        ordered_json doc;
        doc["schema_version"] = 1;
        doc["report"] = "causal_invariance";
        const char* verdict = rep.verdict == mw::InvarianceReport::Verdict::True ? "True"
                              : rep.verdict == mw::InvarianceReport::Verdict::False
                                  ? "False"
                                  : "Inconclusive";
        doc["verdict"] = verdict;
        doc["paths_enumerated"] = rep.paths_enumerated;
        doc["depth"] = rep.depth;
        doc["labeled"] = rep.labeled;
        doc["path_cap_exceeded"] = rep.path_cap_exceeded;
        doc["witness_pair"] = rep.witness_pair
                                  ? ordered_json::array({rep.witness_pair->first,
                                                         rep.witness_pair->second})
                                  : ordered_json();
        doc["certificate"] = rep.certificate;
        emit(render(doc), o.out_path);
        return rep.verdict == mw::InvarianceReport::Verdict::Inconclusive ? 2 : 0;
    }
    if (singleway) {
        mw::SinglewayRun run =
            mw::singleway_evolve(l.initials[0], l.file.rules, mw::Strategy{}, o.steps);
        std::vector<mw::Event> events = run.all_events();
        mw::CausalNetwork net = mw::build_causal_network(events);
        emit(o.format == "dot" ? mw::to_dot(net)
                               : render(network_json(net, events, "singleway")),
             o.out_path);
        return 0;
    }
    mw::MultiwayGraph g = mw::evolve(l.initials, l.file.rules, o.steps, evolve_opts(o));
    mw::CausalNetwork net = mw::multiway_causal_network(g);
    if (o.format == "dot") {
        if (overlay) {
            mw::ExportArtifacts artifacts;
            artifacts.causal = &net;
            emit(mw::to_dot(g, artifacts), o.out_path);
        } else {
            emit(mw::to_dot(net), o.out_path);
        }
        return 0;
    }
    emit(render(network_json(net, g.events, "multiway")), o.out_path);
    return 0;
}

int run_branchial(const CommonOpts& o, int slice, std::uint32_t ancestor_depth) {
    Loaded l = load(o);
    mw::MultiwayGraph g = mw::evolve(l.initials, l.file.rules, o.steps, evolve_opts(o));
    mw::Foliation fol = mw::foliate(g);
    std::vector<std::size_t> picks;
    if (slice >= 0)
        picks.push_back(static_cast<std::size_t>(slice));
    else
        for (std::size_t i = 0; i < fol.slices.size(); ++i) picks.push_back(i);

    if (o.format == "dot") {
        std::ostringstream out;
        out << "graph branchial {\n  node [shape=box];\n";
        for (std::size_t i : picks) {
            mw::BranchialGraph b = mw::branchial_graph(g, fol, i, ancestor_depth);
            for (const std::string& v : b.vertices)
                out << "  \"" << v << "\";\n";
            for (const auto& e : b.edges)
                out << "  \"" << e.a << "\" -- \"" << e.b << "\" [label=\"" << e.weight
                    << "\"];\n";
        }
        out << "}\n";
        emit(out.str(), o.out_path);
        return 0;
    }
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["substrate"] = mw::substrate_name(g.substrate);
    doc["ancestor_depth"] = ancestor_depth;
    ordered_json slices = ordered_json::array();
    for (std::size_t i : picks) {
        mw::BranchialGraph b = mw::branchial_graph(g, fol, i, ancestor_depth);
        ordered_json js;
        js["slice"] = i;
        js["states"] = b.vertices;
        ordered_json edges = ordered_json::array();
        for (const auto& e : b.edges) {
            ordered_json je;
            je["a"] = e.a;
            je["b"] = e.b;
            je["weight"] = e.weight;
            edges.push_back(std::move(je));
        }
        js["edges"] = std::move(edges);
        slices.push_back(std::move(js));
    }
    doc["slices"] = std::move(slices);
    emit(render(doc), o.out_path);
    return 0;
}

int run_homotopy_synth(const CommonOpts& o, const std::vector<std::string>& path1,
                       const std::vector<std::string>& path2, int level) {
    if (o.format == "dot") throw mw::Error("rule synthesis has no dot form");
    Loaded l = load(o);
    mw::MultiwayGraph g = mw::evolve(l.initials, l.file.rules, o.steps, evolve_opts(o));
    auto rules = mw::synthesize_homotopy_rules(g, keys_from_texts(g.substrate, path1),
                                               keys_from_texts(g.substrate, path2), level,
                                               !o.unanchored);
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["substrate"] = mw::substrate_name(g.substrate);
    doc["level"] = level;
    ordered_json texts = ordered_json::array();
    for (const mw::Rule& r : rules) texts.push_back(mw::rule_text(r));
    doc["rules"] = std::move(texts);
    emit(render(doc), o.out_path);
    return 0;
}

int run_homotopy_induce(const CommonOpts& o, const std::vector<std::string>& path1,
                        const std::vector<std::string>& path2, int level) {
    Loaded l = load(o);
    mw::MultiwayGraph g = mw::evolve(l.initials, l.file.rules, o.steps, evolve_opts(o));
    auto rules = mw::synthesize_homotopy_rules(g, keys_from_texts(g.substrate, path1),
                                               keys_from_texts(g.substrate, path2), level,
                                               !o.unanchored);
    mw::MultiwayGraph induced = mw::induce(g, rules, o.steps, evolve_opts(o));
    auto squares = mw::find_squares(induced);
    auto cubes = mw::find_cubes(induced);
    mw::ExportArtifacts artifacts;
    artifacts.squares = &squares;
    artifacts.cubes = &cubes;
    artifacts.reports.emplace_back("closure2",
                                   closure_json(mw::check_composition_closure(induced, 2)));
    emit(o.format == "dot" ? mw::to_dot(induced, artifacts)
                           : render(mw::to_json(induced, artifacts)),
         o.out_path);
    return 0;
}

int run_homotopy_cells(const CommonOpts& o) {
    Loaded l = load(o);
    mw::MultiwayGraph g = mw::evolve(l.initials, l.file.rules, o.steps, evolve_opts(o));
    auto squares = mw::find_squares(g);
    auto cubes = mw::find_cubes(g);
    mw::ExportArtifacts artifacts;
    artifacts.squares = &squares;
    artifacts.cubes = &cubes;
    for (int dim = 1; dim <= 3; ++dim)
        artifacts.reports.emplace_back("closure" + std::to_string(dim),
                                       closure_json(mw::check_composition_closure(g, dim)));
    emit(o.format == "dot" ? mw::to_dot(g, artifacts) : render(mw::to_json(g, artifacts)),
         o.out_path);
    return 0;
}

int run_complete(const CommonOpts& o, std::size_t max_rules, std::size_t max_iterations,
                 bool no_interreduce, bool observer) {
    if (o.format == "dot") throw mw::Error("completion has no dot form");
    Loaded l = load_rules_only(o);
    mw::ReductionOrdering ordering;
    if (l.file.substrate == mw::Substrate::String) {
        ordering.kind = mw::ReductionOrdering::Kind::Shortlex;
        if (l.file.alphabet) {
            ordering.alphabet = *l.file.alphabet;
        } else {
            std::set<char> seen;
            for (const mw::Rule& r : l.file.rules) {
                const auto& p = std::get<mw::StringRulePattern>(r.pattern);
                seen.insert(p.lhs.begin(), p.lhs.end());
                seen.insert(p.rhs.begin(), p.rhs.end());
            }
            ordering.alphabet.assign(seen.begin(), seen.end());
        }
    } else {
        ordering.kind = mw::ReductionOrdering::Kind::Lpo;
        ordering.precedence = l.file.precedence;
    }

    mw::CompletionResult res = mw::knuth_bendix(l.file.rules, ordering, max_rules,
                                                max_iterations, !no_interreduce);
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["substrate"] = mw::substrate_name(l.file.substrate);
    doc["status"] = res.status == mw::CompletionResult::Status::Completed ? "completed"
                    : res.status == mw::CompletionResult::Status::Diverged ? "diverged"
                                                                           : "order_failure";
    doc["detail"] = res.detail;
    ordered_json ordering_json;
    if (ordering.kind == mw::ReductionOrdering::Kind::Shortlex) {
        ordering_json["kind"] = "shortlex";
        ordering_json["alphabet"] = ordering.alphabet;
    } else {
        ordering_json["kind"] = "lpo";
        ordering_json["precedence"] = ordering.precedence;
    }
    doc["ordering"] = std::move(ordering_json);
    ordered_json rules = ordered_json::array();
    for (const mw::Rule& r : res.rules) rules.push_back(mw::rule_text(r));
    doc["rules"] = std::move(rules);
    ordered_json added = ordered_json::array();
    for (const auto& a : res.added) {
        ordered_json ja;
        ja["rule"] = mw::rule_text(a.rule);
        ja["peak"] = a.peak_text;
        ja["left"] = a.left_text;
        ja["right"] = a.right_text;
        added.push_back(std::move(ja));
    }
    doc["added"] = std::move(added);

    if (observer) {
        if (l.initials.empty())
            throw mw::Error("observer comparison needs an init state in the rule file");
        mw::ObserverReport rep =
            mw::observer_report(l.initials[0], l.file.rules, res.rules, o.steps);
        auto stats_json = [](const std::vector<mw::ObserverReport::SliceStat>& stats) {
            ordered_json arr = ordered_json::array();
            for (const auto& s : stats) {
                ordered_json js;
                js["slice"] = s.slice;
                js["states"] = s.states;
                js["branchial_edges"] = s.branchial_edges;
                arr.push_back(std::move(js));
            }
            return arr;
        };
        ordered_json obs;
        obs["before"] = stats_json(rep.before);
        obs["after"] = stats_json(rep.after);
        doc["observer"] = std::move(obs);
    }
    emit(render(doc), o.out_path);
    return 0;
}

int run_closure(const std::string& preset, const std::string& state_text,
                const std::string& format, const std::string& out_path) {
    mw::State st = mw::parse_state_text(mw::Substrate::Hypergraph, state_text);
    const mw::Hypergraph& input = std::get<mw::GraphState>(st).graph;
    mw::Hypergraph result =
        preset == "categorify" ? mw::categorify(input) : mw::groupoidify(input);
    if (format == "dot") {
        mw::Hypergraph sorted = result;
        std::sort(sorted.edges.begin(), sorted.edges.end());
        std::ostringstream out;
        out << "digraph closure {\n";
        for (const auto& e : sorted.edges) {
            if (e.size() == 2)
                out << "  \"" << e[0] << "\" -> \"" << e[1] << "\";\n";
            else if (e.size() == 1)
                out << "  \"" << e[0] << "\";\n";
        }
        out << "}\n";
        emit(out.str(), out_path);
        return 0;
    }
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["preset"] = preset;
    doc["input"] = mw::to_text(input);
    doc["result"] = mw::to_text(result);
    doc["input_edges"] = input.edges.size();
    doc["result_edges"] = result.edges.size();
    emit(render(doc), out_path);
    return 0;
}

int run_export(const std::string& in_path, const std::string& format,
               const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw mw::Error("cannot open input file: " + in_path);
    ordered_json doc = ordered_json::parse(in);
    mw::ImportedDocument imported = mw::from_json(doc);
    mw::ExportArtifacts artifacts;
    artifacts.squares = &imported.squares;
    artifacts.cubes = &imported.cubes;
    for (const auto& [name, body] : imported.reports.items())
        artifacts.reports.emplace_back(name, body);
    emit(format == "dot" ? mw::to_dot(imported.graph, artifacts)
                         : render(mw::to_json(imported.graph, artifacts)),
         out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiway rewriting workbench"};
    app.require_subcommand(1);

    CommonOpts evolve_opts_v;
    CLI::App* evolve_cmd = app.add_subcommand("evolve", "breadth-first multiway evolution");
    add_common(evolve_cmd, evolve_opts_v);

    CommonOpts single_opts;
    std::string strategy = "first";
    std::uint64_t seed = 0;
    CLI::App* single_cmd = app.add_subcommand("singleway", "one evolution trajectory");
    add_common(single_cmd, single_opts);
    single_cmd->add_option("--strategy", strategy, "match strategy")
        ->check(CLI::IsMember({"first", "simultaneous"}));
    single_cmd->add_option("--seed", seed, "strategy seed");

    CommonOpts causal_opts;
    bool causal_singleway = false, invariance = false, overlay = false, unlabeled = false;
    std::uint32_t depth = 3;
    std::size_t path_cap = 4096;
    CLI::App* causal_cmd = app.add_subcommand("causal", "causal network and invariance");
    add_common(causal_cmd, causal_opts);
    causal_cmd->add_flag("--singleway", causal_singleway,
                         "network of one first-match trajectory");
    causal_cmd->add_flag("--invariance", invariance, "bounded causal invariance check");
    causal_cmd->add_flag("--overlay", overlay, "dot: draw events on the state graph");
    causal_cmd->add_flag("--unlabeled", unlabeled, "compare certificates without rule ids");
    causal_cmd->add_option("--depth", depth, "invariance path depth");
    causal_cmd->add_option("--path-cap", path_cap, "invariance path cap");

    CommonOpts branchial_opts;
    int slice = -1;
    std::uint32_t ancestor_depth = 1;
    CLI::App* branchial_cmd = app.add_subcommand("branchial", "branchial slice graphs");
    add_common(branchial_cmd, branchial_opts);
    branchial_cmd->add_option("--slice", slice, "only this slice index");
    branchial_cmd->add_option("--ancestor-depth", ancestor_depth,
                              "shared-ancestor search depth");

    CLI::App* homotopy_cmd = app.add_subcommand("homotopy", "higher-level rule workflows");
    homotopy_cmd->require_subcommand(1);
    CommonOpts synth_opts;
    std::vector<std::string> path1, path2;
    int level = 1;
    CLI::App* synth_cmd = homotopy_cmd->add_subcommand(
        "synth", "pair two paths into whole-state rules");
    add_common(synth_cmd, synth_opts);
    synth_cmd->add_option("--path1", path1, "first path, one state text per use")
        ->required();
    synth_cmd->add_option("--path2", path2, "second path, one state text per use")
        ->required();
    synth_cmd->add_option("--level", level, "level of the synthesized rules");
    CommonOpts induce_opts;
    std::vector<std::string> ipath1, ipath2;
    int ilevel = 1;
    CLI::App* induce_cmd = homotopy_cmd->add_subcommand(
        "induce", "synthesize, extend the tower, re-evolve");
    add_common(induce_cmd, induce_opts);
    induce_cmd->add_option("--path1", ipath1, "first path, one state text per use")
        ->required();
    induce_cmd->add_option("--path2", ipath2, "second path, one state text per use")
        ->required();
    induce_cmd->add_option("--level", ilevel, "level of the synthesized rules");
    CommonOpts cells_opts;
    CLI::App* cells_cmd =
        homotopy_cmd->add_subcommand("cells", "squares, cubes, and pasting closure");
    add_common(cells_cmd, cells_opts);

    CommonOpts complete_opts;
    std::size_t max_rules = 64, max_iterations = 512;
    bool no_interreduce = false, observer = false;
    CLI::App* complete_cmd = app.add_subcommand("complete", "Knuth-Bendix completion");
    add_common(complete_cmd, complete_opts);
    complete_cmd->add_option("--max-rules", max_rules, "divergence cap on rules");
    complete_cmd->add_option("--max-iterations", max_iterations,
                             "divergence cap on iterations");
    complete_cmd->add_flag("--no-interreduce", no_interreduce, "keep subsumed rules");
    complete_cmd->add_flag("--observer", observer,
                           "tabulate branchial slices before and after");

    std::string preset, closure_state, closure_format = "json", closure_out;
    CLI::App* closure_cmd = app.add_subcommand("closure", "hypergraph closure presets");
    closure_cmd->add_option("--preset", preset, "closure preset")
        ->required()
        ->check(CLI::IsMember({"categorify", "groupoidify"}));
    closure_cmd->add_option("--state", closure_state, "hypergraph text, e.g. {{1,2},{2,3}}")
        ->required();
    closure_cmd->add_option("--format", closure_format, "output format")
        ->check(CLI::IsMember({"json", "dot"}));
    closure_cmd->add_option("--out", closure_out, "write output here");

    std::string export_in, export_format = "json", export_out;
    CLI::App* export_cmd = app.add_subcommand("export", "re-render a saved document");
    export_cmd->add_option("--in", export_in, "schema v1 json document")->required();
    export_cmd->add_option("--format", export_format, "output format")
        ->check(CLI::IsMember({"json", "dot"}));
    export_cmd->add_option("--out", export_out, "write output here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*evolve_cmd) return run_evolve(evolve_opts_v);
        if (*single_cmd) return run_singleway(single_opts, strategy, seed);
        if (*causal_cmd)
            return run_causal(causal_opts, causal_singleway, invariance, overlay, depth,
                              path_cap, unlabeled);
        if (*branchial_cmd) return run_branchial(branchial_opts, slice, ancestor_depth);
        if (*synth_cmd) return run_homotopy_synth(synth_opts, path1, path2, level);
        if (*induce_cmd) return run_homotopy_induce(induce_opts, ipath1, ipath2, ilevel);
        if (*cells_cmd) return run_homotopy_cells(cells_opts);
        if (*complete_cmd)
            return run_complete(complete_opts, max_rules, max_iterations, no_interreduce,
                                observer);
        if (*closure_cmd)
            return run_closure(preset, closure_state, closure_format, closure_out);
        if (*export_cmd) return run_export(export_in, export_format, export_out);
    } catch (const mw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
