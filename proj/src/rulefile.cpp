#include "multiway/rulefile.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "parse_detail.hpp"

namespace multiway {

using detail::parse_pattern_graph_text;
using detail::parse_term_text;
using detail::trim;

namespace {

struct LinePos {
    std::size_t line;
    std::size_t col;  // 0-based offset into the raw line
};

std::size_t first_content(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    return b == std::string::npos ? 0 : b;
}

// Splits on whitespace, remembering each token's column.
std::vector<std::pair<std::string, std::size_t>> tokenize(const std::string& s,
                                                          std::size_t base) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size()) break;
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        out.emplace_back(s.substr(start, i - start), base + start);
    }
    return out;
}

void check_term_symbols(const Term& t, const RuleFile& f,
                        const std::map<std::string, std::size_t>& arity) {
    if (t.is_var) return;
    auto it = arity.find(t.head);
    if (it == arity.end())
        throw SemanticError("symbol '" + t.head + "' not in the signature");
    if (it->second != t.args.size())
        throw SemanticError("symbol '" + t.head + "' declared with arity " +
                            std::to_string(it->second) + ", used with " +
                            std::to_string(t.args.size()));
    for (const Term& a : t.args) check_term_symbols(a, f, arity);
}

void collect_term_vars(const Term& t, std::set<std::string>& out) {
    if (t.is_var) {
        out.insert(t.head);
        return;
    }
    for (const Term& a : t.args) collect_term_vars(a, out);
}

}  // namespace

RuleFile parse_rule_file(const std::string& text) {
    RuleFile f;
    bool rules_started = false;
    std::set<std::string> var_set;
    RuleId next_id = 0;

    std::istringstream stream(text);
    std::string raw;
    std::size_t line_no = 0;
    std::vector<std::pair<std::string, LinePos>> init_texts;

    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;

        std::size_t arrow = line.find("->");
        if (arrow == std::string::npos) {
            std::size_t colon = line.find(':');
            if (colon == std::string::npos)
                throw ParseError("expected a section or a rule", line_no,
                                 first_content(line) + 1);
            std::string name = trim(line.substr(0, colon));
            std::string value = line.substr(colon + 1);
            std::size_t value_col = colon + 1 + first_content(value);
            std::string value_trimmed = trim(value);
            if (rules_started)
                throw ParseError("section '" + name + "' after the first rule", line_no,
                                 first_content(line) + 1);

            if (name == "substrate") {
                if (value_trimmed == "string")
                    f.substrate = Substrate::String;
                else if (value_trimmed == "hypergraph")
                    f.substrate = Substrate::Hypergraph;
                else if (value_trimmed == "term")
                    f.substrate = Substrate::Term;
                else
                    throw ParseError("unknown substrate '" + value_trimmed + "'", line_no,
                                     value_col + 1);
            } else if (name == "alphabet") {
                std::string symbols;
                for (char c : value_trimmed)
                    if (!std::isspace(static_cast<unsigned char>(c))) symbols.push_back(c);
                if (symbols.empty())
                    throw ParseError("empty alphabet", line_no, value_col + 1);
                std::set<char> seen;
                for (char c : symbols)
                    if (!seen.insert(c).second)
                        throw SemanticError(std::string("duplicate alphabet symbol '") + c +
                                            "'");
                f.alphabet = symbols;
            } else if (name == "signature") {
                for (auto& [tok, col] : tokenize(value, colon + 1)) {
                    std::size_t slash = tok.find('/');
                    if (slash == std::string::npos || slash == 0 || slash + 1 >= tok.size())
                        throw ParseError("signature entry must be name/arity", line_no,
                                         col + 1);
                    std::string sym = tok.substr(0, slash);
                    std::string ar = tok.substr(slash + 1);
                    if (ar.find_first_not_of("0123456789") != std::string::npos)
                        throw ParseError("arity must be a number", line_no,
                                         col + slash + 2);
                    for (auto& [s, a] : f.signature)
                        if (s == sym)
                            throw SemanticError("symbol '" + sym + "' declared twice");
                    f.signature.emplace_back(sym, std::stoull(ar));
                }
            } else if (name == "variables") {
                for (auto& entry : tokenize(value, colon + 1)) {
                    const std::string& tok = entry.first;
                    if (!var_set.insert(tok).second)
                        throw SemanticError("variable '" + tok + "' declared twice");
                    f.variables.push_back(tok);
                }
            } else if (name == "precedence") {
                for (auto& entry : tokenize(value, colon + 1)) {
                    const std::string& tok = entry.first;
                    if (tok == ">") continue;
                    std::string clean = tok;
                    // allow run-together a>b>c
                    std::size_t start = 0;
                    for (;;) {
                        std::size_t gt = clean.find('>', start);
                        std::string piece = clean.substr(start, gt - start);
                        if (!piece.empty()) f.precedence.push_back(piece);
                        if (gt == std::string::npos) break;
                        start = gt + 1;
                    }
                }
            } else if (name == "init") {
                if (value_trimmed.empty())
                    throw ParseError("empty initial state", line_no, value_col + 1);
                init_texts.push_back({value_trimmed, {line_no, value_col}});
            } else {
                throw ParseError("unknown section '" + name + "'", line_no,
                                 first_content(line) + 1);
            }
            continue;
        }

        // Rule line: lhs -> rhs [@level k]
        rules_started = true;
        std::string lhs_text = line.substr(0, arrow);
        std::string rest = line.substr(arrow + 2);
        std::size_t rest_base = arrow + 2;
        int level = 0;
        std::size_t at = rest.find("@level");
        if (at != std::string::npos) {
            std::string level_text = trim(rest.substr(at + 6));
            if (level_text.empty() ||
                level_text.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("@level needs a number", line_no, rest_base + at + 7);
            level = static_cast<int>(std::stoul(level_text));
            rest = rest.substr(0, at);
        }
        std::string rhs_text = rest;

        std::string lhs_trim = trim(lhs_text);
        std::string rhs_trim = trim(rhs_text);
        std::size_t lhs_col = first_content(lhs_text);
        std::size_t rhs_col = rest_base + first_content(rhs_text);
        if (lhs_trim.empty()) throw ParseError("empty lhs", line_no, lhs_col + 1);
        if (rhs_trim.empty()) throw ParseError("empty rhs", line_no, rhs_col + 1);

        Rule r;
        r.id = next_id++;
        r.level = level;
        r.anchored = level >= 1;
        r.substrate = f.substrate;
        switch (f.substrate) {
            case Substrate::String:
                r.pattern = StringRulePattern{lhs_trim, rhs_trim};
                break;
            case Substrate::Hypergraph: {
                HyperRulePattern p;
                p.lhs = parse_pattern_graph_text(lhs_text, line_no, true, 0);
                p.rhs = parse_pattern_graph_text(rhs_text, line_no, true, rest_base);
                if (p.lhs.edges.empty())
                    throw SemanticError("empty hypergraph lhs matches nothing");
                r.pattern = std::move(p);
                break;
            }
            case Substrate::Term: {
                Term lhs = parse_term_text(lhs_text, line_no, &var_set, 0);
                Term rhs = parse_term_text(rhs_text, line_no, &var_set, rest_base);
                if (lhs.is_var)
                    throw SemanticError("bare-variable lhs matches every subterm");
                r.pattern = TermRulePattern{std::move(lhs), std::move(rhs)};
                break;
            }
        }
        f.rules.push_back(std::move(r));
    }

    // Substrate-wide semantic checks.
    if (f.substrate != Substrate::String && f.alphabet)
        throw SemanticError("alphabet section on a non-string substrate");
    if (f.substrate != Substrate::Term) {
        if (!f.signature.empty())
            throw SemanticError("signature section on a non-term substrate");
        if (!f.variables.empty())
            throw SemanticError("variables section on a non-term substrate");
        if (!f.precedence.empty())
            throw SemanticError("precedence section on a non-term substrate");
    }

    if (f.substrate == Substrate::String && f.alphabet) {
        auto check = [&](const std::string& s, const std::string& what) {
            for (char c : s)
                if (f.alphabet->find(c) == std::string::npos)
                    throw SemanticError(std::string("symbol '") + c + "' in " + what +
                                        " is outside the alphabet");
        };
        for (const Rule& r : f.rules) {
            const auto& p = std::get<StringRulePattern>(r.pattern);
            check(p.lhs, "rule lhs");
            check(p.rhs, "rule rhs");
        }
        for (auto& [text, pos] : init_texts) check(text, "an initial state");
    }

    if (f.substrate == Substrate::Term) {
        std::map<std::string, std::size_t> arity;
        for (auto& [sym, ar] : f.signature) {
            if (var_set.count(sym))
                throw SemanticError("'" + sym + "' is both a symbol and a variable");
            arity[sym] = ar;
        }
        if ((!f.rules.empty() || !init_texts.empty()) && arity.empty())
            throw SemanticError("term rules need a signature");
        for (const std::string& sym : f.precedence)
            if (!arity.count(sym))
                throw SemanticError("precedence symbol '" + sym +
                                    "' not in the signature");
        for (const Rule& r : f.rules) {
            const auto& p = std::get<TermRulePattern>(r.pattern);
            check_term_symbols(p.lhs, f, arity);
            check_term_symbols(p.rhs, f, arity);
            std::set<std::string> lv, rv;
            collect_term_vars(p.lhs, lv);
            collect_term_vars(p.rhs, rv);
            for (const std::string& v : rv)
                if (!lv.count(v))
                    throw SemanticError("variable '" + v +
                                        "' appears only on the rhs of " + rule_text(r));
        }
        for (auto& [text, pos] : init_texts) {
            Term t = parse_term_text(text, pos.line, &var_set, pos.col);
            std::set<std::string> tv;
            collect_term_vars(t, tv);
            if (!tv.empty())
                throw SemanticError("variable '" + *tv.begin() + "' in an initial state");
            check_term_symbols(t, f, arity);
        }
    }

    if (f.substrate == Substrate::Hypergraph) {
        for (auto& [text, pos] : init_texts) {
            PatternGraph p = parse_pattern_graph_text(text, pos.line, false, pos.col);
            (void)p;
        }
    }

    for (auto& [text, pos] : init_texts) f.inits.push_back(text);
    return f;
}

RuleFile load_rule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open rule file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rule_file(buf.str());
}

std::string print_rule_file(const RuleFile& f) {
    std::ostringstream out;
    out << "substrate: " << substrate_name(f.substrate) << "\n";
    if (f.alphabet) out << "alphabet: " << *f.alphabet << "\n";
    if (!f.signature.empty()) {
        out << "signature:";
        for (auto& [sym, ar] : f.signature) out << " " << sym << "/" << ar;
        out << "\n";
    }
    if (!f.variables.empty()) {
        out << "variables:";
        for (const std::string& v : f.variables) out << " " << v;
        out << "\n";
    }
    if (!f.precedence.empty()) {
        out << "precedence:";
        for (std::size_t i = 0; i < f.precedence.size(); ++i)
            out << (i ? " > " : " ") << f.precedence[i];
        out << "\n";
    }
    for (const std::string& init : f.inits) out << "init: " << init << "\n";
    for (const Rule& r : f.rules) out << rule_text(r) << "\n";
    return out.str();
}

std::vector<State> initial_states(const RuleFile& f) {
    std::vector<State> out;
    out.reserve(f.inits.size());
    for (const std::string& text : f.inits)
        out.push_back(parse_state_text(f.substrate, text));
    return out;
}

}  // namespace multiway
