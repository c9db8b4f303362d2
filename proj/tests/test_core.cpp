#include "doctest.h"

#include <algorithm>
#include <set>

#include "multiway/core.hpp"

using namespace multiway;

namespace {

Rule string_rule(RuleId id, const char* lhs, const char* rhs, int level = 0,
                 bool anchored = false) {
    Rule r;
    r.id = id;
    r.level = level;
    r.anchored = anchored;
    r.substrate = Substrate::String;
    r.pattern = StringRulePattern{lhs, rhs};
    return r;
}

Rule graph_rule(RuleId id, const char* lhs, const char* rhs) {
    Rule r;
    r.id = id;
    r.substrate = Substrate::Hypergraph;
    HyperRulePattern p;
    // tiny builder: "x,y;y,z" -> two binary edges; letters are variables,
    // digits literals
    auto parse_side = [](const char* text, PatternGraph& out) {
        out.edges.clear();
        std::string s(text);
        PatternEdge cur;
        for (std::size_t i = 0; i <= s.size(); ++i) {
            if (i == s.size() || s[i] == ';') {
                if (!cur.empty()) out.edges.push_back(cur);
                cur.clear();
            } else if (s[i] != ',') {
                PatternAtom a;
                if (s[i] >= '0' && s[i] <= '9') {
                    a.literal = static_cast<VertexId>(s[i] - '0');
                } else {
                    a.is_var = true;
                    a.var = std::string(1, s[i]);
                }
                cur.push_back(a);
            }
        }
    };
    parse_side(lhs, p.lhs);
    parse_side(rhs, p.rhs);
    r.pattern = p;
    return r;
}

}  // namespace

TEST_CASE("state text parses and prints across substrates") {
    State s = parse_state_text(Substrate::String, "ABBA");
    CHECK(state_text(s) == "ABBA");
    CHECK(token_count(s) == 4);
    CHECK(substrate_of(s) == Substrate::String);

    State g = parse_state_text(Substrate::Hypergraph, "{{0,0},{0,0}}");
    CHECK(state_text(g) == "{{0,0},{0,0}}");
    CHECK(token_count(g) == 2);

    State t = parse_state_text(Substrate::Term, "g[a,inv[a]]");
    CHECK(state_text(t) == "g[a,inv[a]]");
    CHECK(token_count(t) == 4);
}

TEST_CASE("canonical keys carry a substrate prefix") {
    State s = parse_state_text(Substrate::String, "AA");
    CHECK(canonical_key(s) == "s:AA");
    State t = parse_state_text(Substrate::Term, "g[a,e]");
    CHECK(canonical_key(t) == "t:g[a,e]");
    State g = parse_state_text(Substrate::Hypergraph, "{{1,2}}");
    CHECK(canonical_key(g).rfind("h:", 0) == 0);
}

TEST_CASE("hypergraph keys are isomorphism classes") {
    State a = parse_state_text(Substrate::Hypergraph, "{{1,2},{2,3}}");
    State b = parse_state_text(Substrate::Hypergraph, "{{7,5},{5,9}}");
    State c = parse_state_text(Substrate::Hypergraph, "{{1,2},{3,2}}");
    CHECK(canonical_key(a) == canonical_key(b));
    CHECK(canonical_key(a) != canonical_key(c));
}

TEST_CASE("all_matches lists rules in id order and positions in order") {
    State s = parse_state_text(Substrate::String, "ABA");
    std::vector<Rule> rules{string_rule(0, "A", "AB"), string_rule(1, "AB", "A")};
    auto ms = all_matches(s, rules);
    REQUIRE(ms.size() == 3);
    CHECK(ms[0].rule == 0);
    CHECK(std::get<StringMatch>(ms[0].where).pos == 0);
    CHECK(ms[1].rule == 0);
    CHECK(std::get<StringMatch>(ms[1].where).pos == 2);
    CHECK(ms[2].rule == 1);
    CHECK(std::get<StringMatch>(ms[2].where).pos == 0);
}

TEST_CASE("anchored rules only see whole states") {
    State s = parse_state_text(Substrate::String, "AAB");
    std::vector<Rule> rules{string_rule(0, "AAB", "ABA", 1, true)};
    CHECK(all_matches(s, rules).size() == 1);
    State longer = parse_state_text(Substrate::String, "AABX");
    CHECK(all_matches(longer, rules).empty());
}

TEST_CASE("string successors rewrite at each occurrence") {
    State s = parse_state_text(Substrate::String, "AA");
    TokenId next = 2;  // initial tokens are 0,1
    auto succ = successors(s, {string_rule(0, "A", "AB")}, &next);
    REQUIRE(succ.size() == 2);

    CHECK(succ[0].event.source_key == "s:AA");
    CHECK(succ[0].event.target_key == "s:ABA");
    CHECK(succ[0].event.consumed == std::vector<TokenId>{0});
    CHECK(succ[0].event.produced == std::vector<TokenId>{2, 3});
    REQUIRE(succ[0].event.copied.size() == 1);
    CHECK(succ[0].event.copied[0].first == 1);
    CHECK(succ[0].event.copied[0].second == 1);

    CHECK(succ[1].event.target_key == "s:AAB");
    CHECK(succ[1].event.consumed == std::vector<TokenId>{1});
    CHECK(succ[1].event.produced == std::vector<TokenId>{4, 5});

    // persistent ids: target instance tokens are source-kept plus fresh
    const auto& aba = std::get<StringState>(succ[0].state);
    CHECK(aba.chars == "ABA");
    CHECK(aba.tokens == std::vector<TokenId>{2, 3, 1});
    CHECK(next == 6);
}

TEST_CASE("event ids number successors and binding strings differ per match") {
    State s = parse_state_text(Substrate::Hypergraph, "{{0,0},{0,0}}");
    TokenId next = 2;
    auto succ = successors(
        s, {graph_rule(0, "x,y;y,z", "w,y;y,z;z,w;x,w")}, &next);
    REQUIRE(succ.size() == 4);
    std::set<std::string> bindings;
    for (std::size_t i = 0; i < succ.size(); ++i) {
        CHECK(succ[i].event.id == i);
        bindings.insert(succ[i].event.binding);
    }
    // four distinct assignments, all same canonical target
    CHECK(bindings.size() == 4);
    std::set<std::string> targets;
    for (const auto& sc : succ) targets.insert(sc.event.target_key);
    CHECK(targets.size() == 1);
    for (const auto& sc : succ) {
        CHECK(sc.event.consumed == std::vector<TokenId>{0, 1});
        CHECK(sc.event.produced.size() == 4);
        CHECK(sc.event.copied.empty());
        CHECK(token_count(sc.state) == 4);
    }
    // the canonical target is the four-edge graph from the double self-loop
    State expect = parse_state_text(Substrate::Hypergraph, "{{1,0},{0,0},{0,1},{0,1}}");
    CHECK(succ[0].event.target_key == canonical_key(expect));
}

TEST_CASE("term successors rewrite subterms with token provenance") {
    State s = parse_state_text(Substrate::Term, "g[a,inv[a]]");
    Rule r;
    r.id = 0;
    r.substrate = Substrate::Term;
    Term x{"x", true, {}};
    Term lhs{"g", false, {x, Term{"inv", false, {x}}}};
    Term rhs{"e", false, {}};
    r.pattern = TermRulePattern{lhs, rhs};
    TokenId next = 4;
    auto succ = successors(s, {r}, &next);
    REQUIRE(succ.size() == 1);
    CHECK(succ[0].event.target_key == "t:e");
    // whole tree consumed, single fresh node
    CHECK(succ[0].event.consumed == std::vector<TokenId>{0, 1, 2, 3});
    CHECK(succ[0].event.produced == std::vector<TokenId>{4});
    CHECK(succ[0].event.copied.empty());
}

TEST_CASE("add_inverses appends reversals and deduplicates structurally") {
    std::vector<Rule> rules{string_rule(0, "A", "AB")};
    auto closed = add_inverses(rules);
    REQUIRE(closed.size() == 2);
    CHECK(rule_text(closed[1]) == "AB -> A");
    CHECK(closed[1].id == 1);

    // closing twice adds nothing
    auto twice = add_inverses(closed);
    CHECK(twice.size() == 2);

    // a self-inverse pair stays as-is
    std::vector<Rule> pair{string_rule(0, "AB", "BA"), string_rule(1, "BA", "AB")};
    CHECK(add_inverses(pair).size() == 2);
}

TEST_CASE("non-invertible rules are rejected") {
    std::vector<Rule> bad{string_rule(0, "A", "")};
    CHECK_THROWS_AS(add_inverses(bad), NonInvertibleRule);

    Rule t;
    t.id = 0;
    t.substrate = Substrate::Term;
    Term x{"x", true, {}};
    t.pattern = TermRulePattern{Term{"inv", false, {x}}, x};
    CHECK_THROWS_AS(add_inverses({t}), NonInvertibleRule);
}

TEST_CASE("hypergraph reversal turns fresh rhs variables into matched ones") {
    auto r = graph_rule(0, "x,y;y,z", "x,w");
    auto closed = add_inverses({r});
    REQUIRE(closed.size() == 2);
    const auto& rev = std::get<HyperRulePattern>(closed[1].pattern);
    REQUIRE(rev.lhs.edges.size() == 1);
    CHECK(rev.lhs.edges[0][1].var == "w");
    REQUIRE(rev.rhs.edges.size() == 2);
}

TEST_CASE("rule text round trip") {
    CHECK(rule_text(string_rule(0, "A", "AB")) == "A -> AB");
    CHECK(rule_text(string_rule(3, "AAB", "ABA", 1, true)) == "AAB -> ABA @level 1");
    auto g = graph_rule(0, "x,y;y,z", "x,w");
    CHECK(rule_text(g) == "{{x,y},{y,z}} -> {{x,w}}");
}

TEST_CASE("substrate mismatch between rule and state is an error") {
    State s = parse_state_text(Substrate::String, "AA");
    std::vector<Rule> rules{graph_rule(0, "x,y", "y,x")};
    CHECK_THROWS_AS(all_matches(s, rules), SubstrateMismatch);
}

TEST_CASE("parse_state_text rejects malformed text") {
    CHECK_THROWS_AS(parse_state_text(Substrate::Hypergraph, "{{1,2}"), Error);
    CHECK_THROWS_AS(parse_state_text(Substrate::Term, "g[a"), Error);
    CHECK_THROWS_AS(parse_state_text(Substrate::Hypergraph, "{{x,y}}"), Error);
}
