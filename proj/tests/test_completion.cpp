#include "doctest.h"

#include <string>
#include <vector>

#include "multiway/completion.hpp"

using namespace multiway;

namespace {

Rule srule(RuleId id, const char* lhs, const char* rhs) {
    Rule r;
    r.id = id;
    r.substrate = Substrate::String;
    r.pattern = StringRulePattern{lhs, rhs};
    return r;
}

Term v(const char* name) { return Term{name, true, {}}; }
Term f(const char* head, std::vector<Term> args) {
    return Term{head, false, std::move(args)};
}

Rule trule(RuleId id, Term lhs, Term rhs) {
    Rule r;
    r.id = id;
    r.substrate = Substrate::Term;
    r.pattern = TermRulePattern{std::move(lhs), std::move(rhs)};
    return r;
}

Rule grule(RuleId id) {
    Rule r;
    r.id = id;
    r.substrate = Substrate::Hypergraph;
    PatternAtom x{true, "x", 0};
    PatternAtom y{true, "y", 0};
    HyperRulePattern p;
    p.lhs.edges = {{x, y}};
    p.rhs.edges = {{y, x}};
    r.pattern = std::move(p);
    return r;
}

ReductionOrdering shortlex_ab() {
    ReductionOrdering o;
    o.kind = ReductionOrdering::Kind::Shortlex;
    o.alphabet = "ab";
    return o;
}

ReductionOrdering lpo(std::vector<std::string> precedence) {
    ReductionOrdering o;
    o.kind = ReductionOrdering::Kind::Lpo;
    o.precedence = std::move(precedence);
    return o;
}

std::vector<std::string> rule_texts(const std::vector<Rule>& rules) {
    std::vector<std::string> out;
    for (const Rule& r : rules) out.push_back(rule_text(r));
    return out;
}

}  // namespace

TEST_CASE("a self-overlapping string rule has one critical pair") {
    auto cps = critical_pairs({srule(0, "aba", "b")});
    REQUIRE(cps.size() == 1);
    const auto& cp = std::get<StringCriticalPair>(cps[0]);
    CHECK(cp.peak == "ababa");
    CHECK(cp.left == "bba");
    CHECK(cp.right == "abb");
    CHECK(cp.rule1 == 0);
    CHECK(cp.rule2 == 0);
    CHECK(cp.overlap_at == 2);
}

TEST_CASE("containments and overlaps are enumerated in rule-id order") {
    auto cps = critical_pairs({srule(0, "aa", "b"), srule(1, "a", "c")});
    REQUIRE(cps.size() == 4);

    const auto& self = std::get<StringCriticalPair>(cps[0]);
    CHECK(self.peak == "aaa");
    CHECK(self.left == "ba");
    CHECK(self.right == "ab");
    CHECK(self.overlap_at == 1);

    const auto& inside0 = std::get<StringCriticalPair>(cps[1]);
    CHECK(inside0.peak == "aa");
    CHECK(inside0.left == "b");
    CHECK(inside0.right == "ca");
    CHECK(inside0.rule1 == 0);
    CHECK(inside0.rule2 == 1);
    CHECK(inside0.overlap_at == 0);

    const auto& inside1 = std::get<StringCriticalPair>(cps[2]);
    CHECK(inside1.right == "ac");
    CHECK(inside1.overlap_at == 1);

    const auto& suffix = std::get<StringCriticalPair>(cps[3]);
    CHECK(suffix.peak == "aa");
    CHECK(suffix.left == "ca");
    CHECK(suffix.right == "b");
    CHECK(suffix.rule1 == 1);
    CHECK(suffix.rule2 == 0);
}

TEST_CASE("a nested unary term rule overlaps itself below the root") {
    Term lhs = f("f", {f("f", {v("x")})});
    auto cps = critical_pairs({trule(0, lhs, v("x"))});
    REQUIRE(cps.size() == 1);
    const auto& cp = std::get<TermCriticalPair>(cps[0]);
    CHECK(cp.position == std::vector<std::size_t>{0});
    CHECK(to_text(cp.peak) == "f[f[f[x#2]]]");
    CHECK(cp.left == cp.right);
    CHECK(to_text(cp.left) == "f[x#2]");
    CHECK(joinable(cps[0], {trule(0, lhs, v("x"))}, 0));
}

TEST_CASE("joinability is bounded by the search depth") {
    std::vector<Rule> rules{srule(0, "aba", "b"), srule(1, "bba", "abb")};
    // peak bbaba: left abbba rejoins right bbb only after two rewrites
    auto cps = critical_pairs(rules);
    const StringCriticalPair* cross = nullptr;
    for (const auto& cp : cps) {
        const auto& s = std::get<StringCriticalPair>(cp);
        if (s.peak == "bbaba") cross = &s;
    }
    REQUIRE(cross != nullptr);
    CHECK(cross->left == "abbba");
    CHECK(cross->right == "bbb");
    CriticalPair cp = *cross;
    CHECK_FALSE(joinable(cp, rules, 1));
    CHECK(joinable(cp, rules, 2));

    // with only the first rule the sides never meet
    auto lone = critical_pairs({srule(0, "aba", "b")});
    CHECK_FALSE(joinable(lone[0], {srule(0, "aba", "b")}, 3));
}

TEST_CASE("hypergraph and mixed rule sets are rejected") {
    CHECK_THROWS_AS(critical_pairs({grule(0)}), SubstrateUnsupported);
    CHECK_THROWS_AS(critical_pairs({srule(0, "a", "b"), trule(1, f("f", {v("x")}), v("x"))}),
                    SubstrateMismatch);
    CHECK_THROWS_AS(knuth_bendix({grule(0)}, shortlex_ab()), SubstrateUnsupported);
}

TEST_CASE("completing one rule adds the derived rule and stops") {
    auto res = knuth_bendix({srule(0, "aba", "b")}, shortlex_ab());
    REQUIRE(res.status == CompletionResult::Status::Completed);
    CHECK(rule_texts(res.rules) == std::vector<std::string>{"aba -> b", "bba -> abb"});
    REQUIRE(res.added.size() == 1);
    CHECK(res.added[0].peak_text == "ababa");
    CHECK(res.added[0].left_text == "bba");
    CHECK(res.added[0].right_text == "abb");
    CHECK(res.added[0].rule.id == 1);

    // every critical pair of the result is joinable
    for (const auto& cp : critical_pairs(res.rules)) CHECK(joinable(cp, res.rules, 4));
}

TEST_CASE("a rule oriented against the ordering fails immediately") {
    auto res = knuth_bendix({srule(0, "ab", "ba")}, shortlex_ab());
    CHECK(res.status == CompletionResult::Status::OrderFailure);
    CHECK(res.detail.find("not oriented") != std::string::npos);
    CHECK(rule_texts(res.rules) == std::vector<std::string>{"ab -> ba"});
}

TEST_CASE("an already confluent rule completes unchanged") {
    auto res = knuth_bendix({srule(0, "aa", "a")}, shortlex_ab());
    CHECK(res.status == CompletionResult::Status::Completed);
    CHECK(res.added.empty());
    CHECK(rule_texts(res.rules) == std::vector<std::string>{"aa -> a"});
}

TEST_CASE("inverse unary term rules are already complete") {
    Term hx = f("h", {v("x")});
    Term ix = f("i", {v("x")});
    std::vector<Rule> rules{trule(0, f("h", {ix}), v("x")), trule(1, f("i", {hx}), v("x"))};
    auto res = knuth_bendix(rules, lpo({"h", "i"}));
    CHECK(res.status == CompletionResult::Status::Completed);
    CHECK(res.added.empty());
    CHECK(res.rules.size() == 2);
}

TEST_CASE("interreduction drops a rule whose lhs became reducible") {
    auto res = knuth_bendix({srule(0, "bb", "b"), srule(1, "bab", "a")}, shortlex_ab());
    REQUIRE(res.status == CompletionResult::Status::Completed);
    CHECK(rule_texts(res.rules) ==
          std::vector<std::string>{"bb -> b", "ba -> a", "ab -> a"});
    REQUIRE(res.added.size() == 2);
    CHECK(res.added[0].left_text == "ba");
    CHECK(res.added[0].right_text == "a");
    CHECK(res.added[0].peak_text == "bbab");
    // the dropped rule re-enters as an equation labeled by its own text
    CHECK(res.added[1].left_text == "ab");
    CHECK(res.added[1].right_text == "a");
    CHECK(res.added[1].peak_text == "bab -> a");
}

TEST_CASE("without interreduction the subsumed rule stays") {
    auto res =
        knuth_bendix({srule(0, "bb", "b"), srule(1, "bab", "a")}, shortlex_ab(), 64, 512, false);
    REQUIRE(res.status == CompletionResult::Status::Completed);
    CHECK(rule_texts(res.rules) ==
          std::vector<std::string>{"bb -> b", "bab -> a", "ba -> a", "ab -> a"});
}

TEST_CASE("a growing rule family hits the rule cap") {
    auto res = knuth_bendix({srule(0, "aba", "ab")}, shortlex_ab(), 4);
    CHECK(res.status == CompletionResult::Status::Diverged);
    CHECK(res.detail == "rule cap exceeded");
    CHECK(res.rules.size() == 4);
    CHECK(rule_texts(res.rules) ==
          std::vector<std::string>{"aba -> ab", "abba -> abb", "abbba -> abbb",
                                   "abbbba -> abbbb"});
}

TEST_CASE("the iteration cap also reports divergence") {
    auto res = knuth_bendix({srule(0, "aba", "ab")}, shortlex_ab(), 64, 1);
    CHECK(res.status == CompletionResult::Status::Diverged);
    CHECK(res.detail == "iteration cap exceeded");
}

TEST_CASE("an unorientable derived equation reports order failure") {
    Term fxy = f("f", {v("x"), v("y")});
    auto res = knuth_bendix({trule(0, fxy, v("x")), trule(1, fxy, v("y"))}, lpo({"f"}));
    CHECK(res.status == CompletionResult::Status::OrderFailure);
    CHECK(res.detail.find("cannot orient") != std::string::npos);
}

TEST_CASE("normal forms follow leftmost-first rewriting") {
    std::vector<Rule> rules{srule(0, "aba", "b"), srule(1, "bba", "abb")};
    CHECK(normalize_text(Substrate::String, "ababa", rules) == "abb");
    CHECK(normalize_text(Substrate::String, "bb", rules) == "bb");

    Term lhs = f("f", {f("f", {v("x")})});
    std::vector<Rule> trules{trule(0, lhs, v("x"))};
    CHECK(normalize_text(Substrate::Term, "f[f[f[a]]]", trules) == "f[a]");
    CHECK(normalize_text(Substrate::Term, "f[f[f[f[a]]]]", trules) == "a");

    CHECK_THROWS_AS(normalize_text(Substrate::Hypergraph, "{{0,0}}", {grule(0)}),
                    SubstrateUnsupported);

    // fuel bounds nonterminating systems
    CHECK(normalize_text(Substrate::String, "a", {srule(0, "a", "a")}, 10) == "a");
}

TEST_CASE("empty input completes vacuously") {
    auto res = knuth_bendix({}, shortlex_ab());
    CHECK(res.status == CompletionResult::Status::Completed);
    CHECK(res.rules.empty());
}

TEST_CASE("observer tabulation reports one row per slice") {
    Rule grow = srule(0, "A", "AB");
    State init = parse_state_text(Substrate::String, "AA");
    auto report = observer_report(init, {grow}, {grow}, 3);
    REQUIRE(report.before.size() == 4);
    REQUIRE(report.after.size() == 4);
    std::vector<std::size_t> states{1, 2, 3, 4};
    std::vector<std::size_t> branchial{0, 1, 2, 3};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(report.before[i].slice == i);
        CHECK(report.before[i].states == states[i]);
        CHECK(report.before[i].branchial_edges == branchial[i]);
        CHECK(report.after[i].states == report.before[i].states);
        CHECK(report.after[i].branchial_edges == report.before[i].branchial_edges);
    }
}
