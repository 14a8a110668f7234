#include <doctest.h>

#include "fgw/classifier.hpp"
#include "support.hpp"

using namespace fgw;
using namespace fgw::test;

namespace {

std::set<std::string> keys(const Grammar& g, const RoleWitnesses& w) {
  std::set<std::string> out;
  for (const auto& [id, rules] : w) out.insert(g.name_of(id));
  return out;
}

using Names = std::set<std::string>;

}  // namespace

TEST_CASE("context-free producers") {
  const Grammar n = parse_grammar("start: N\nterminals: a\nN -> a N | N a | eps\n");
  CHECK(keys(n, classify_cf_pnt(n)) == Names{"N"});

  const Grammar b = parse_grammar("start: B\nterminals: a\nB -> N M\nN -> a N | N a | eps\n");
  CHECK(keys(b, classify_cf_pnt(b)) == Names{"B", "N"});
  // B's evidence runs through N.
  const auto w = classify_cf_pnt(b);
  CHECK(w.at(b.id("B")).size() == 2);

  CHECK(classify_cf_pnt(load_corpus("G3")).empty());
  const Grammar g2 = load_corpus("G2");
  CHECK(keys(g2, classify_cf_pnt(g2)) == Names{"S", "P"});
}

TEST_CASE("context-sensitive producers") {
  const Grammar cs = cs_example(false);
  CHECK(keys(cs, classify_cs_pnt(cs)) == Names{"A"});
  CHECK(classify_cs_pnt(load_corpus("G2")).empty());
  const Grammar g5 = load_corpus("G5");
  CHECK(keys(g5, classify_cs_pnt(g5)) == Names{"P", "B", "A", "R"});
}

TEST_CASE("consumers") {
  const Grammar eat = parse_grammar("start: A\nterminals: a\na A -> A\n");
  CHECK(keys(eat, classify_cnt(eat)) == Names{"A"});
  const Grammar g2 = load_corpus("G2");
  CHECK(keys(g2, classify_cnt(g2)) == Names{"Q"});
  CHECK(classify_cnt(load_corpus("G3")).empty());
  // Adjacency is taken literally: both sides of the consumed pair are flagged.
  const Grammar two = parse_grammar("start: S\nterminals: a b\nS -> B C\na B C b -> B C\n");
  CHECK(keys(two, classify_cnt(two)) == Names{"B", "C"});
  const Grammar cs = cs_example(false);
  CHECK(keys(cs, classify_cnt(cs)) == Names{"A"});
}

TEST_CASE("classify_all") {
  SUBCASE("G2") {
    const Grammar g = load_corpus("G2");
    const auto r = classify_all(g, {30, 8, 2'000'000, 3});
    CHECK(r.roles.at(g.id("S")) == RoleFlags{true, false, false, false});
    CHECK(r.roles.at(g.id("P")) == RoleFlags{true, false, false, false});
    CHECK(r.roles.at(g.id("Q")) == RoleFlags{false, false, true, false});
    CHECK(r.verdict == GrammarVerdict::PurelyFunctionalUpToBound);
    CHECK(spelled(g, r.language) == std::set<std::string>{""});
    REQUIRE(r.index_summary);
    CHECK(r.index_summary->transient.min == 0);
    CHECK(r.index_summary->transient.max == 0);
  }
  SUBCASE("G3") {
    const Grammar g = load_corpus("G3");
    const auto r = classify_all(g, {});
    CHECK(r.roles.at(g.id("S")) == RoleFlags{false, false, false, true});
    CHECK(r.verdict == GrammarVerdict::PureNull);
  }
  SUBCASE("G3b") {
    CHECK(classify_all(load_corpus("G3b"), {}).verdict == GrammarVerdict::PureNull);
  }
  SUBCASE("G1") {
    const Grammar g = load_corpus("G1");
    const auto r = classify_all(g, {64, 12, 2'000'000, 2});
    CHECK(r.verdict == GrammarVerdict::FunctionalUpToBound);
    CHECK(spelled(g, r.language).count("aa") == 1);
  }
  SUBCASE("a producer grammar with an empty bounded language is inconclusive") {
    const Grammar g = parse_grammar("start: S\nterminals: a\nS -> a S\n");
    CHECK(classify_all(g, {}).verdict == GrammarVerdict::InconclusiveUpToBound);
  }
}

TEST_CASE("normalize_cs_pnt") {
  const Grammar cs = cs_example(false);
  const Grammar n = normalize_cs_pnt(cs);
  std::vector<std::string> rules;
  for (std::size_t i = 0; i < n.productions().size(); ++i) rules.push_back(render_production(n, i));
  CHECK(rules == std::vector<std::string>{"a A -> C1", "C1 -> b b A", "b A -> A"});
  CHECK(validate_grammar(n).empty());
  CHECK(keys(n, classify_cf_pnt(n)) == Names{"C1"});
  CHECK(classify_cs_pnt(n).empty());

  const Grammar g2 = load_corpus("G2");
  CHECK(serialize_grammar(normalize_cs_pnt(g2)) == serialize_grammar(g2));

  SUBCASE("fresh names avoid existing symbols") {
    const Grammar taken = parse_grammar("start: A\nterminals: a b\nC1 -> a\na A -> b b A\n");
    const Grammar m = normalize_cs_pnt(taken);
    CHECK(m.find("C1'").has_value());
    CHECK(validate_grammar(m).empty());
  }
  SUBCASE("every context-sensitive producer becomes context-free") {
    for (auto id : corpus_ids()) {
      const Grammar m = normalize_cs_pnt(load_corpus(id));
      CHECK(validate_grammar(m).empty());
      CHECK(classify_cs_pnt(m).empty());
    }
  }
}

TEST_CASE("normalization keeps the bounded language") {
  const SearchLimits lim{128, 24, 2'000'000, 6};
  for (bool exit_rule : {false, true}) {
    CAPTURE(exit_rule);
    const Grammar host = cs_example(true, exit_rule);
    CHECK(language_of(host, lim) == language_of(normalize_cs_pnt(host), lim));
  }
  CHECK(language_of(cs_example(true, true), lim) == std::set<std::string>{"", "a", "b", "bb"});
}
