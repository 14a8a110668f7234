#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fgw/error.hpp"
#include "support.hpp"

using namespace fgw;
using fgw::test::F;

namespace {

std::vector<std::string> rules_of(const Grammar& g) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < g.productions().size(); ++i) out.push_back(render_production(g, i));
  return out;
}

std::set<std::string> names(const Grammar& g, std::span<const SymbolId> ids) {
  std::set<std::string> out;
  for (SymbolId id : ids) out.insert(g.name_of(id));
  return out;
}

}  // namespace

TEST_CASE("G2 parses into five productions over {S,P,Q} and {a}") {
  const Grammar g = load_corpus("G2");
  CHECK(names(g, g.nonterminals()) == std::set<std::string>{"S", "P", "Q"});
  CHECK(names(g, g.terminals()) == std::set<std::string>{"a"});
  CHECK(rules_of(g) == std::vector<std::string>{"S -> P Q", "S -> ε", "P -> P a", "a Q -> Q", "P Q -> ε"});
  CHECK(g.name_of(g.start()) == "S");
}

TEST_CASE("minimal null grammar") {
  const Grammar g = parse_grammar("start: S\nterminals:\nS -> eps\n");
  REQUIRE(g.productions().size() == 1);
  CHECK(g.production(0).rhs.empty());
  CHECK(g.terminals().empty());
}

TEST_CASE("lhs without a non-terminal is rejected") {
  CHECK_THROWS_AS(parse_grammar("start: S\nterminals: a\na -> a\n"), ValidationError);
  const GrammarDef def = parse_grammar_def("start: S\nterminals: a\nS -> a\na -> a\n");
  const auto v = validate_grammar(def);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("lhs has no non-terminal") != std::string::npos);
}

TEST_CASE("validation messages") {
  SUBCASE("corpus G1 is valid with ten productions") {
    const Grammar g = load_corpus("G1");
    CHECK(validate_grammar(g).empty());
    CHECK(g.productions().size() == 10);
  }
  SUBCASE("undeclared start") {
    GrammarDef d{"x", "X", {"a"}, {"S"}, {{{"S"}, {"a"}}}};
    const auto v = validate_grammar(d);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].find("start not a declared non-terminal") != std::string::npos);
  }
  SUBCASE("undeclared rhs symbol") {
    GrammarDef d{"x", "S", {"a"}, {"S"}, {{{"S"}, {"a", "z"}}}};
    const auto v = validate_grammar(d);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("undeclared symbol 'z'") != std::string::npos);
  }
  SUBCASE("symbol in both alphabets") {
    GrammarDef d{"x", "S", {"a", "S"}, {"S"}, {{{"S"}, {"a"}}}};
    CHECK_FALSE(validate_grammar(d).empty());
  }
  SUBCASE("reserved names") {
    CHECK_FALSE(is_valid_symbol_name("eps"));
    CHECK_FALSE(is_valid_symbol_name("->"));
    CHECK_FALSE(is_valid_symbol_name("a#b"));
    CHECK_FALSE(is_valid_symbol_name(""));
    CHECK(is_valid_symbol_name("("));
    CHECK(is_valid_symbol_name("C1'"));
  }
}

TEST_CASE("parse errors carry a line number") {
  try {
    parse_grammar("start: S\nterminals: a\nS a\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_grammar("start: S\nterminals: a\nS -> a | | a\n"), ParseError);
  CHECK_THROWS_AS(parse_grammar("start: S\nterminals: a\nS -> a eps\n"), ParseError);
  CHECK_THROWS_AS(parse_grammar("start: S\nterminals: a\nS -> a -> a\n"), ParseError);
  CHECK_THROWS_AS(parse_grammar("terminals: a\nS -> a\n"), ParseError);
}

TEST_CASE("corpus transcriptions") {
  CHECK(rules_of(load_corpus("G5")) ==
        std::vector<std::string>{"S -> P N Q R", "N -> N a", "N -> N b", "N -> ε", "a Q -> Q A", "b Q -> Q B",
                                 "P Q -> P", "P B -> b P", "A R -> R a", "A B -> B A", "P R -> ε"});
  CHECK(rules_of(load_corpus("G3")) == std::vector<std::string>{"S -> ε"});
  CHECK(rules_of(load_corpus("G3b")) == std::vector<std::string>{"S -> A", "A -> ε"});
  const Grammar parens = load_corpus("PARENS");
  CHECK(rules_of(parens) == std::vector<std::string>{"S -> ( S )", "S -> ( ) S", "S -> S ( )", "S -> ε"});
  CHECK(names(parens, parens.terminals()) == std::set<std::string>{"(", ")"});
  CHECK_THROWS_AS(load_corpus("G9"), ArgumentError);
  for (auto id : corpus_ids()) CHECK(validate_grammar(load_corpus(id)).empty());
}

TEST_CASE("priority variants differ only in the B Q rule") {
  const auto a = rules_of(load_corpus("PRIORITY"));
  const auto b = rules_of(load_corpus("PRIORITY_AS_PRINTED"));
  REQUIRE(a.size() == b.size());
  std::vector<std::pair<std::string, std::string>> diff;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) diff.emplace_back(a[i], b[i]);
  REQUIRE(diff.size() == 1);
  CHECK(diff[0].first == "B Q -> Q");
  CHECK(diff[0].second == "B Q -> B");
}

TEST_CASE("serialize and parse round-trip every corpus grammar") {
  for (auto id : corpus_ids()) {
    CAPTURE(id);
    const Grammar g = load_corpus(id);
    const Grammar back = parse_grammar(serialize_grammar(g));
    CHECK(rules_of(back) == rules_of(g));
    CHECK(back.name() == g.name());
    CHECK(names(back, back.terminals()) == names(g, g.terminals()));
    CHECK(names(back, back.nonterminals()) == names(g, g.nonterminals()));
  }
}

TEST_CASE("forms") {
  const Grammar g = load_corpus("G1");
  CHECK(F(g, "aabaab").size() == 6);
  CHECK(F(g, "a a b a a b") == F(g, "aabaab"));
  CHECK(F(g, "eps").empty());
  CHECK(F(g, "ε").empty());
  CHECK(F(g, "").empty());
  CHECK(render_form(g, {}) == "ε");
  CHECK(render_form(g, F(g, "a A S")) == "a A S");
  CHECK(render_form(g, F(g, "abba"), true) == "abba");
  CHECK_THROWS_AS(F(g, "a z"), ArgumentError);
  CHECK(g.terminal_count(F(g, "a A b T")) == 2);
  CHECK(g.is_terminal_form(F(g, "abab")));
  CHECK_FALSE(g.is_terminal_form(F(g, "a T")));
}
