#include <doctest.h>

#include "fgw/error.hpp"
#include "support.hpp"

using namespace fgw;
using namespace fgw::test;

namespace {

std::vector<std::pair<std::string, std::size_t>> described(const Grammar& g, const std::vector<Match>& ms) {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (const auto& m : ms) out.emplace_back(render_production(g, m.production), m.position);
  return out;
}

using Described = std::vector<std::pair<std::string, std::size_t>>;

}  // namespace

TEST_CASE("find_matches") {
  const Grammar g2 = load_corpus("G2");
  CHECK(described(g2, find_matches(g2, F(g2, "P a Q"))) == Described{{"P -> P a", 0}, {"a Q -> Q", 1}});
  CHECK(find_matches(g2, {}).empty());
  const Grammar g1 = load_corpus("G1");
  CHECK(described(g1, find_matches(g1, F(g1, "S"))) == Described{{"S -> a A S", 0}, {"S -> b B S", 0}, {"S -> T", 0}});
  CHECK_THROWS_AS(find_matches(g1, SententialForm{static_cast<SymbolId>(500)}), ArgumentError);
}

TEST_CASE("find_matches agrees with a direct scan on random forms") {
  std::mt19937_64 rng(7);
  std::size_t checked = 0;
  for (auto id : corpus_ids()) {
    const Grammar g = load_corpus(id);
    for (int i = 0; i < 150; ++i, ++checked) {
      const SententialForm f = random_form(g, rng, 12);
      REQUIRE(find_matches(g, f) == brute_force_matches(g, f));
    }
  }
  CHECK(checked >= 1000);
}

TEST_CASE("apply_at") {
  const Grammar g = load_corpus("G2");
  const auto aq = Match{3, 1};
  const auto pq = Match{4, 0};
  CHECK(apply_at(g, F(g, "P a Q"), aq) == F(g, "P Q"));
  CHECK(apply_at(g, F(g, "P Q"), pq).empty());
  CHECK_THROWS_AS(apply_at(g, F(g, "P a Q"), pq), MatchError);
  CHECK_THROWS_AS(apply_at(g, F(g, "P Q"), Match{4, 1}), MatchError);
}

TEST_CASE("successors") {
  const Grammar g2 = load_corpus("G2");
  const auto s = successors(g2, F(g2, "P Q"));
  REQUIRE(s.size() == 2);
  CHECK(s[0].second == F(g2, "P a Q"));
  CHECK(s[1].second.empty());

  const Grammar g3 = load_corpus("G3");
  const auto s3 = successors(g3, F(g3, "S"));
  REQUIRE(s3.size() == 1);
  CHECK(s3[0].second.empty());

  const Grammar g5 = load_corpus("G5");
  std::set<std::string> after;
  for (const auto& [m, f] : successors(g5, F(g5, "P N Q R"))) after.insert(render_form(g5, f));
  CHECK(after.count("P Q R") == 1);
  CHECK(after.count("P N a Q R") == 1);
}

TEST_CASE("bfs_derive") {
  SUBCASE("G1 reaches aabaab") {
    const Grammar g = load_corpus("G1");
    const auto r = bfs_derive(g, F(g, "aabaab"), {40, 14, 2'000'000, 8});
    REQUIRE(r.status == SearchStatus::Found);
    REQUIRE(r.trace);
    CHECK(r.trace->final_form() == F(g, "aabaab"));
    CHECK(replay_trace(g, *r.trace) == F(g, "aabaab"));
  }
  SUBCASE("G2 never derives a") {
    const Grammar g = load_corpus("G2");
    const auto r = bfs_derive(g, F(g, "a"), {64, 6, 2'000'000, 8});
    CHECK(r.status == SearchStatus::ExhaustedPruned);
    CHECK_FALSE(r.trace);
  }
  SUBCASE("G3 reaches the empty word in one step") {
    const Grammar g = load_corpus("G3");
    const auto r = bfs_derive(g, {}, {});
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(r.trace->steps.size() == 1);
  }
  SUBCASE("a shortest derivation is returned") {
    const Grammar g = load_corpus("G2");
    const auto r = bfs_derive(g, F(g, "P a a Q"), {});
    REQUIRE(r.trace);
    CHECK(r.trace->steps.size() == 3);
  }
  SUBCASE("exhausting a finite space is complete") {
    const Grammar g = load_corpus("G3b");
    CHECK(bfs_derive(g, F(g, "A A"), {}).status == SearchStatus::ExhaustedComplete);
  }
}

TEST_CASE("enumerate_language matches oracles") {
  CHECK(language_of(load_corpus("G2"), {30, 8, 2'000'000, 3}) == std::set<std::string>{""});
  CHECK(language_of(load_corpus("G4"), {64, 24, 2'000'000, 2}) == regex_oracle("b*a*", 2));
  CHECK(language_of(load_corpus("G1"), {64, 24, 2'000'000, 4}) == xx_oracle(2));
}

TEST_CASE("enumerate_forms") {
  // Forms of length max_form_len or more are pruned.
  const Grammar g2 = load_corpus("G2");
  const auto r = enumerate_forms(g2, {64, 6, 2'000'000, 8});
  CHECK(spelled(g2, r.forms) == std::set<std::string>{"S", "", "PQ", "PaQ", "PaaQ", "PaaaQ"});
  CHECK(r.pruned);

  const Grammar g3 = load_corpus("G3");
  const auto r3 = enumerate_forms(g3, {});
  CHECK(spelled(g3, r3.forms) == std::set<std::string>{"S", ""});
  CHECK_FALSE(r3.pruned);

  const Grammar st = load_corpus("STACK");
  CHECK(spelled(st, enumerate_forms(st, {64, 5, 2'000'000, 8}).forms) ==
        std::set<std::string>{"S", "", "PQ", "PaQ", "PaaQ"});
}

TEST_CASE("replay_trace") {
  const Grammar g = load_corpus("G1");
  const auto r = bfs_derive(g, F(g, "aabaab"), {40, 14, 2'000'000, 8});
  REQUIRE(r.trace);
  CHECK(replay_trace(g, *r.trace) == F(g, "aabaab"));

  CHECK(replay_trace(g, DerivationTrace{g.name(), F(g, "S"), {}}) == F(g, "S"));

  DerivationTrace bad = *r.trace;
  bad.steps[3].after.push_back(g.id("a"));
  try {
    replay_trace(g, bad);
    FAIL("expected ReplayError");
  } catch (const ReplayError& e) {
    CHECK(e.step() == 3);
  }

  DerivationTrace foreign = *r.trace;
  foreign.grammar = "G2";
  CHECK_THROWS_AS(replay_trace(g, foreign), ArgumentError);
}

TEST_CASE("trace_indices") {
  const Grammar g2 = load_corpus("G2");
  DerivationTrace t{g2.name(), F(g2, "S"), {}};
  t.steps = {{0, 0, F(g2, "P Q")}, {2, 0, F(g2, "P a Q")}, {3, 1, F(g2, "P Q")}, {4, 0, {}}};
  CHECK(trace_indices(g2, t) == TraceIndices{1, 1, 0});

  const Grammar g3 = load_corpus("G3");
  CHECK(trace_indices(g3, {g3.name(), F(g3, "S"), {{0, 0, {}}}}) == TraceIndices{0, 0, 0});

  const Grammar g4 = load_corpus("G4");
  const auto r = bfs_derive(g4, F(g4, "ba"), {});
  REQUIRE(r.trace);
  CHECK(render_form(g4, r.trace->steps[0].after) == "b B");
  CHECK(trace_indices(g4, *r.trace) == TraceIndices{2, 0, 2});
}

TEST_CASE("constrained_derive") {
  const Grammar g = load_corpus("G5");
  const SymbolId n = g.id("N");
  SearchLimits lim{64, 14, 2'000'000, 8};
  CHECK(constrained_derive(g, n, F(g, "aabba"), F(g, "bbaaa"), lim).status == SearchStatus::Found);
  CHECK(constrained_derive(g, n, F(g, "ba"), F(g, "ba"), lim).status == SearchStatus::Found);
  CHECK(constrained_derive(g, n, F(g, "ba"), F(g, "ab"), {30, 10, 2'000'000, 8}).status ==
        SearchStatus::ExhaustedComplete);
  // The order must be consumed completely, so a shorter target cannot be reached.
  CHECK(constrained_derive(g, n, F(g, "ba"), F(g, "b"), {30, 10, 2'000'000, 8}).status ==
        SearchStatus::ExhaustedComplete);

  const auto found = constrained_derive(g, n, F(g, "aabba"), F(g, "bbaaa"), lim);
  REQUIRE(found.trace);
  std::string injected;
  for (const auto& s : found.trace->steps)
    if (g.production(s.production).lhs == SententialForm{n})
      for (SymbolId x : g.production(s.production).rhs)
        if (g.is_terminal(x)) injected += g.name_of(x);
  CHECK(injected == "aabba");

  CHECK_THROWS_AS(constrained_derive(g, g.id("a"), F(g, "a"), F(g, "a"), lim), ArgumentError);
  CHECK_THROWS_AS(constrained_derive(g, n, F(g, "P"), F(g, "a"), lim), ArgumentError);
}

TEST_CASE("limits") {
  CHECK_THROWS_AS((SearchLimits{0, 24, 10, 8}.validate()), ArgumentError);
  const SearchLimits d = SearchLimits{}.doubled();
  CHECK(d.max_steps == 128);
  CHECK(d.max_form_len == 48);
  CHECK(d.max_string_len == 8);
}
