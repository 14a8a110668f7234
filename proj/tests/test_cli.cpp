#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fgw/cli.hpp"
#include "fgw/json_io.hpp"
#include "fgw/repl.hpp"
#include "support.hpp"

using namespace fgw;
using namespace fgw::test;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Result r;
  r.code = run_cli(args, {in, out, err, false});
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("fgw_test_" + name);
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("repl session") {
  Repl r(load_corpus("G2"));
  CHECK(r.execute("reset").text == "S");
  CHECK(r.execute("show").text == "S");
  const auto m = r.execute("matches");
  CHECK(std::count(m.text.begin(), m.text.end(), '\n') == 1);
  CHECK(r.execute("apply 1").text == "P Q");
  CHECK(r.execute("undo").text == "S");
  CHECK_FALSE(r.execute("undo").ok);

  r.execute("apply 1");
  const auto bad = r.execute("apply 99");
  CHECK_FALSE(bad.ok);
  CHECK(render_form(r.grammar(), r.current()) == "P Q");
  CHECK(r.history_depth() == 1);
  CHECK_FALSE(r.execute("frobnicate").ok);
  CHECK(r.execute("quit").quit);

  r.execute("apply 1");
  r.execute("apply 2");
  CHECK(r.execute("indices").text == "PI 1  CI 1  TI 0");
}

TEST_CASE("repl invariant under random commands") {
  const char* commands[] = {"apply 1", "apply 2", "apply 3", "apply 7", "undo", "reset", "random 3", "matches", "show"};
  std::mt19937_64 rng(11);
  for (auto id : corpus_ids()) {
    Repl r(load_corpus(id), 5);
    for (int i = 0; i < 200; ++i) {
      r.execute(commands[std::uniform_int_distribution<int>(0, 8)(rng)]);
      REQUIRE(r.invariant_holds());
    }
  }
}

TEST_CASE("cli derive") {
  const auto r = cli({"derive", "--corpus", "G1", "--target", "aabaab"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("a a b a a b\n") != std::string::npos);

  const auto j = cli({"derive", "--corpus", "G1", "--target", "aabaab", "--json"});
  REQUIRE(j.code == kExitOk);
  const Grammar g1 = load_corpus("G1");
  CHECK(replay_trace(g1, parse_trace_json(g1, j.out)) == F(g1, "aabaab"));

  CHECK(cli({"derive", "--corpus", "G2", "--target", "a", "--max-form-len", "6"}).code == kExitInconclusive);
  CHECK(cli({"derive", "--corpus", "G5", "--target", "ab", "--inject", "N:ba", "--max-form-len", "10",
             "--max-steps", "30"})
            .code == kExitNegative);
}

TEST_CASE("cli enumerate") {
  const auto r = cli({"enumerate", "--corpus", "G2", "--max-len", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "ε\n");
  const auto g1 = cli({"enumerate", "--corpus", "G1", "--max-len", "4", "--max-form-len", "12"});
  CHECK(g1.out == "ε\naa\nbb\naaaa\nabab\nbaba\nbbbb\n");
  const auto j = cli({"enumerate", "--corpus", "G3", "--json"});
  CHECK(Json::parse(j.out)["strings"] == Json::array({""}));
  CHECK_FALSE(Json::parse(j.out)["pruned"].get<bool>());
}

TEST_CASE("cli classify and validate") {
  const auto r = cli({"classify", "--corpus", "G3", "--json"});
  CHECK(r.code == kExitOk);
  CHECK(Json::parse(r.out)["verdict"] == "PureNull");

  CHECK(cli({"validate", "--corpus", "G1"}).out == "ok: 10 productions\n");
  const auto bad = write_temp("bad.grm", "start: S\nterminals: a\nS -> a\na -> a\n");
  const auto v = cli({"validate", "--grammar", bad.string()});
  CHECK(v.code == kExitInvalid);
  CHECK(v.err.find("lhs has no non-terminal") != std::string::npos);
  const auto broken = write_temp("broken.grm", "start: S\nS a\n");
  CHECK(cli({"validate", "--grammar", broken.string()}).code == kExitInvalid);

  const auto n = cli({"classify", "--grammar", write_temp("cs.grm", serialize_grammar(cs_example(false))).string(),
                      "--normalize"});
  CHECK(n.out.find("C1 -> b b A") != std::string::npos);
}

TEST_CASE("cli indices and analyze") {
  const Grammar g2 = load_corpus("G2");
  const auto t = build_trace(g2, {{"S -> P Q", 0}, {"P -> P a", 0}, {"a Q -> Q", 1}, {"P Q -> ε", 0}});
  const auto path = write_temp("g2.json", trace_to_json(g2, t).dump());
  const auto r = cli({"indices", "--corpus", "G2", "--trace", path.string(), "--json"});
  CHECK(Json::parse(r.out) == Json{{"pi", 1}, {"ci", 1}, {"ti", 0}});

  const auto a = cli({"analyze", "--corpus", "G2", "--json"});
  CHECK(a.code == kExitOk);
  CHECK(Json::parse(a.out)["verdict"] == "Queue");

  const auto p = cli({"analyze", "--corpus", "PRIORITY", "--priority", "B>A", "--json"});
  CHECK(p.code == kExitOk);
  CHECK_FALSE(Json::parse(p.out)["priority"]["witness"].is_null());
}

TEST_CASE("cli pda") {
  const auto r = cli({"pda", "--input", "(())", "--input", "()", "--json"});
  CHECK(r.code == kExitOk);
  CHECK(Json::parse(r.out)["configs"] == Json::array({"", "(", "(("}));
  CHECK(cli({"pda", "--input", "())"}).code == kExitNegative);
  CHECK(cli({"pda", "--language-of", "PARENS", "--max-len", "4"}).code == kExitOk);
}

TEST_CASE("cli usage errors") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"enumerate"}).code == kExitUsage);
  CHECK(cli({"enumerate", "--corpus", "NOPE"}).code == kExitUsage);
  CHECK(cli({"derive", "--corpus", "G1"}).code == kExitUsage);
  CHECK(cli({"bogus"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"corpus", "list"}).out.find("PRIORITY_AS_PRINTED\n") != std::string::npos);
}

TEST_CASE("cli step reads commands") {
  const auto r = cli({"step", "--corpus", "G2"}, "matches\napply 1\nshow\nquit\n");
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("P Q\n") != std::string::npos);
}
