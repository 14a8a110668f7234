#include "fgw/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fgw/classifier.hpp"
#include "fgw/corpus.hpp"
#include "fgw/error.hpp"
#include "fgw/json_io.hpp"
#include "fgw/pda.hpp"
#include "fgw/repl.hpp"
#include "fgw/rewrite.hpp"
#include "fgw/structure.hpp"

namespace fgw {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string corpus;
  std::string grammar_file;
  SearchLimits limits;
  bool json = false;
  std::uint64_t seed = 0;

  std::string target;
  std::string inject;
  bool forms = false;
  bool normalize = false;
  std::string left = "P";
  std::string right = "Q";
  std::string priority;
  std::size_t seeds = 50;
  std::vector<std::string> trace_files;
  std::string pda_file;
  std::string pda_builtin;
  std::string inputs_file;
  std::vector<std::string> inputs;
  std::string language_of;
  std::size_t step_limit = 256;
  std::string corpus_action;
  std::string corpus_id;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Session {
 public:
  Session(const Options& o, CliStreams io) : o_(o), io_(io) {
    const char* color = std::getenv("FGW_COLOR");
    styled_ = io.interactive && !(color && std::string_view(color) == "0");
  }

  Grammar grammar() const {
    if (!o_.corpus.empty() && !o_.grammar_file.empty()) throw UsageError("give either --corpus or --grammar, not both");
    if (!o_.corpus.empty()) return load_corpus(o_.corpus);
    if (!o_.grammar_file.empty()) return parse_grammar(read_file(o_.grammar_file));
    throw UsageError("a grammar source is required (--corpus ID or --grammar FILE)");
  }

  std::string bold(const std::string& s) const { return styled_ ? "\x1b[1m" + s + "\x1b[0m" : s; }

  void emit(const Json& j) const { io_.out << j.dump(2) << '\n'; }

  int validate() const {
    if (!o_.corpus.empty()) {
      const Grammar g = grammar();
      return report_violations(validate_grammar(g), g.productions().size());
    }
    if (o_.grammar_file.empty()) throw UsageError("a grammar source is required (--corpus ID or --grammar FILE)");
    const GrammarDef def = parse_grammar_def(read_file(o_.grammar_file));
    return report_violations(validate_grammar(def), def.rules.size());
  }

  int enumerate() const {
    const Grammar g = grammar();
    std::vector<SententialForm> items;
    bool pruned = false;
    std::size_t visited = 0;
    if (o_.forms) {
      auto r = enumerate_forms(g, o_.limits);
      items = std::move(r.forms);
      pruned = r.pruned, visited = r.visited;
    } else {
      auto r = enumerate_language(g, o_.limits);
      for (auto& [w, t] : r.words) items.push_back(std::move(w));
      pruned = r.pruned, visited = r.visited;
    }
    std::vector<std::pair<std::size_t, std::string>> rows;
    for (const auto& f : items) rows.emplace_back(f.size(), render_form(g, f, !o_.forms));
    std::sort(rows.begin(), rows.end());

    if (o_.json) {
      Json list = Json::array();
      for (const auto& [n, s] : rows) list.push_back(n == 0 ? std::string() : s);
      emit(Json{{o_.forms ? "forms" : "strings", std::move(list)}, {"pruned", pruned}, {"visited", visited}});
    } else {
      for (const auto& [n, s] : rows) io_.out << s << '\n';
      io_.err << rows.size() << (o_.forms ? " forms" : " strings") << ", " << visited << " nodes visited"
              << (pruned ? ", search pruned by limits" : "") << '\n';
    }
    return kExitOk;
  }

  int derive() const {
    const Grammar g = grammar();
    if (o_.target.empty()) throw UsageError("derive needs --target");
    const SententialForm target = parse_form(g, o_.target);
    SearchOutcome r;
    if (!o_.inject.empty()) {
      const auto colon = o_.inject.find(':');
      if (colon == std::string::npos) throw UsageError("--inject expects NT:ORDER, e.g. N:aabba");
      const SymbolId injector = g.id(o_.inject.substr(0, colon));
      r = constrained_derive(g, injector, parse_form(g, o_.inject.substr(colon + 1)), target, o_.limits);
    } else {
      r = bfs_derive(g, target, o_.limits);
    }

    io_.err << to_string(r.status) << " (" << r.visited << " nodes visited)\n";
    if (r.status != SearchStatus::Found) {
      if (o_.json) emit(Json{{"outcome", to_string(r.status)}, {"visited", r.visited}});
      return r.status == SearchStatus::ExhaustedPruned ? kExitInconclusive : kExitNegative;
    }
    if (o_.json) {
      emit(trace_to_json(g, *r.trace));
    } else {
      print_trace(g, *r.trace);
    }
    return kExitOk;
  }

  int classify() const {
    Grammar g = grammar();
    if (o_.normalize) {
      g = normalize_cs_pnt(g);
      if (!o_.json) io_.out << serialize_grammar(g) << '\n';
    }
    const ClassificationReport r = classify_all(g, o_.limits);
    if (o_.json) {
      emit(report_to_json(g, r));
      return kExitOk;
    }
    for (SymbolId v : g.nonterminals()) {
      const RoleFlags& f = r.roles.at(v);
      const Evidence& e = r.evidence.at(v);
      io_.out << "  " << g.name_of(v) << ':';
      if (f.pnt_cf) io_.out << " pnt_cf" << rules(e.pnt_cf);
      if (f.pnt_cs) io_.out << " pnt_cs" << rules(e.pnt_cs);
      if (f.cnt) io_.out << " cnt" << rules(e.cnt);
      if (f.mnt) io_.out << " mnt";
      io_.out << '\n';
    }
    io_.out << "verdict: " << bold(to_string(r.verdict)) << '\n';
    io_.out << "bounded language:";
    for (const auto& w : r.language) io_.out << ' ' << render_form(g, w, true);
    io_.out << (r.language_pruned ? "  (search pruned)" : "") << '\n';
    if (r.index_summary) {
      const auto& s = *r.index_summary;
      io_.out << "indices over " << s.derivations << " derivations: PI [" << s.production.min << ", "
              << s.production.max << "]  CI [" << s.consumption.min << ", " << s.consumption.max << "]  TI ["
              << s.transient.min << ", " << s.transient.max << "]\n";
    }
    return kExitOk;
  }

  int analyze() const {
    const Grammar g = grammar();
    std::vector<DerivationTrace> traces;
    if (!o_.trace_files.empty()) {
      for (const auto& f : o_.trace_files) traces.push_back(parse_trace_json(g, read_file(f)));
    } else {
      WalkOptions walk;
      walk.max_steps = o_.limits.max_steps * 4;
      traces = random_derivations(g, o_.seeds, walk);
    }
    if (traces.empty()) {
      io_.err << "no complete derivation could be generated\n";
      return kExitInconclusive;
    }
    const DisciplineVerdict v = classify_discipline(g, o_.left, o_.right, traces);
    Json out = discipline_to_json(v);

    int code = kExitOk;
    if (!o_.priority.empty()) {
      const PriorityOrder order = parse_priority(g, o_.priority);
      Json failures = Json::array();
      std::size_t respecting = 0;
      for (std::size_t i = 0; i < traces.size(); ++i) {
        const PriorityCheck c = check_priority_discipline(g, traces[i], o_.left, o_.right, order);
        if (c.ok) {
          ++respecting;
        } else {
          failures.push_back(Json{{"trace", i}, {"step", *c.violation_step}, {"detail", c.detail}});
        }
      }
      const SearchOutcome w = find_priority_respecting_derivation(g, o_.left, o_.right, order, o_.limits);
      out["priority"] = Json{{"order", o_.priority},
                             {"respecting_traces", respecting},
                             {"checked_traces", traces.size()},
                             {"violations", std::move(failures)},
                             {"witness", w.trace ? trace_to_json(g, *w.trace) : Json(nullptr)}};
      if (!w.trace) code = w.status == SearchStatus::ExhaustedPruned ? kExitInconclusive : kExitNegative;
    }

    if (o_.json) {
      emit(out);
      return code;
    }
    io_.out << "verdict: " << bold(to_string(v.verdict)) << " over " << traces.size() << " traces\n";
    io_.out << "insert ends: " << out["insert_ends"].dump() << "  delete ends: " << out["delete_ends"].dump() << '\n';
    for (const auto& [op, n] : v.op_histogram) io_.out << "  " << to_string(op) << ": " << n << '\n';
    for (const auto& s : v.violations) {
      io_.out << "  Other step: trace " << s.trace << " step " << s.step << '\n';
    }
    if (out.contains("priority")) {
      const Json& p = out["priority"];
      io_.out << "priority " << o_.priority << ": " << p["respecting_traces"].get<std::size_t>() << " of "
              << traces.size() << " traces respect it; witness derivation "
              << (p["witness"].is_null() ? "not found" : "found") << '\n';
      if (!p["witness"].is_null()) print_trace(g, parse_trace_json(g, p["witness"].dump()));
    }
    return code;
  }

  int indices() const {
    const Grammar g = grammar();
    if (o_.trace_files.size() != 1) throw UsageError("indices needs exactly one --trace FILE");
    const DerivationTrace t = parse_trace_json(g, read_file(o_.trace_files.front()));
    const TraceIndices ix = trace_indices(g, t);
    if (o_.json) {
      emit(indices_to_json(ix));
    } else {
      io_.out << "PI " << ix.production << "  CI " << ix.consumption << "  TI " << ix.transient << '\n';
    }
    return kExitOk;
  }

  int step() const {
    Repl repl(grammar(), o_.seed);
    repl.run(io_.in, io_.out, io_.err, io_.interactive);
    return kExitOk;
  }

  int pda() const {
    if (!o_.pda_file.empty() && !o_.pda_builtin.empty()) throw UsageError("give either --pda or --builtin, not both");
    const PdaSpec spec = !o_.pda_file.empty() ? parse_pda(read_file(o_.pda_file))
                                              : load_builtin_pda(o_.pda_builtin.empty() ? "PARENS_PDA" : o_.pda_builtin);
    std::vector<std::string> texts = o_.inputs;
    if (!o_.inputs_file.empty()) {
      std::istringstream lines(read_file(o_.inputs_file));
      for (std::string line; std::getline(lines, line);) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        texts.push_back(line);
      }
    }
    if (!o_.language_of.empty()) {
      const Grammar g = load_corpus(o_.language_of);
      for (const auto& [w, t] : enumerate_language(g, o_.limits).words) texts.push_back(render_form(g, w));
    }
    if (texts.empty()) throw UsageError("pda needs --input, --inputs FILE or --language-of ID");

    std::vector<std::vector<std::size_t>> inputs;
    for (const auto& t : texts) inputs.push_back(parse_pda_input(spec, t));
    const ConfigLanguage lang = config_language(spec, inputs, o_.step_limit);

    bool all_accepted = true;
    Json runs = Json::array();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      all_accepted = all_accepted && lang.runs[i].accepted;
      Json r = pda_run_to_json(spec, lang.runs[i]);
      r["input"] = texts[i];
      runs.push_back(std::move(r));
    }
    Json configs = Json::array();
    for (const Stack& s : lang.configs) configs.push_back(render_stack(spec, s));

    if (o_.json) {
      emit(Json{{"accepted", all_accepted},
                {"inconclusive", lang.any_inconclusive()},
                {"configs", std::move(configs)},
                {"runs", std::move(runs)}});
    } else {
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        const PdaRun& r = lang.runs[i];
        io_.out << (r.accepted ? "accept  " : r.inconclusive ? "unknown " : "reject  ") << texts[i] << '\n';
      }
      io_.out << "stack configurations:";
      for (const Stack& s : lang.configs) io_.out << ' ' << (s.empty() ? std::string("ε") : render_stack(spec, s));
      io_.out << '\n';
    }
    if (lang.any_inconclusive()) return kExitInconclusive;
    return all_accepted ? kExitOk : kExitNegative;
  }

  int corpus() const {
    if (o_.corpus_action == "list") {
      for (auto id : corpus_ids()) io_.out << id << '\n';
      return kExitOk;
    }
    if (o_.corpus_action == "show") {
      if (o_.corpus_id.empty()) throw UsageError("corpus show needs an ID");
      io_.out << corpus_source(o_.corpus_id);
      return kExitOk;
    }
    throw UsageError("corpus expects 'list' or 'show ID'");
  }

 private:
  int report_violations(const std::vector<std::string>& v, std::size_t productions) const {
    if (o_.json) {
      emit(Json{{"ok", v.empty()}, {"productions", productions}, {"violations", v}});
    } else if (v.empty()) {
      io_.out << "ok: " << productions << " productions\n";
    } else {
      for (const auto& s : v) io_.err << "violation: " << s << '\n';
    }
    return v.empty() ? kExitOk : kExitInvalid;
  }

  static std::string rules(const std::vector<std::size_t>& idx) {
    std::string s = " [";
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
    return s + "]";
  }

  void print_trace(const Grammar& g, const DerivationTrace& t) const {
    io_.out << "   " << render_form(g, t.initial) << '\n';
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
      const auto& s = t.steps[k];
      io_.out << "=> " << render_form(g, s.after) << "    [" << k + 1 << ": " << render_production(g, s.production)
              << " @" << s.position << "]\n";
    }
    io_.out << render_form(g, t.final_form()) << '\n';
  }

  const Options& o_;
  CliStreams io_;
  bool styled_ = false;
};

void add_grammar_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--corpus", o.corpus, "Built-in grammar id (see `corpus list`)");
  cmd->add_option("--grammar,-g", o.grammar_file, "Path to a .grm file");
}

void add_limits(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-steps", o.limits.max_steps, "Maximum derivation length")->capture_default_str();
  cmd->add_option("--max-form-len", o.limits.max_form_len, "Forms this long or longer are pruned")
      ->capture_default_str();
  cmd->add_option("--max-visited", o.limits.max_visited, "Maximum distinct search nodes")->capture_default_str();
  cmd->add_option("--max-len", o.limits.max_string_len, "Longest terminal string to enumerate")
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, CliStreams io) {
  Options o;
  CLI::App app{"Functional grammar workbench", "fgw"};
  app.require_subcommand(1);

  auto json_flag = [&o](CLI::App* cmd) { cmd->add_flag("--json", o.json, "Emit JSON on standard output"); };

  auto* validate = app.add_subcommand("validate", "Check a grammar's structural invariants");
  add_grammar_source(validate, o);
  json_flag(validate);

  auto* enumerate = app.add_subcommand("enumerate", "List the bounded language (or forms) of a grammar");
  add_grammar_source(enumerate, o);
  add_limits(enumerate, o);
  enumerate->add_flag("--forms", o.forms, "List every reachable sentential form instead");
  json_flag(enumerate);

  auto* derive = app.add_subcommand("derive", "Search for a derivation of a target form");
  add_grammar_source(derive, o);
  add_limits(derive, o);
  derive->add_option("--target,-t", o.target, "Target form, e.g. \"a a b\" or aab")->required();
  derive->add_option("--inject", o.inject, "Constrain injections: NT:ORDER, e.g. N:aabba");
  json_flag(derive);

  auto* classify = app.add_subcommand("classify", "Producer/consumer/modifier roles and grammar verdict");
  add_grammar_source(classify, o);
  add_limits(classify, o);
  classify->add_flag("--normalize", o.normalize, "Normalize context-sensitive producers first");
  json_flag(classify);

  auto* analyze = app.add_subcommand("analyze", "Buffer discipline of derivation traces");
  add_grammar_source(analyze, o);
  add_limits(analyze, o);
  analyze->add_option("--left", o.left, "Left delimiter non-terminal")->capture_default_str();
  analyze->add_option("--right", o.right, "Right delimiter non-terminal")->capture_default_str();
  analyze->add_option("--priority", o.priority, "Priority order, highest first, e.g. \"B>A\"");
  analyze->add_option("--seeds", o.seeds, "Number of seeded random derivations")->capture_default_str();
  analyze->add_option("--trace", o.trace_files, "Analyze these trace files instead of random derivations");
  json_flag(analyze);

  auto* indices = app.add_subcommand("indices", "Production/consumption/transient index of a trace");
  add_grammar_source(indices, o);
  indices->add_option("--trace", o.trace_files, "Trace JSON file")->required();
  json_flag(indices);

  auto* step = app.add_subcommand("step", "Interactive derivation stepping on standard input");
  add_grammar_source(step, o);
  step->add_option("--seed", o.seed, "Seed for `random N`")->capture_default_str();

  auto* pda = app.add_subcommand("pda", "Run a pushdown automaton and collect its stack configurations");
  pda->add_option("--pda", o.pda_file, "Path to a .pda file");
  pda->add_option("--builtin", o.pda_builtin, "Built-in automaton (default PARENS_PDA)");
  pda->add_option("--inputs", o.inputs_file, "File with one input per line (eps for the empty input)");
  pda->add_option("--input", o.inputs, "Input string; may be repeated");
  pda->add_option("--language-of", o.language_of, "Use the bounded language of a corpus grammar as inputs");
  pda->add_option("--max-len", o.limits.max_string_len, "Longest input taken from --language-of")
      ->capture_default_str();
  pda->add_option("--step-limit", o.step_limit, "Maximum transitions along any run")->capture_default_str();
  json_flag(pda);

  auto* corpus = app.add_subcommand("corpus", "List or print built-in grammars");
  corpus->add_option("action", o.corpus_action, "list | show")->required();
  corpus->add_option("id", o.corpus_id, "Grammar id for show");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    app.exit(e, io.out, io.err);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  Session s(o, io);
  try {
    o.limits.validate();
    if (validate->parsed()) return s.validate();
    if (enumerate->parsed()) return s.enumerate();
    if (derive->parsed()) return s.derive();
    if (classify->parsed()) return s.classify();
    if (analyze->parsed()) return s.analyze();
    if (indices->parsed()) return s.indices();
    if (step->parsed()) return s.step();
    if (pda->parsed()) return s.pda();
    if (corpus->parsed()) return s.corpus();
  } catch (const UsageError& e) {
    io.err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}

}  // namespace fgw
