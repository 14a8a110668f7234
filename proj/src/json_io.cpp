#include "fgw/json_io.hpp"

#include <algorithm>

#include "fgw/error.hpp"

namespace fgw {

namespace {

Json tokens_json(const Grammar& g, const SententialForm& f) { return Json(form_tokens(g, f)); }

SententialForm tokens_from(const Grammar& g, const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of tokens", 1, 1);
  std::vector<std::string> tokens;
  for (const auto& t : j) {
    if (!t.is_string()) throw ParseError(std::string(what) + " must contain only strings", 1, 1);
    tokens.push_back(t.get<std::string>());
  }
  return form_from_tokens(g, tokens);
}

std::size_t index_from(const Json& j, const char* what) {
  if (!j.is_number_unsigned()) throw ParseError(std::string(what) + " must be a non-negative integer", 1, 1);
  return j.get<std::size_t>();
}

Json range(const IndexRange& r) { return Json::array({r.min, r.max}); }

}  // namespace

Json trace_to_json(const Grammar& g, const DerivationTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back(Json{{"rule", s.production}, {"pos", s.position}, {"after", tokens_json(g, s.after)}});
  }
  return Json{{"grammar", t.grammar}, {"initial", tokens_json(g, t.initial)}, {"steps", std::move(steps)}};
}

DerivationTrace trace_from_json(const Grammar& g, const Json& j) {
  if (!j.is_object()) throw ParseError("trace must be a JSON object", 1, 1);
  for (const char* key : {"grammar", "initial", "steps"}) {
    if (!j.contains(key)) throw ParseError(std::string("trace is missing \"") + key + "\"", 1, 1);
  }
  if (!j["grammar"].is_string()) throw ParseError("\"grammar\" must be a string", 1, 1);
  if (!j["steps"].is_array()) throw ParseError("\"steps\" must be an array", 1, 1);

  DerivationTrace t;
  t.grammar = j["grammar"].get<std::string>();
  t.initial = tokens_from(g, j["initial"], "\"initial\"");
  for (const auto& s : j["steps"]) {
    if (!s.is_object() || !s.contains("rule") || !s.contains("pos") || !s.contains("after")) {
      throw ParseError("each step needs \"rule\", \"pos\" and \"after\"", 1, 1);
    }
    t.steps.push_back({index_from(s["rule"], "\"rule\""), index_from(s["pos"], "\"pos\""),
                       tokens_from(g, s["after"], "\"after\"")});
  }
  return t;
}

DerivationTrace parse_trace_json(const Grammar& g, std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offsets are 1-based in nlohmann; convert to line/column.
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw ParseError("invalid JSON", line, col);
  }
  return trace_from_json(g, j);
}

Json limits_to_json(const SearchLimits& lim) {
  return Json{{"max_steps", lim.max_steps},
              {"max_form_len", lim.max_form_len},
              {"max_visited", lim.max_visited},
              {"max_string_len", lim.max_string_len}};
}

Json indices_to_json(const TraceIndices& ix) {
  return Json{{"pi", ix.production}, {"ci", ix.consumption}, {"ti", ix.transient}};
}

Json report_to_json(const Grammar& g, const ClassificationReport& r) {
  Json roles = Json::object();
  Json evidence = Json::object();
  for (SymbolId v : g.nonterminals()) {
    const RoleFlags& f = r.roles.at(v);
    const Evidence& e = r.evidence.at(v);
    Json flags = Json::array();
    Json ev = Json::object();
    if (f.pnt_cf) flags.push_back("pnt_cf"), ev["pnt_cf"] = e.pnt_cf;
    if (f.pnt_cs) flags.push_back("pnt_cs"), ev["pnt_cs"] = e.pnt_cs;
    if (f.cnt) flags.push_back("cnt"), ev["cnt"] = e.cnt;
    if (f.mnt) flags.push_back("mnt");
    roles[g.name_of(v)] = std::move(flags);
    evidence[g.name_of(v)] = std::move(ev);
  }
  Json summary = nullptr;
  if (r.index_summary) {
    summary = Json{{"pi", range(r.index_summary->production)},
                   {"ci", range(r.index_summary->consumption)},
                   {"ti", range(r.index_summary->transient)}};
  }
  Json language = Json::array();
  for (const auto& w : r.language) language.push_back(w.empty() ? std::string() : render_form(g, w));
  return Json{{"roles", std::move(roles)},
              {"evidence", std::move(evidence)},
              {"verdict", to_string(r.verdict)},
              {"limits", limits_to_json(r.limits)},
              {"index_summary", std::move(summary)},
              {"language", std::move(language)},
              {"language_pruned", r.language_pruned}};
}

Json discipline_to_json(const DisciplineVerdict& v) {
  auto ends = [](const std::set<End>& s) {
    Json out = Json::array();
    for (End e : s) out.push_back(to_string(e));
    return out;
  };
  Json histogram = Json::object();
  for (const auto& [op, n] : v.op_histogram) histogram[to_string(op)] = n;
  Json violations = Json::array();
  for (const auto& s : v.violations) {
    violations.push_back(Json{{"trace", s.trace}, {"step", s.step}, {"op", to_string(s.op)}});
  }
  return Json{{"verdict", to_string(v.verdict)},
              {"insert_ends", ends(v.insert_ends)},
              {"delete_ends", ends(v.delete_ends)},
              {"histogram", std::move(histogram)},
              {"violations", std::move(violations)}};
}

Json pda_run_to_json(const PdaSpec& spec, const PdaRun& run) {
  Json configs = Json::array();
  for (const Stack& s : run.configs) configs.push_back(render_stack(spec, s));
  return Json{{"accepted", run.accepted}, {"inconclusive", run.inconclusive}, {"configs", std::move(configs)}};
}

}  // namespace fgw
