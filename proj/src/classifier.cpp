#include "fgw/classifier.hpp"

#include <algorithm>
#include <set>

namespace fgw {

const char* to_string(GrammarVerdict v) {
  switch (v) {
    case GrammarVerdict::PureNull: return "PureNull";
    case GrammarVerdict::PurelyFunctionalUpToBound: return "PurelyFunctionalUpToBound";
    case GrammarVerdict::FunctionalUpToBound: return "FunctionalUpToBound";
    case GrammarVerdict::InconclusiveUpToBound: return "InconclusiveUpToBound";
  }
  return "?";
}

RoleWitnesses classify_cf_pnt(const Grammar& g) {
  // For each flagged symbol: the production that flagged it and, if that rhs
  // had no terminal, the producer it relies on.
  struct Reason {
    std::size_t production;
    std::optional<SymbolId> via;
  };
  std::map<SymbolId, Reason> flagged;

  for (bool changed = true; changed;) {
    changed = false;
    for (const Production& p : g.productions()) {
      if (p.lhs.size() != 1 || flagged.contains(p.lhs.front())) continue;
      const SymbolId v = p.lhs.front();
      if (std::any_of(p.rhs.begin(), p.rhs.end(), [&g](SymbolId s) { return g.is_terminal(s); })) {
        flagged.emplace(v, Reason{p.index, std::nullopt});
        changed = true;
        continue;
      }
      auto dep = std::find_if(p.rhs.begin(), p.rhs.end(), [&](SymbolId s) { return flagged.contains(s); });
      if (dep != p.rhs.end()) {
        flagged.emplace(v, Reason{p.index, *dep});
        changed = true;
      }
    }
  }

  RoleWitnesses out;
  for (const auto& [v, reason] : flagged) {
    std::vector<std::size_t> chain{reason.production};
    for (auto next = reason.via; next; next = flagged.at(*next).via) chain.push_back(flagged.at(*next).production);
    out.emplace(v, std::move(chain));
  }
  return out;
}

RoleWitnesses classify_cs_pnt(const Grammar& g) {
  RoleWitnesses out;
  for (const Production& p : g.productions()) {
    if (p.lhs.size() <= 1 || g.terminal_delta(p.index) <= 0) continue;
    std::set<SymbolId> in_lhs;
    for (SymbolId s : p.lhs) {
      if (!g.is_terminal(s) && in_lhs.insert(s).second) out[s].push_back(p.index);
    }
  }
  return out;
}

RoleWitnesses classify_cnt(const Grammar& g) {
  RoleWitnesses out;
  for (const Production& p : g.productions()) {
    if (g.terminal_delta(p.index) >= 0) continue;
    std::set<SymbolId> hit;
    for (std::size_t i = 0; i < p.lhs.size(); ++i) {
      const SymbolId v = p.lhs[i];
      if (g.is_terminal(v)) continue;
      const bool left = i > 0 && g.is_terminal(p.lhs[i - 1]);
      const bool right = i + 1 < p.lhs.size() && g.is_terminal(p.lhs[i + 1]);
      if ((left || right) && hit.insert(v).second) out[v].push_back(p.index);
    }
  }
  return out;
}

namespace {

void widen(IndexRange& r, long v, bool first) {
  if (first) {
    r = {v, v};
  } else {
    r.min = std::min(r.min, v);
    r.max = std::max(r.max, v);
  }
}

}  // namespace

ClassificationReport classify_all(const Grammar& g, const SearchLimits& lim) {
  lim.validate();
  ClassificationReport report;
  report.limits = lim;

  const auto cf = classify_cf_pnt(g);
  const auto cs = classify_cs_pnt(g);
  const auto cnt = classify_cnt(g);

  bool any_producer = false;
  for (SymbolId v : g.nonterminals()) {
    RoleFlags f;
    Evidence e;
    if (auto it = cf.find(v); it != cf.end()) f.pnt_cf = true, e.pnt_cf = it->second;
    if (auto it = cs.find(v); it != cs.end()) f.pnt_cs = true, e.pnt_cs = it->second;
    if (auto it = cnt.find(v); it != cnt.end()) f.cnt = true, e.cnt = it->second;
    f.mnt = !f.is_producer() && !f.cnt;
    any_producer = any_producer || f.is_producer();
    report.roles.emplace(v, f);
    report.evidence.emplace(v, std::move(e));
  }

  const LanguageResult lang = enumerate_language(g, lim);
  report.language_pruned = lang.pruned;
  bool non_empty_word = false;
  IndexSummary summary;
  for (const auto& [word, trace] : lang.words) {
    report.language.push_back(word);
    non_empty_word = non_empty_word || !word.empty();
    const TraceIndices ix = trace_indices(g, trace);
    const bool first = summary.derivations == 0;
    widen(summary.production, ix.production, first);
    widen(summary.consumption, ix.consumption, first);
    widen(summary.transient, ix.transient, first);
    ++summary.derivations;
  }
  if (summary.derivations > 0) report.index_summary = summary;

  if (!any_producer) {
    report.verdict = GrammarVerdict::PureNull;
  } else if (non_empty_word) {
    report.verdict = GrammarVerdict::FunctionalUpToBound;
  } else if (!lang.words.empty()) {
    report.verdict = GrammarVerdict::PurelyFunctionalUpToBound;
  } else {
    report.verdict = GrammarVerdict::InconclusiveUpToBound;
  }
  return report;
}

Grammar normalize_cs_pnt(const Grammar& g) {
  GrammarDef def = g.to_def();
  std::set<std::string> taken;
  for (const auto& s : def.terminals) taken.insert(s);
  for (const auto& s : def.nonterminals) taken.insert(s);

  std::vector<RuleDef> rules;
  std::size_t ordinal = 0;
  for (const Production& p : g.productions()) {
    RuleDef r = def.rules[p.index];
    if (p.lhs.size() <= 1 || g.terminal_delta(p.index) <= 0) {
      rules.push_back(std::move(r));
      continue;
    }
    std::string fresh = "C" + std::to_string(++ordinal);
    while (taken.contains(fresh)) fresh += '\'';
    taken.insert(fresh);
    def.nonterminals.push_back(fresh);
    rules.push_back({r.lhs, {fresh}});
    rules.push_back({{fresh}, std::move(r.rhs)});
  }
  def.rules = std::move(rules);
  return Grammar::from_def(def);
}

}  // namespace fgw
