// Shared fixtures and independent oracles for the unit and acceptance tests.
// Nothing here calls into the search engine; oracles are built from first
// principles so they can disagree with it.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "fgw/corpus.hpp"
#include "fgw/error.hpp"
#include "fgw/grammar.hpp"
#include "fgw/rewrite.hpp"

namespace fgw::test {

inline SententialForm F(const Grammar& g, const std::string& text) { return parse_form(g, text); }

/// Concatenated symbol names; the empty form spells "".
inline std::string spell(const Grammar& g, const SententialForm& f) {
  std::string s;
  for (SymbolId id : f) s += g.name_of(id);
  return s;
}

inline std::set<std::string> spelled(const Grammar& g, const std::vector<SententialForm>& forms) {
  std::set<std::string> out;
  for (const auto& f : forms) out.insert(spell(g, f));
  return out;
}

inline std::set<std::string> language_of(const Grammar& g, const SearchLimits& lim) {
  std::set<std::string> out;
  for (const auto& [w, t] : enumerate_language(g, lim).words) out.insert(spell(g, w));
  return out;
}

/// Every string over `alphabet` of length at most `n`.
inline std::vector<std::string> all_strings(const std::string& alphabet, std::size_t n) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<std::string> next;
    for (const auto& s : layer)
      for (char c : alphabet) next.push_back(s + c);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// {xx : x in {a,b}*, |x| <= half}
inline std::set<std::string> xx_oracle(std::size_t half) {
  std::set<std::string> out;
  for (const auto& x : all_strings("ab", half)) out.insert(x + x);
  return out;
}

/// Strings over {a,b} of length <= n matching `pattern` (full match).
inline std::set<std::string> regex_oracle(const std::string& pattern, std::size_t n) {
  const std::regex re(pattern);
  std::set<std::string> out;
  for (const auto& s : all_strings("ab", n))
    if (std::regex_match(s, re)) out.insert(s);
  return out;
}

/// Direct scan of every (production, offset) pair; the reference for find_matches.
inline std::vector<Match> brute_force_matches(const Grammar& g, const SententialForm& f) {
  std::vector<Match> out;
  for (std::size_t pos = 0; pos < f.size(); ++pos) {
    for (const auto& p : g.productions()) {
      if (pos + p.lhs.size() > f.size()) continue;
      if (std::equal(p.lhs.begin(), p.lhs.end(), f.begin() + static_cast<std::ptrdiff_t>(pos)))
        out.push_back({p.index, pos});
    }
  }
  std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    return a.position != b.position ? a.position < b.position : a.production < b.production;
  });
  return out;
}

/// Random form over the grammar's full symbol set, biased to contain lhs fragments.
inline SententialForm random_form(const Grammar& g, std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_d(0, max_len);
  std::uniform_int_distribution<std::size_t> sym_d(0, g.symbol_count() - 1);
  std::uniform_int_distribution<std::size_t> prod_d(0, g.productions().size() - 1);
  std::bernoulli_distribution splice(0.3);
  SententialForm f;
  const std::size_t n = len_d(rng);
  while (f.size() < n) {
    if (splice(rng)) {
      const auto& lhs = g.production(prod_d(rng)).lhs;
      f.insert(f.end(), lhs.begin(), lhs.end());
    } else {
      f.push_back(static_cast<SymbolId>(sym_d(rng)));
    }
  }
  return f;
}

inline DerivationTrace random_walk(const Grammar& g, std::mt19937_64& rng, std::size_t steps) {
  DerivationTrace t{g.name(), {g.start()}, {}};
  SententialForm cur = t.initial;
  for (std::size_t k = 0; k < steps; ++k) {
    auto next = successors(g, cur);
    if (next.empty() || cur.size() > 30) break;
    std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
    auto& [m, form] = next[pick(rng)];
    t.steps.push_back({m.production, m.position, form});
    cur = std::move(form);
  }
  return t;
}

/// {aA -> bbA, bA -> A}, started at A, or hosted under S -> aA.
inline Grammar cs_example(bool with_host, bool with_exit = false) {
  std::string src = "name: CS\n";
  src += with_host ? "start: S\nterminals: a b\nS -> a A\n" : "start: A\nterminals: a b\n";
  src += "a A -> b b A\nb A -> A\n";
  if (with_exit) src += "A -> eps\n";
  return parse_grammar(src);
}

/// Appends the step that applies the production printed as `rule` at `pos`.
inline void extend(const Grammar& g, DerivationTrace& t, const std::string& rule, std::size_t pos) {
  for (const auto& p : g.productions()) {
    if (render_production(g, p.index) != rule) continue;
    t.steps.push_back({p.index, pos, apply_at(g, t.final_form(), {p.index, pos})});
    return;
  }
  throw ArgumentError("no production '" + rule + "' in " + g.name());
}

inline DerivationTrace build_trace(const Grammar& g, const std::vector<std::pair<std::string, std::size_t>>& steps) {
  DerivationTrace t{g.name(), {g.start()}, {}};
  for (const auto& [rule, pos] : steps) extend(g, t, rule, pos);
  return t;
}

}  // namespace fgw::test
