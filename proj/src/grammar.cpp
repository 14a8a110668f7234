#include "fgw/grammar.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

#include "fgw/error.hpp"

namespace fgw {

namespace {

constexpr std::string_view kEpsToken = "eps";
constexpr std::string_view kEpsGlyph = "ε";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, std::size_t first_column = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + first_column});
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) out.push_back(std::move(t.text));
  return out;
}

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

bool is_valid_symbol_name(std::string_view name) {
  if (name.empty()) return false;
  if (name == "->" || name == "|" || name == kEpsToken || name == "#" || name == kEpsGlyph) return false;
  return std::none_of(name.begin(), name.end(), [](char c) { return is_space(c) || c == '#' || c == '|'; });
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate_grammar(const GrammarDef& def) {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> terms(def.terminals.begin(), def.terminals.end());
  std::set<std::string, std::less<>> nonterms(def.nonterminals.begin(), def.nonterminals.end());

  for (const auto* list : {&def.terminals, &def.nonterminals}) {
    for (const auto& s : *list) {
      if (!is_valid_symbol_name(s)) out.push_back("invalid symbol name " + quote(s));
    }
  }
  for (const auto& s : terms) {
    if (nonterms.contains(s)) out.push_back("symbol " + quote(s) + " declared as both terminal and non-terminal");
  }
  if (!nonterms.contains(def.start)) out.push_back("start not a declared non-terminal: " + quote(def.start));

  for (std::size_t k = 0; k < def.rules.size(); ++k) {
    const RuleDef& r = def.rules[k];
    const std::string where = "rule " + std::to_string(k) + ": ";
    if (r.lhs.empty()) out.push_back(where + "empty lhs");
    bool has_nonterminal = false;
    std::set<std::string> reported;
    for (const auto* side : {&r.lhs, &r.rhs}) {
      for (const auto& s : *side) {
        const bool nt = nonterms.contains(s);
        if (side == &r.lhs && nt) has_nonterminal = true;
        if (!nt && !terms.contains(s) && reported.insert(s).second) {
          out.push_back(where + "undeclared symbol " + quote(s));
        }
      }
    }
    if (!r.lhs.empty() && !has_nonterminal) out.push_back(where + "lhs has no non-terminal");
  }
  return out;
}

// ---------------------------------------------------------------------------

Grammar Grammar::from_def(const GrammarDef& def) {
  if (auto v = validate_grammar(def); !v.empty()) throw ValidationError(std::move(v));

  Grammar g;
  g.name_ = def.name;
  auto intern = [&g](const std::string& name, SymbolKind kind) {
    if (g.by_name_.contains(name)) return;
    if (g.symbols_.size() >= std::numeric_limits<std::uint16_t>::max()) {
      throw ValidationError({"too many symbols"});
    }
    const auto id = static_cast<SymbolId>(g.symbols_.size());
    g.symbols_.push_back({name, kind});
    g.by_name_.emplace(name, id);
    (kind == SymbolKind::Terminal ? g.terminals_ : g.nonterminals_).push_back(id);
  };
  for (const auto& t : def.terminals) intern(t, SymbolKind::Terminal);
  for (const auto& n : def.nonterminals) intern(n, SymbolKind::NonTerminal);
  g.start_ = g.by_name_.at(def.start);

  g.by_first_.resize(g.symbols_.size());
  for (std::size_t k = 0; k < def.rules.size(); ++k) {
    Production p;
    p.index = k;
    for (const auto& s : def.rules[k].lhs) p.lhs.push_back(g.by_name_.at(s));
    for (const auto& s : def.rules[k].rhs) p.rhs.push_back(g.by_name_.at(s));
    g.deltas_.push_back(static_cast<int>(g.terminal_count(p.rhs)) - static_cast<int>(g.terminal_count(p.lhs)));
    g.by_first_[static_cast<std::size_t>(p.lhs.front())].push_back(k);
    g.productions_.push_back(std::move(p));
  }
  return g;
}

std::optional<SymbolId> Grammar::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

SymbolId Grammar::id(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw ArgumentError("unknown symbol " + quote(name) + " in grammar " + quote(name_));
}

std::size_t Grammar::terminal_count(std::span<const SymbolId> form) const {
  return static_cast<std::size_t>(std::count_if(form.begin(), form.end(), [this](SymbolId s) { return is_terminal(s); }));
}

bool Grammar::is_terminal_form(std::span<const SymbolId> form) const {
  return std::all_of(form.begin(), form.end(), [this](SymbolId s) { return is_terminal(s); });
}

GrammarDef Grammar::to_def() const {
  GrammarDef def;
  def.name = name_;
  def.start = name_of(start_);
  for (SymbolId t : terminals_) def.terminals.push_back(name_of(t));
  for (SymbolId n : nonterminals_) def.nonterminals.push_back(name_of(n));
  for (const auto& p : productions_) def.rules.push_back({form_tokens(*this, p.lhs), form_tokens(*this, p.rhs)});
  return def;
}

// ---------------------------------------------------------------------------

GrammarDef parse_grammar_def(std::string_view source) {
  GrammarDef def;
  bool have_start = false;
  bool have_terminals = false;
  bool have_name = false;
  std::set<std::string, std::less<>> terminal_set;
  std::vector<std::pair<Token, std::size_t>> rule_tokens;  // (token, line) for nonterminal inference

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    std::string_view line = source.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    auto check_name = [&](const Token& t) {
      if (!is_valid_symbol_name(t.text)) throw ParseError("invalid symbol name " + quote(t.text), line_no, t.column);
    };

    const std::string& head = tokens.front().text;
    auto header_value = [&](std::string_view key) -> std::optional<std::vector<Token>> {
      if (head.rfind(key, 0) != 0) return std::nullopt;
      std::vector<Token> rest;
      if (head.size() > key.size()) {
        rest.push_back({head.substr(key.size()), tokens.front().column + key.size()});
      }
      rest.insert(rest.end(), tokens.begin() + 1, tokens.end());
      return rest;
    };

    if (auto v = header_value("start:")) {
      if (have_start) throw ParseError("duplicate start: header", line_no, tokens.front().column);
      if (v->size() != 1) throw ParseError("start: expects exactly one symbol", line_no, tokens.front().column);
      check_name(v->front());
      def.start = v->front().text;
      have_start = true;
      continue;
    }
    if (auto v = header_value("name:")) {
      if (have_name) throw ParseError("duplicate name: header", line_no, tokens.front().column);
      if (v->size() != 1) throw ParseError("name: expects exactly one token", line_no, tokens.front().column);
      def.name = v->front().text;
      have_name = true;
      continue;
    }
    if (auto v = header_value("terminals:")) {
      have_terminals = true;
      for (const auto& t : *v) {
        check_name(t);
        if (terminal_set.insert(t.text).second) def.terminals.push_back(t.text);
      }
      continue;
    }

    // Rule line.
    auto arrow = std::find_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.text == "->"; });
    if (arrow == tokens.end()) throw ParseError("expected '->' or a header", line_no, tokens.front().column);
    if (arrow == tokens.begin()) throw ParseError("empty lhs", line_no, arrow->column);
    if (auto again = std::find_if(arrow + 1, tokens.end(), [](const Token& t) { return t.text == "->"; });
        again != tokens.end()) {
      throw ParseError("unexpected second '->'", line_no, again->column);
    }

    std::vector<std::string> lhs;
    for (auto it = tokens.begin(); it != arrow; ++it) {
      if (it->text == "|" || it->text == kEpsToken) throw ParseError("unexpected " + quote(it->text) + " in lhs", line_no, it->column);
      check_name(*it);
      lhs.push_back(it->text);
      rule_tokens.emplace_back(*it, line_no);
    }

    std::vector<Token> alt;
    auto flush = [&](std::size_t column) {
      if (alt.empty()) throw ParseError("empty alternative (write 'eps' for the empty string)", line_no, column);
      RuleDef rule{lhs, {}};
      if (alt.size() == 1 && alt.front().text == kEpsToken) {
        def.rules.push_back(std::move(rule));
      } else {
        for (const auto& t : alt) {
          if (t.text == kEpsToken) throw ParseError("'eps' must stand alone in an alternative", line_no, t.column);
          check_name(t);
          rule.rhs.push_back(t.text);
          rule_tokens.emplace_back(t, line_no);
        }
        def.rules.push_back(std::move(rule));
      }
      alt.clear();
    };
    std::size_t alt_column = arrow->column + 2;
    for (auto it = arrow + 1; it != tokens.end(); ++it) {
      if (it->text == "|") {
        flush(it->column);
        alt_column = it->column + 1;
      } else {
        alt.push_back(*it);
      }
    }
    flush(alt_column);
  }

  if (!have_start) throw ParseError("missing start: header", line_no, 1);
  if (!have_terminals) throw ParseError("missing terminals: header", line_no, 1);

  std::set<std::string, std::less<>> seen;
  auto add_nonterminal = [&](const std::string& s) {
    if (!terminal_set.contains(s) && seen.insert(s).second) def.nonterminals.push_back(s);
  };
  add_nonterminal(def.start);
  for (const auto& [tok, line] : rule_tokens) add_nonterminal(tok.text);
  return def;
}

Grammar parse_grammar(std::string_view source) { return Grammar::from_def(parse_grammar_def(source)); }

std::string serialize_grammar(const Grammar& g) {
  std::ostringstream out;
  if (!g.name().empty()) out << "name: " << g.name() << '\n';
  out << "start: " << g.name_of(g.start()) << '\n';
  out << "terminals:";
  for (SymbolId t : g.terminals()) out << ' ' << g.name_of(t);
  out << '\n';

  auto side = [&g](const SententialForm& f) {
    return f.empty() ? std::string(kEpsToken) : render_form(g, f);
  };
  const auto prods = g.productions();
  for (std::size_t k = 0; k < prods.size();) {
    out << side(prods[k].lhs) << " -> " << side(prods[k].rhs);
    std::size_t j = k + 1;
    for (; j < prods.size() && prods[j].lhs == prods[k].lhs; ++j) out << " | " << side(prods[j].rhs);
    out << '\n';
    k = j;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

std::vector<std::string> form_tokens(const Grammar& g, std::span<const SymbolId> form) {
  std::vector<std::string> out;
  out.reserve(form.size());
  for (SymbolId s : form) out.push_back(g.name_of(s));
  return out;
}

std::string render_form(const Grammar& g, std::span<const SymbolId> form, bool compact) {
  if (form.empty()) return std::string(kEpsGlyph);
  const bool joinable =
      compact && std::all_of(form.begin(), form.end(), [&g](SymbolId s) { return g.name_of(s).size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (i > 0 && !joinable) out += ' ';
    out += g.name_of(form[i]);
  }
  return out;
}

SententialForm form_from_tokens(const Grammar& g, std::span<const std::string> tokens) {
  SententialForm out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto id = g.find(t);
    if (!id) throw ArgumentError("foreign symbol " + quote(t) + " for grammar " + quote(g.name()));
    out.push_back(*id);
  }
  return out;
}

std::string render_production(const Grammar& g, std::size_t index) {
  const Production& p = g.production(index);
  return render_form(g, p.lhs) + " -> " + render_form(g, p.rhs);
}

SententialForm parse_form(const Grammar& g, std::string_view text) {
  auto tokens = split_ws(text);
  if (tokens.empty()) return {};
  if (tokens.size() == 1 && (tokens[0] == kEpsToken || tokens[0] == kEpsGlyph)) return {};
  if (tokens.size() == 1 && !g.find(tokens[0]) && tokens[0].size() > 1) {
    const auto terms = g.terminals();
    const bool single_char =
        !terms.empty() && std::all_of(terms.begin(), terms.end(), [&g](SymbolId t) { return g.name_of(t).size() == 1; });
    if (single_char) {
      std::vector<std::string> chars;
      for (char c : tokens[0]) chars.emplace_back(1, c);
      return form_from_tokens(g, chars);
    }
  }
  return form_from_tokens(g, tokens);
}

}  // namespace fgw
