#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fgw {

enum class SymbolKind : std::uint8_t { Terminal, NonTerminal };

/// Index of a symbol in its grammar's symbol table.
enum class SymbolId : std::uint16_t {};

struct Symbol {
  std::string name;
  SymbolKind kind;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// A sentential form; empty denotes epsilon.
using SententialForm = std::vector<SymbolId>;

struct FormHash {
  std::size_t operator()(const SententialForm& f) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (SymbolId s : f) {
      h ^= static_cast<std::size_t>(s) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// True for names usable as grammar symbols.
bool is_valid_symbol_name(std::string_view name);

// ---------------------------------------------------------------------------
// Unvalidated, name-based description of a grammar. This is what the parser
// produces and what validate_grammar inspects.

struct RuleDef {
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;

  friend bool operator==(const RuleDef&, const RuleDef&) = default;
};

struct GrammarDef {
  std::string name;
  std::string start;
  std::vector<std::string> terminals;
  std::vector<std::string> nonterminals;
  std::vector<RuleDef> rules;

  friend bool operator==(const GrammarDef&, const GrammarDef&) = default;
};

/// Every violated structural invariant of `def`; empty means ok.
std::vector<std::string> validate_grammar(const GrammarDef& def);

// ---------------------------------------------------------------------------

struct Production {
  SententialForm lhs;
  SententialForm rhs;
  std::size_t index = 0;
};

/// Validated, immutable unrestricted grammar with an interned symbol table.
class Grammar {
 public:
  /// Throws ValidationError listing every violation.
  static Grammar from_def(const GrammarDef& def);

  const std::string& name() const { return name_; }
  SymbolId start() const { return start_; }

  std::span<const Production> productions() const { return productions_; }
  const Production& production(std::size_t index) const { return productions_.at(index); }

  std::size_t symbol_count() const { return symbols_.size(); }
  const Symbol& symbol(SymbolId id) const { return symbols_[static_cast<std::size_t>(id)]; }
  const std::string& name_of(SymbolId id) const { return symbol(id).name; }
  bool is_terminal(SymbolId id) const { return symbol(id).kind == SymbolKind::Terminal; }
  bool contains(SymbolId id) const { return static_cast<std::size_t>(id) < symbols_.size(); }

  std::optional<SymbolId> find(std::string_view name) const;
  /// Throws ArgumentError for unknown names.
  SymbolId id(std::string_view name) const;

  std::span<const SymbolId> terminals() const { return terminals_; }
  std::span<const SymbolId> nonterminals() const { return nonterminals_; }

  std::size_t terminal_count(std::span<const SymbolId> form) const;
  bool is_terminal_form(std::span<const SymbolId> form) const;

  /// #terminals(rhs) - #terminals(lhs) of a production.
  int terminal_delta(std::size_t production) const { return deltas_.at(production); }

  /// Productions whose lhs starts with `first`, in index order.
  std::span<const std::size_t> productions_starting_with(SymbolId first) const {
    return by_first_[static_cast<std::size_t>(first)];
  }

  GrammarDef to_def() const;

 private:
  Grammar() = default;

  std::string name_;
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, SymbolId> by_name_;
  std::vector<SymbolId> terminals_;
  std::vector<SymbolId> nonterminals_;
  SymbolId start_{};
  std::vector<Production> productions_;
  std::vector<int> deltas_;
  std::vector<std::vector<std::size_t>> by_first_;
};

inline std::vector<std::string> validate_grammar(const Grammar& g) { return validate_grammar(g.to_def()); }

// ---------------------------------------------------------------------------
// `.grm` text format

/// Parses and validates a `.grm` document. Throws ParseError or ValidationError.
Grammar parse_grammar(std::string_view source);
/// Syntax only; no structural validation.
GrammarDef parse_grammar_def(std::string_view source);
/// Emits `.grm` text; consecutive productions sharing an lhs become alternatives.
std::string serialize_grammar(const Grammar& g);

// ---------------------------------------------------------------------------
// Forms as text

/// Space-separated tokens, or "ε" for the empty form. With `compact`, tokens are
/// concatenated when every one of them is a single character.
std::string render_form(const Grammar& g, std::span<const SymbolId> form, bool compact = false);
std::vector<std::string> form_tokens(const Grammar& g, std::span<const SymbolId> form);

/// Parses whitespace-separated tokens; "", "eps" and "ε" denote the empty form.
/// When every terminal is a single character, a whitespace-free string that is
/// not itself a symbol is split into characters ("aab" == "a a b").
SententialForm parse_form(const Grammar& g, std::string_view text);
SententialForm form_from_tokens(const Grammar& g, std::span<const std::string> tokens);

/// "lhs -> rhs" with ε for an empty side.
std::string render_production(const Grammar& g, std::size_t index);

}  // namespace fgw
