#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgw/grammar.hpp"

namespace fgw {

/// An occurrence of a production's lhs inside a form.
struct Match {
  std::size_t production = 0;
  std::size_t position = 0;

  friend bool operator==(const Match&, const Match&) = default;
};

struct DerivationStep {
  std::size_t production = 0;
  std::size_t position = 0;
  SententialForm after;

  friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

struct DerivationTrace {
  std::string grammar;
  SententialForm initial;
  std::vector<DerivationStep> steps;

  const SententialForm& final_form() const { return steps.empty() ? initial : steps.back().after; }
  /// Form before step k (k == steps.size() gives the final form).
  const SententialForm& form_at(std::size_t k) const { return k == 0 ? initial : steps[k - 1].after; }

  friend bool operator==(const DerivationTrace&, const DerivationTrace&) = default;
};

/// Bounds that make every search total.
///
/// `max_steps` bounds derivation length, `max_visited` the number of distinct
/// search nodes, and `max_string_len` the terminal strings reported by
/// enumerate_language (inclusive). `max_form_len` is exclusive: a form with
/// `max_form_len` or more symbols is pruned.
struct SearchLimits {
  std::size_t max_steps = 64;
  std::size_t max_form_len = 24;
  std::size_t max_visited = 2'000'000;
  std::size_t max_string_len = 8;

  /// Throws ArgumentError unless every limit is strictly positive.
  void validate() const;
  SearchLimits doubled() const {
    return {max_steps * 2, max_form_len * 2, max_visited * 2, max_string_len};
  }

  friend bool operator==(const SearchLimits&, const SearchLimits&) = default;
};

struct TraceIndices {
  long production = 0;
  long consumption = 0;
  long transient = 0;

  friend bool operator==(const TraceIndices&, const TraceIndices&) = default;
};

enum class SearchStatus { Found, ExhaustedComplete, ExhaustedPruned };

const char* to_string(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::ExhaustedComplete;
  /// Present iff status == Found.
  std::optional<DerivationTrace> trace;
  std::size_t visited = 0;
};

/// Restricts which steps a search may take. The trace-so-far is summarised by
/// a small state value; searches merge nodes only when both form and state
/// agree, so a filter must encode in its state everything it depends on.
class StepFilter {
 public:
  using State = std::uint32_t;

  virtual ~StepFilter() = default;

  virtual State initial() const { return 0; }
  /// State after taking `m` from `form`, or nullopt to deny the step.
  virtual std::optional<State> advance(State s, const Grammar& g, const SententialForm& form,
                                       const Match& m) const = 0;
  /// Whether a derivation ending in state `s` may be reported as Found.
  virtual bool accepts(State) const { return true; }
};

/// Stateless filter from a plain predicate over (current form, candidate match).
class PredicateFilter final : public StepFilter {
 public:
  using Predicate = std::function<bool(const Grammar&, const SententialForm&, const Match&)>;

  explicit PredicateFilter(Predicate allow) : allow_(std::move(allow)) {}

  std::optional<State> advance(State s, const Grammar& g, const SententialForm& form, const Match& m) const override {
    if (!allow_(g, form, m)) return std::nullopt;
    return s;
  }

 private:
  Predicate allow_;
};

/// Forces the terminals introduced by `injector` (through productions whose lhs
/// is exactly the injector) to follow `order`. The state counts how many
/// symbols of `order` have been injected.
class InjectionFilter final : public StepFilter {
 public:
  /// Throws ArgumentError if `injector` is not a non-terminal with at least one
  /// single-symbol-lhs production, or if `order` contains a non-terminal.
  InjectionFilter(const Grammar& g, SymbolId injector, SententialForm order);

  std::optional<State> advance(State s, const Grammar& g, const SententialForm& form, const Match& m) const override;
  bool accepts(State s) const override { return s == order_.size(); }

 private:
  SymbolId injector_;
  SententialForm order_;
  std::vector<bool> is_injector_rule_;
  std::vector<SententialForm> injected_;  // terminal subsequence of each rhs
};

/// Every (production, position) whose lhs occurs in `f`, ordered by
/// (position, production index). Throws ArgumentError on foreign symbols.
std::vector<Match> find_matches(const Grammar& g, const SententialForm& f);

/// `f` with the match's lhs span replaced by the rhs. Throws MatchError if the
/// lhs does not occur at the position.
SententialForm apply_at(const Grammar& g, const SententialForm& f, const Match& m);

std::vector<std::pair<Match, SententialForm>> successors(const Grammar& g, const SententialForm& f);

/// Breadth-first search from the start symbol for a derivation of `target`.
SearchOutcome bfs_derive(const Grammar& g, const SententialForm& target, const SearchLimits& lim,
                         const StepFilter* filter = nullptr);

struct LanguageResult {
  /// Terminal strings with a witness derivation, in discovery order.
  std::vector<std::pair<SententialForm, DerivationTrace>> words;
  bool pruned = false;
  std::size_t visited = 0;
};

/// Terminal forms of length <= max_string_len reachable within the limits.
LanguageResult enumerate_language(const Grammar& g, const SearchLimits& lim);

struct FormsResult {
  /// In breadth-first discovery order.
  std::vector<SententialForm> forms;
  bool pruned = false;
  std::size_t visited = 0;
};

FormsResult enumerate_forms(const Grammar& g, const SearchLimits& lim);

/// Re-applies every step and checks each recorded form. Throws ReplayError on
/// the first divergence and ArgumentError if the trace names another grammar.
SententialForm replay_trace(const Grammar& g, const DerivationTrace& t);

TraceIndices trace_indices(const Grammar& g, const DerivationTrace& t);

SearchOutcome constrained_derive(const Grammar& g, SymbolId injector, const SententialForm& injection_order,
                                 const SententialForm& target, const SearchLimits& lim);

}  // namespace fgw
