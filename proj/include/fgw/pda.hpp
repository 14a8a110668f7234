#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fgw {

enum class AcceptanceMode { FinalState, EmptyStack, Both };

const char* to_string(AcceptanceMode m);

/// (from, input or epsilon, popped top or epsilon) -> (to, pushed symbols).
/// Symbols and states are indices into the owning PdaSpec's tables; pushed
/// symbols are listed bottom to top.
struct PdaTransition {
  std::size_t from = 0;
  std::optional<std::size_t> input;
  std::optional<std::size_t> pop;
  std::size_t to = 0;
  std::vector<std::size_t> push;
};

/// Nondeterministic single-stack pushdown automaton. Stacks are written with
/// the top at the right.
struct PdaSpec {
  std::vector<std::string> states;
  std::vector<std::string> input_alphabet;
  std::vector<std::string> stack_alphabet;
  std::size_t start = 0;
  std::vector<std::size_t> initial_stack;
  std::set<std::size_t> accepting;
  std::vector<PdaTransition> transitions;
  AcceptanceMode mode = AcceptanceMode::FinalState;
};

using Stack = std::vector<std::size_t>;

/// Parses a `.pda` document:
///
///   states: q0 q1
///   start: q0
///   accept: q1
///   input: ( )
///   stack: (
///   mode: final|empty|both
///   initial: <stack symbols, bottom first>     (optional)
///   q0, (, eps -> q0, push (
///
/// Throws ParseError for syntax errors and undeclared states or symbols.
PdaSpec parse_pda(std::string_view source);
std::string serialize_pda(const PdaSpec& spec);

std::span<const std::string_view> builtin_pda_ids();
std::string_view builtin_pda_source(std::string_view id);
PdaSpec load_builtin_pda(std::string_view id);

/// Input tokens as alphabet indices. Whitespace-separated tokens; "", "eps" and
/// "ε" are empty; a single whitespace-free word is split into characters when
/// every input symbol is one character long.
std::vector<std::size_t> parse_pda_input(const PdaSpec& spec, std::string_view text);

/// Stack contents rendered top-at-right; "" for the empty stack. Symbols are
/// concatenated when all are single characters, space-separated otherwise.
std::string render_stack(const PdaSpec& spec, const Stack& stack);

struct PdaRun {
  bool accepted = false;
  /// Step limit reached with configurations still unexplored and no acceptance.
  bool inconclusive = false;
  std::set<Stack> configs;
};

/// Breadth-first exploration of (state, input position, stack) configurations
/// for at most `step_limit` transitions along any path.
PdaRun pda_run(const PdaSpec& spec, std::span<const std::size_t> input, std::size_t step_limit);

struct ConfigLanguage {
  std::set<Stack> configs;
  std::vector<PdaRun> runs;  // one per input, same order

  bool any_inconclusive() const;
};

ConfigLanguage config_language(const PdaSpec& spec, const std::vector<std::vector<std::size_t>>& inputs,
                               std::size_t step_limit);

}  // namespace fgw
