#include "fgw/pda.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <tuple>

#include "fgw/error.hpp"

namespace fgw {

const char* to_string(AcceptanceMode m) {
  switch (m) {
    case AcceptanceMode::FinalState: return "final";
    case AcceptanceMode::EmptyStack: return "empty";
    case AcceptanceMode::Both: return "both";
  }
  return "?";
}

namespace {

constexpr std::string_view kParensPda = R"(# Push every '(' and pop one for each ')'.
states: q
start: q
accept: q
input: ( )
stack: (
mode: both
q, (, eps -> q, push (
q, ), ( -> q, push eps
)";

constexpr std::array<std::string_view, 1> kBuiltinIds{"PARENS_PDA"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::size_t> index_in(const std::vector<std::string>& table, std::string_view name) {
  auto it = std::find(table.begin(), table.end(), name);
  if (it == table.end()) return std::nullopt;
  return static_cast<std::size_t>(it - table.begin());
}

}  // namespace

PdaSpec parse_pda(std::string_view source) {
  PdaSpec spec;
  std::optional<std::string> start;
  std::vector<std::string> accept;
  std::vector<std::string> initial;
  bool have_states = false;

  struct RawTransition {
    std::array<std::string, 3> lhs;
    std::string to;
    std::vector<std::string> push;
    std::size_t line;
  };
  std::vector<RawTransition> raw;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    std::string_view line = source.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const std::size_t col = static_cast<std::size_t>(body.data() - line.data()) + 1;

    auto header = [&](std::string_view key) -> std::optional<std::vector<std::string>> {
      if (body.rfind(key, 0) != 0) return std::nullopt;
      return words(body.substr(key.size()));
    };

    if (auto v = header("states:")) {
      spec.states = *v;
      have_states = true;
    } else if (auto v = header("start:")) {
      if (v->size() != 1) throw ParseError("start: expects exactly one state", line_no, col);
      start = v->front();
    } else if (auto v = header("accept:")) {
      accept = *v;
    } else if (auto v = header("input:")) {
      spec.input_alphabet = *v;
    } else if (auto v = header("stack:")) {
      spec.stack_alphabet = *v;
    } else if (auto v = header("initial:")) {
      initial = *v;
    } else if (auto v = header("mode:")) {
      if (v->size() != 1) throw ParseError("mode: expects final, empty or both", line_no, col);
      const std::string& m = v->front();
      if (m == "final") spec.mode = AcceptanceMode::FinalState;
      else if (m == "empty") spec.mode = AcceptanceMode::EmptyStack;
      else if (m == "both") spec.mode = AcceptanceMode::Both;
      else throw ParseError("unknown mode '" + m + "'", line_no, col);
    } else {
      const std::size_t arrow = body.find("->");
      if (arrow == std::string_view::npos) throw ParseError("expected a header or a transition", line_no, col);
      RawTransition t;
      t.line = line_no;
      std::string_view left = body.substr(0, arrow);
      for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t comma = left.find(',');
        if ((i < 2) != (comma != std::string_view::npos)) {
          throw ParseError("transition lhs must be 'state, input|eps, top|eps'", line_no, col);
        }
        const std::string_view part = trim(i < 2 ? left.substr(0, comma) : left);
        if (part.empty() || words(part).size() != 1) throw ParseError("malformed transition lhs", line_no, col);
        t.lhs[i] = std::string(part);
        if (i < 2) left = left.substr(comma + 1);
      }
      std::string_view right = body.substr(arrow + 2);
      const std::size_t comma = right.find(',');
      if (comma == std::string_view::npos) throw ParseError("transition rhs must be 'state, push ...'", line_no, col);
      t.to = std::string(trim(right.substr(0, comma)));
      auto push = words(right.substr(comma + 1));
      if (push.empty() || push.front() != "push") {
        throw ParseError("expected 'push' in transition rhs", line_no, col + arrow + 2 + comma);
      }
      push.erase(push.begin());
      if (push.empty()) throw ParseError("push needs symbols or eps", line_no, col);
      if (push.size() == 1 && push.front() == "eps") push.clear();
      t.push = std::move(push);
      raw.push_back(std::move(t));
    }
  }

  if (!have_states || spec.states.empty()) throw ParseError("missing states: header", line_no, 1);
  if (!start) throw ParseError("missing start: header", line_no, 1);

  auto state = [&](const std::string& name, std::size_t line) {
    if (auto i = index_in(spec.states, name)) return *i;
    throw ParseError("undeclared state '" + name + "'", line, 1);
  };
  auto stack_symbol = [&](const std::string& name, std::size_t line) {
    if (auto i = index_in(spec.stack_alphabet, name)) return *i;
    throw ParseError("undeclared stack symbol '" + name + "'", line, 1);
  };

  spec.start = state(*start, 0);
  for (const auto& a : accept) spec.accepting.insert(state(a, 0));
  for (const auto& s : initial) spec.initial_stack.push_back(stack_symbol(s, 0));

  for (const RawTransition& r : raw) {
    PdaTransition t;
    t.from = state(r.lhs[0], r.line);
    if (r.lhs[1] != "eps") {
      auto i = index_in(spec.input_alphabet, r.lhs[1]);
      if (!i) throw ParseError("undeclared input symbol '" + r.lhs[1] + "'", r.line, 1);
      t.input = *i;
    }
    if (r.lhs[2] != "eps") t.pop = stack_symbol(r.lhs[2], r.line);
    t.to = state(r.to, r.line);
    for (const auto& s : r.push) t.push.push_back(stack_symbol(s, r.line));
    spec.transitions.push_back(std::move(t));
  }
  return spec;
}

std::string serialize_pda(const PdaSpec& spec) {
  std::ostringstream out;
  auto list = [&out](const char* key, const std::vector<std::string>& items) {
    out << key;
    for (const auto& s : items) out << ' ' << s;
    out << '\n';
  };
  list("states:", spec.states);
  out << "start: " << spec.states[spec.start] << '\n';
  std::vector<std::string> acc;
  for (std::size_t a : spec.accepting) acc.push_back(spec.states[a]);
  list("accept:", acc);
  list("input:", spec.input_alphabet);
  list("stack:", spec.stack_alphabet);
  out << "mode: " << to_string(spec.mode) << '\n';
  if (!spec.initial_stack.empty()) {
    std::vector<std::string> init;
    for (std::size_t s : spec.initial_stack) init.push_back(spec.stack_alphabet[s]);
    list("initial:", init);
  }
  for (const auto& t : spec.transitions) {
    out << spec.states[t.from] << ", " << (t.input ? spec.input_alphabet[*t.input] : "eps") << ", "
        << (t.pop ? spec.stack_alphabet[*t.pop] : "eps") << " -> " << spec.states[t.to] << ", push";
    if (t.push.empty()) out << " eps";
    for (std::size_t s : t.push) out << ' ' << spec.stack_alphabet[s];
    out << '\n';
  }
  return out.str();
}

std::span<const std::string_view> builtin_pda_ids() { return kBuiltinIds; }

std::string_view builtin_pda_source(std::string_view id) {
  if (id == "PARENS_PDA") return kParensPda;
  throw ArgumentError("unknown builtin PDA '" + std::string(id) + "'");
}

PdaSpec load_builtin_pda(std::string_view id) { return parse_pda(builtin_pda_source(id)); }

std::vector<std::size_t> parse_pda_input(const PdaSpec& spec, std::string_view text) {
  auto tokens = words(text);
  if (tokens.size() == 1 && (tokens[0] == "eps" || tokens[0] == "ε")) tokens.clear();
  if (tokens.size() == 1 && !index_in(spec.input_alphabet, tokens[0]) &&
      std::all_of(spec.input_alphabet.begin(), spec.input_alphabet.end(), [](const auto& s) { return s.size() == 1; })) {
    const std::string word = tokens[0];
    tokens.clear();
    for (char c : word) tokens.emplace_back(1, c);
  }
  std::vector<std::size_t> out;
  for (const auto& t : tokens) {
    auto i = index_in(spec.input_alphabet, t);
    if (!i) throw ArgumentError("input symbol '" + t + "' is not in the PDA's input alphabet");
    out.push_back(*i);
  }
  return out;
}

std::string render_stack(const PdaSpec& spec, const Stack& stack) {
  const bool compact = std::all_of(stack.begin(), stack.end(), [&](std::size_t s) { return spec.stack_alphabet[s].size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < stack.size(); ++i) {
    if (i > 0 && !compact) out += ' ';
    out += spec.stack_alphabet[stack[i]];
  }
  return out;
}

PdaRun pda_run(const PdaSpec& spec, std::span<const std::size_t> input, std::size_t step_limit) {
  using Config = std::tuple<std::size_t, std::size_t, Stack>;  // state, position, stack
  auto accepting = [&](const Config& c) {
    const auto& [state, position, stack] = c;
    if (position != input.size()) return false;
    const bool final_ok = spec.accepting.contains(state);
    switch (spec.mode) {
      case AcceptanceMode::FinalState: return final_ok;
      case AcceptanceMode::EmptyStack: return stack.empty();
      case AcceptanceMode::Both: return final_ok && stack.empty();
    }
    return false;
  };

  PdaRun run;
  std::set<Config> seen;
  std::vector<Config> layer{{spec.start, 0, spec.initial_stack}};
  seen.insert(layer.front());

  for (std::size_t depth = 0; !layer.empty(); ++depth) {
    std::vector<Config> next;
    for (const Config& c : layer) {
      run.configs.insert(std::get<2>(c));
      run.accepted = run.accepted || accepting(c);
      const auto& [state, position, stack] = c;
      for (const PdaTransition& t : spec.transitions) {
        if (t.from != state) continue;
        if (t.input && (position >= input.size() || input[position] != *t.input)) continue;
        if (t.pop && (stack.empty() || stack.back() != *t.pop)) continue;
        if (depth == step_limit) {
          run.inconclusive = true;
          break;
        }
        Stack s = stack;
        if (t.pop) s.pop_back();
        s.insert(s.end(), t.push.begin(), t.push.end());
        Config n{t.to, position + (t.input ? 1 : 0), std::move(s)};
        if (seen.insert(n).second) next.push_back(std::move(n));
      }
    }
    layer = std::move(next);
  }
  if (run.accepted) run.inconclusive = false;
  return run;
}

bool ConfigLanguage::any_inconclusive() const {
  return std::any_of(runs.begin(), runs.end(), [](const PdaRun& r) { return r.inconclusive; });
}

ConfigLanguage config_language(const PdaSpec& spec, const std::vector<std::vector<std::size_t>>& inputs,
                               std::size_t step_limit) {
  ConfigLanguage out;
  for (const auto& in : inputs) {
    PdaRun r = pda_run(spec, in, step_limit);
    out.configs.insert(r.configs.begin(), r.configs.end());
    out.runs.push_back(std::move(r));
  }
  return out;
}

}  // namespace fgw
