#include "fgw/repl.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "fgw/error.hpp"

namespace fgw {

namespace {

constexpr std::string_view kHelp =
    "commands:\n"
    "  show        print the current form\n"
    "  matches     list applicable steps\n"
    "  apply K     apply step K from the matches list\n"
    "  undo        revert the last step\n"
    "  reset       return to the start symbol\n"
    "  random N    apply N uniformly chosen steps\n"
    "  indices     production/consumption/transient index of the steps so far\n"
    "  quit        leave";

std::optional<std::size_t> parse_count(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::pair<std::string_view, std::string_view> split_command(std::string_view line) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!line.empty() && is_space(line.front())) line.remove_prefix(1);
  while (!line.empty() && is_space(line.back())) line.remove_suffix(1);
  std::size_t i = 0;
  while (i < line.size() && !is_space(line[i])) ++i;
  std::string_view cmd = line.substr(0, i);
  std::string_view arg = line.substr(i);
  while (!arg.empty() && is_space(arg.front())) arg.remove_prefix(1);
  return {cmd, arg};
}

}  // namespace

Repl::Repl(Grammar g, std::uint64_t seed) : g_(std::move(g)), rng_(seed) { reset(); }

Repl::Reply Repl::execute(std::string_view line) {
  auto [cmd, arg] = split_command(line);
  if (cmd.empty()) return {true, ""};
  if (cmd == "show") return show();
  if (cmd == "matches") return matches();
  if (cmd == "apply") return apply(arg);
  if (cmd == "undo") return undo();
  if (cmd == "reset") return reset();
  if (cmd == "random") return random(arg);
  if (cmd == "indices") return indices();
  if (cmd == "help") return {true, std::string(kHelp)};
  if (cmd == "quit" || cmd == "exit") return {true, "", true};
  return {false, "unknown command '" + std::string(cmd) + "' (try help)"};
}

void Repl::run(std::istream& in, std::ostream& out, std::ostream& err, bool prompt) {
  std::string line;
  if (prompt) out << show().text << '\n' << "> " << std::flush;
  while (std::getline(in, line)) {
    Reply r = execute(line);
    if (!r.text.empty()) (r.ok ? out : err) << r.text << '\n';
    if (r.quit) return;
    if (prompt) out << "> " << std::flush;
  }
}

bool Repl::invariant_holds() const {
  if (undo_.size() != trace_.steps.size()) return false;
  try {
    return replay_trace(g_, trace_) == current_ && trace_.initial == SententialForm{g_.start()};
  } catch (const Error&) {
    return false;
  }
}

Repl::Reply Repl::show() const { return {true, render_form(g_, current_)}; }

Repl::Reply Repl::matches() const {
  const auto next = successors(g_, current_);
  if (next.empty()) return {true, g_.is_terminal_form(current_) ? "no steps (terminal form)" : "no steps (dead end)"};
  std::ostringstream out;
  for (std::size_t i = 0; i < next.size(); ++i) {
    const auto& [m, form] = next[i];
    if (i > 0) out << '\n';
    out << "  " << i + 1 << ". " << render_production(g_, m.production) << " @" << m.position << "  =>  "
        << render_form(g_, form);
  }
  return {true, out.str()};
}

void Repl::push(const Match& m, SententialForm next) {
  undo_.push_back(current_);
  trace_.steps.push_back({m.production, m.position, next});
  current_ = std::move(next);
}

Repl::Reply Repl::apply(std::string_view arg) {
  const auto k = parse_count(arg);
  auto next = successors(g_, current_);
  if (!k || *k == 0 || *k > next.size()) {
    return {false, "invalid step number '" + std::string(arg) + "' (" + std::to_string(next.size()) + " available)"};
  }
  auto& [m, form] = next[*k - 1];
  push(m, std::move(form));
  return show();
}

Repl::Reply Repl::undo() {
  if (undo_.empty()) return {false, "nothing to undo"};
  current_ = std::move(undo_.back());
  undo_.pop_back();
  trace_.steps.pop_back();
  return show();
}

Repl::Reply Repl::reset() {
  current_ = {g_.start()};
  undo_.clear();
  trace_ = DerivationTrace{g_.name(), current_, {}};
  return show();
}

Repl::Reply Repl::random(std::string_view arg) {
  const auto n = arg.empty() ? std::optional<std::size_t>{1} : parse_count(arg);
  if (!n) return {false, "invalid step count '" + std::string(arg) + "'"};
  std::size_t taken = 0;
  for (; taken < *n; ++taken) {
    auto next = successors(g_, current_);
    if (next.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
    auto& [m, form] = next[pick(rng_)];
    push(m, std::move(form));
  }
  Reply r = show();
  if (taken < *n) r.text += "  (stopped after " + std::to_string(taken) + " steps: no applicable production)";
  return r;
}

Repl::Reply Repl::indices() const {
  const TraceIndices ix = trace_indices(g_, trace_);
  return {true, "PI " + std::to_string(ix.production) + "  CI " + std::to_string(ix.consumption) + "  TI " +
                    std::to_string(ix.transient)};
}

}  // namespace fgw
