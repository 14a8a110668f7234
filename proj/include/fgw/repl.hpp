#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fgw/grammar.hpp"
#include "fgw/rewrite.hpp"

namespace fgw {

/// Interactive derivation stepping. Commands:
///   show | matches | apply K | undo | reset | random N | indices | help | quit
/// `apply` takes the 1-based number printed by `matches`. Failed commands leave
/// the state untouched.
class Repl {
 public:
  struct Reply {
    bool ok = true;
    std::string text;
    bool quit = false;
  };

  explicit Repl(Grammar g, std::uint64_t seed = 0);

  Reply execute(std::string_view line);

  /// Reads commands until EOF or `quit`; errors go to `err`.
  void run(std::istream& in, std::ostream& out, std::ostream& err, bool prompt);

  const Grammar& grammar() const { return g_; }
  const SententialForm& current() const { return current_; }
  /// Steps applied since the last reset, starting at the start symbol.
  const DerivationTrace& trace() const { return trace_; }
  std::size_t history_depth() const { return undo_.size(); }

  /// Replaying the applied steps from the start symbol gives the current form.
  bool invariant_holds() const;

 private:
  Reply show() const;
  Reply matches() const;
  Reply apply(std::string_view arg);
  Reply undo();
  Reply reset();
  Reply random(std::string_view arg);
  Reply indices() const;
  void push(const Match& m, SententialForm next);

  Grammar g_;
  SententialForm current_;
  std::vector<SententialForm> undo_;
  DerivationTrace trace_;
  std::mt19937_64 rng_;
};

}  // namespace fgw
