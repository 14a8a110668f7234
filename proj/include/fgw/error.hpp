#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgw {

/// Base of every error raised by the workbench.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed `.grm` / `.pda` / trace text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid grammar";
    for (const auto& s : v) out += "; " + s;
    return out;
  }

  std::vector<std::string> violations_;
};

/// A production does not match the form at the requested position.
class MatchError : public Error {
 public:
  using Error::Error;
};

/// Replay of a derivation trace diverged at `step()` (0-based).
class ReplayError : public Error {
 public:
  ReplayError(const std::string& what, std::size_t step)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Caller supplied an argument outside the operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace fgw
