#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fgw/error.hpp"
#include "fgw/grammar.hpp"
#include "fgw/rewrite.hpp"

namespace fgw {

/// Raised when a trace cannot be read as a buffer history.
class AnalysisError : public Error {
 public:
  AnalysisError(const std::string& what, std::optional<std::size_t> step = std::nullopt)
      : Error(step ? "step " + std::to_string(*step) + ": " + what : what), step_(step) {}

  std::optional<std::size_t> step() const { return step_; }

 private:
  std::optional<std::size_t> step_;
};

enum class End { Left, Right };

enum class BufferOp {
  Create,
  Destroy,
  InsertLeft,
  InsertRight,
  DeleteLeft,
  DeleteRight,
  Reorder,
  Unchanged,
  AmbiguousEnd,
  Other,
};

const char* to_string(End e);
const char* to_string(BufferOp op);

/// The pair of non-terminals enclosing a buffer. Either side may be absent
/// from the grammar, in which case no snapshot is ever present.
struct Delimiters {
  std::optional<SymbolId> left;
  std::optional<SymbolId> right;

  /// Throws ArgumentError if the names are equal.
  static Delimiters resolve(const Grammar& g, std::string_view left, std::string_view right);
};

struct BufferSnapshot {
  std::size_t step_index = 0;  // 0 is the initial form
  SententialForm contents;     // empty whenever !present
  bool present = false;

  friend bool operator==(const BufferSnapshot&, const BufferSnapshot&) = default;
};

/// Buffer of a single form. Throws AnalysisError (carrying `step_index`) when
/// a delimiter occurs more than once.
BufferSnapshot snapshot_of(const SententialForm& form, const Delimiters& d, std::size_t step_index = 0);

/// One snapshot per form of the trace (initial form first).
std::vector<BufferSnapshot> extract_buffer_trace(const DerivationTrace& t, const Delimiters& d);
std::vector<BufferSnapshot> extract_buffer_trace(const Grammar& g, const DerivationTrace& t, std::string_view left,
                                                 std::string_view right);

/// Content-only classification. Single-symbol inserts and deletes that are
/// consistent with both ends are reported at the left end, except 0<->1
/// transitions which are AmbiguousEnd.
BufferOp classify_step(const BufferSnapshot& before, const BufferSnapshot& after);

/// As above, but an insert/delete consistent with `rewrite_end` is attributed
/// to that end. This is how unary buffers such as a* get their ends.
BufferOp classify_step(const BufferSnapshot& before, const BufferSnapshot& after, std::optional<End> rewrite_end);

/// End of the buffer touched by applying `m` to `form`: a span overlapping one
/// delimiter wins; otherwise a span starting or ending on the buffer boundary.
std::optional<End> rewrite_end(const Grammar& g, const SententialForm& form, const Match& m, const Delimiters& d);

/// An op together with what it moved. Inserts and deletes carry the symbol,
/// Create/Reorder/Other/AmbiguousEnd carry the new contents.
struct BufferEvent {
  BufferOp op = BufferOp::Unchanged;
  SententialForm payload;

  friend bool operator==(const BufferEvent&, const BufferEvent&) = default;
};

BufferEvent describe_step(const BufferSnapshot& before, const BufferSnapshot& after, std::optional<End> rewrite_end);

/// Events for every step of a trace (size == t.steps.size()).
std::vector<BufferEvent> buffer_events(const Grammar& g, const DerivationTrace& t, const Delimiters& d);

/// Rebuilds snapshot contents from an initially absent buffer; nullopt marks
/// an absent buffer.
std::vector<std::optional<SententialForm>> reconstruct_buffer(const std::optional<SententialForm>& initial,
                                                              const std::vector<BufferEvent>& events);

enum class Discipline { Stack, Queue, Deque, Other, Empty };

const char* to_string(Discipline d);

struct StepViolation {
  std::size_t trace = 0;
  std::size_t step = 0;  // index into DerivationTrace::steps
  BufferOp op = BufferOp::Other;
};

struct DisciplineVerdict {
  Discipline verdict = Discipline::Empty;
  std::map<BufferOp, std::size_t> op_histogram;
  std::set<End> insert_ends;
  std::set<End> delete_ends;
  std::vector<StepViolation> violations;  // steps classified Other
};

/// Verdict over the supplied traces only. Throws ArgumentError if `traces` is
/// empty and ReplayError if a trace does not replay under `g`.
DisciplineVerdict classify_discipline(const Grammar& g, std::string_view left, std::string_view right,
                                      const std::vector<DerivationTrace>& traces);

/// Highest priority first.
using PriorityOrder = std::vector<SymbolId>;

/// Parses "B>A" style orders.
PriorityOrder parse_priority(const Grammar& g, std::string_view text);

struct PriorityCheck {
  bool ok = true;
  std::optional<std::size_t> violation_step;
  std::string detail;
};

/// Every delete must remove a symbol of maximal priority among the buffered
/// symbols at that step. Throws AnalysisError if a deleted symbol is unranked.
PriorityCheck check_priority_discipline(const Grammar& g, const DerivationTrace& t, std::string_view left,
                                        std::string_view right, const PriorityOrder& order);

/// Shortest complete derivation of epsilon that never deletes a non-maximal
/// buffered symbol and, when `require_reorder`, contains a Reorder step.
SearchOutcome find_priority_respecting_derivation(const Grammar& g, std::string_view left, std::string_view right,
                                                  const PriorityOrder& order, const SearchLimits& lim,
                                                  bool require_reorder = true);

// ---------------------------------------------------------------------------
// Seeded random derivations

struct WalkOptions {
  /// Above this form length, length-reducing steps are preferred when available.
  std::size_t soft_len = 8;
  std::size_t max_steps = 256;
  /// Walks that dead-end or run out of steps are restarted up to this many times.
  std::size_t max_attempts = 200;
};

/// A complete (terminal) derivation from the start symbol, or nullopt if every
/// attempt failed. Identical seeds give identical traces.
std::optional<DerivationTrace> random_derivation(const Grammar& g, std::uint64_t seed, const WalkOptions& opts = {});

/// One trace per seed in [0, count) for which a walk completed.
std::vector<DerivationTrace> random_derivations(const Grammar& g, std::size_t count, const WalkOptions& opts = {});

}  // namespace fgw
