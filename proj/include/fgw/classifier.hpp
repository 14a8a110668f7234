#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fgw/grammar.hpp"
#include "fgw/rewrite.hpp"

namespace fgw {

/// Producer / consumer / modifier roles of one non-terminal. Producer and
/// consumer roles may co-occur; `mnt` is set exactly when no other flag is.
struct RoleFlags {
  bool pnt_cf = false;
  bool pnt_cs = false;
  bool cnt = false;
  bool mnt = false;

  bool is_producer() const { return pnt_cf || pnt_cs; }
  friend bool operator==(const RoleFlags&, const RoleFlags&) = default;
};

/// Witness productions backing each set flag. For `pnt_cf` this is the chain
/// of single-lhs productions leading from the non-terminal to a terminal.
struct Evidence {
  std::vector<std::size_t> pnt_cf;
  std::vector<std::size_t> pnt_cs;
  std::vector<std::size_t> cnt;
};

/// Detector output: flagged non-terminal -> witness production indices.
using RoleWitnesses = std::map<SymbolId, std::vector<std::size_t>>;

/// Context-free producers: least fixpoint over productions whose lhs is exactly
/// one non-terminal V and whose rhs holds a terminal or an already flagged
/// producer. The witness is the chain of productions down to a terminal.
RoleWitnesses classify_cf_pnt(const Grammar& g);

/// Context-sensitive producers: every non-terminal in the lhs of a
/// terminal-increasing production whose lhs is longer than one symbol.
RoleWitnesses classify_cs_pnt(const Grammar& g);

/// Consumers: V occurs in the lhs of a terminal-decreasing production with a
/// terminal immediately next to that occurrence.
RoleWitnesses classify_cnt(const Grammar& g);

enum class GrammarVerdict { PureNull, PurelyFunctionalUpToBound, FunctionalUpToBound, InconclusiveUpToBound };

const char* to_string(GrammarVerdict v);

struct IndexRange {
  long min = 0;
  long max = 0;
};

/// Min/max trace indices over the complete derivations found while
/// enumerating; absent when enumeration found none.
struct IndexSummary {
  IndexRange production;
  IndexRange consumption;
  IndexRange transient;
  std::size_t derivations = 0;
};

struct ClassificationReport {
  std::map<SymbolId, RoleFlags> roles;
  std::map<SymbolId, Evidence> evidence;
  GrammarVerdict verdict = GrammarVerdict::PureNull;
  SearchLimits limits;
  std::optional<IndexSummary> index_summary;
  /// Bounded language used for the verdict.
  std::vector<SententialForm> language;
  bool language_pruned = false;
};

ClassificationReport classify_all(const Grammar& g, const SearchLimits& lim);

/// Splits every terminal-increasing production `lhs -> rhs` with |lhs| > 1
/// into `lhs -> Ck` and `Ck -> rhs` with a fresh non-terminal Ck.
Grammar normalize_cs_pnt(const Grammar& g);

}  // namespace fgw
