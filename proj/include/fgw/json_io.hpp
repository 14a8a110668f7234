#pragma once

#include <string_view>

#include <json.hpp>

#include "fgw/classifier.hpp"
#include "fgw/grammar.hpp"
#include "fgw/pda.hpp"
#include "fgw/rewrite.hpp"
#include "fgw/structure.hpp"

namespace fgw {

/// Key order is significant in every document below, so ordered_json is used.
using Json = nlohmann::ordered_json;

/// {"grammar": name, "initial": [tokens], "steps": [{"rule": i, "pos": p, "after": [tokens]}]}
Json trace_to_json(const Grammar& g, const DerivationTrace& t);
/// Throws ParseError on malformed documents and ArgumentError on unknown tokens.
/// The trace is not replayed.
DerivationTrace trace_from_json(const Grammar& g, const Json& j);
DerivationTrace parse_trace_json(const Grammar& g, std::string_view text);

Json limits_to_json(const SearchLimits& lim);
Json indices_to_json(const TraceIndices& ix);

/// {"roles": ..., "evidence": ..., "verdict": ..., "limits": ..., "index_summary": ...}
/// followed by the bounded language the verdict was computed from.
Json report_to_json(const Grammar& g, const ClassificationReport& r);

/// {"verdict", "insert_ends", "delete_ends", "histogram", "violations"}
Json discipline_to_json(const DisciplineVerdict& v);

/// {"accepted", "inconclusive", "configs"}
Json pda_run_to_json(const PdaSpec& spec, const PdaRun& run);

}  // namespace fgw
