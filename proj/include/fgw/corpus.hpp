#pragma once

#include <span>
#include <string>
#include <string_view>

#include "fgw/grammar.hpp"

namespace fgw {

/// Identifiers of the built-in grammars, in listing order.
std::span<const std::string_view> corpus_ids();

/// `.grm` source of a built-in grammar. Throws ArgumentError for unknown ids.
std::string_view corpus_source(std::string_view id);

Grammar load_corpus(std::string_view id);

}  // namespace fgw
