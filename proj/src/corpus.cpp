#include "fgw/corpus.hpp"

#include <array>
#include <utility>

#include "fgw/error.hpp"

namespace fgw {

namespace {

// Built-in functional grammars. Where a source listing lost the '|' before an
// epsilon alternative it is restored here; PRIORITY_AS_PRINTED keeps the
// B Q -> B rule of the original priority-queue listing.

constexpr std::string_view kG1 = R"(# xx over {a,b}: S injects the first half, T replays it.
name: G1
start: S
terminals: a b
S -> a A S | b B S | T
A a -> a A
B a -> a B
A b -> b A
B b -> b B
B T -> T b
A T -> T a
T -> eps
)";

constexpr std::string_view kG2 = R"(# Virtual queue: P enqueues 'a' on the left, Q dequeues on the right.
name: G2
start: S
terminals: a
S -> P Q | eps
P -> P a
a Q -> Q
P Q -> eps
)";

constexpr std::string_view kG3 = R"(# Pure null grammar.
name: G3
start: S
terminals:
S -> eps
)";

constexpr std::string_view kG3b = R"(# Null grammar with a useless intermediate non-terminal.
name: G3b
start: S
terminals:
S -> A
A -> eps
)";

constexpr std::string_view kStack = R"(# Virtual infinite capacity stack: push and pop both at P.
name: STACK
start: S
terminals: a
S -> P Q | eps
P -> P a
P a -> P
P Q -> eps
)";

constexpr std::string_view kDeque = R"(# Virtual infinite capacity double sided queue.
name: DEQUE
start: S
terminals: a
S -> P Q | eps
P -> P a
Q -> a Q
P a -> P
a Q -> Q
P Q -> eps
)";

constexpr std::string_view kPriority = R"(# Virtual double sided priority queue ('b' above 'a'), with B Q -> Q.
name: PRIORITY
start: S
terminals: a b
S -> P Q | eps
P -> P A | P B
Q -> A Q | B Q
P A -> P
P B -> P
A Q -> Q
B Q -> Q
A B -> B A
P Q -> eps
A -> a
B -> b
)";

constexpr std::string_view kPriorityAsPrinted = R"(# Priority queue grammar exactly as listed, including B Q -> B.
name: PRIORITY_AS_PRINTED
start: S
terminals: a b
S -> P Q | eps
P -> P A | P B
Q -> A Q | B Q
P A -> P
P B -> P
A Q -> Q
B Q -> B
A B -> B A
P Q -> eps
A -> a
B -> b
)";

constexpr std::string_view kG4 = R"(# Regular grammar for b*a*.
name: G4
start: S
terminals: a b
S -> b B | a C | a | b | eps
B -> b B | a C | a | b
C -> a C | a
)";

constexpr std::string_view kG5 = R"(# b*a* by sorting whatever N injects: b's leave through P, a's through R.
name: G5
start: S
terminals: a b
S -> P N Q R
N -> N a | N b | eps
a Q -> Q A
b Q -> Q B
P Q -> P
P B -> b P
A R -> R a
A B -> B A
P R -> eps
)";

constexpr std::string_view kParens = R"(# Balanced parentheses.
name: PARENS
start: S
terminals: ( )
S -> ( S ) | ( ) S | S ( ) | eps
)";

constexpr std::array<std::pair<std::string_view, std::string_view>, 11> kCorpus{{
    {"G1", kG1},
    {"G2", kG2},
    {"G3", kG3},
    {"G3b", kG3b},
    {"STACK", kStack},
    {"DEQUE", kDeque},
    {"PRIORITY", kPriority},
    {"PRIORITY_AS_PRINTED", kPriorityAsPrinted},
    {"G4", kG4},
    {"G5", kG5},
    {"PARENS", kParens},
}};

constexpr auto kIds = [] {
  std::array<std::string_view, kCorpus.size()> ids{};
  for (std::size_t i = 0; i < kCorpus.size(); ++i) ids[i] = kCorpus[i].first;
  return ids;
}();

}  // namespace

std::span<const std::string_view> corpus_ids() { return kIds; }

std::string_view corpus_source(std::string_view id) {
  for (const auto& [name, text] : kCorpus) {
    if (name == id) return text;
  }
  throw ArgumentError("unknown corpus id '" + std::string(id) + "'");
}

Grammar load_corpus(std::string_view id) { return parse_grammar(corpus_source(id)); }

}  // namespace fgw
