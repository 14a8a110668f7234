#include "fgw/rewrite.hpp"

#include <algorithm>
#include <limits>
#include <string_view>
#include <unordered_set>

#include "fgw/error.hpp"

namespace fgw {

void SearchLimits::validate() const {
  if (max_steps == 0 || max_form_len == 0 || max_visited == 0 || max_string_len == 0) {
    throw ArgumentError("search limits must be strictly positive");
  }
}

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::ExhaustedComplete: return "ExhaustedComplete";
    case SearchStatus::ExhaustedPruned: return "ExhaustedPruned";
  }
  return "?";
}

namespace {

void check_form(const Grammar& g, const SententialForm& f) {
  for (SymbolId s : f) {
    if (!g.contains(s)) {
      throw ArgumentError("foreign symbol id " + std::to_string(static_cast<unsigned>(s)) + " for grammar '" +
                          g.name() + "'");
    }
  }
}

bool lhs_at(const SententialForm& f, const SententialForm& lhs, std::size_t pos) {
  return pos + lhs.size() <= f.size() && std::equal(lhs.begin(), lhs.end(), f.begin() + static_cast<long>(pos));
}

SententialForm substitute(const SententialForm& f, const Production& p, std::size_t pos) {
  SententialForm out;
  out.reserve(f.size() - p.lhs.size() + p.rhs.size());
  out.insert(out.end(), f.begin(), f.begin() + static_cast<long>(pos));
  out.insert(out.end(), p.rhs.begin(), p.rhs.end());
  out.insert(out.end(), f.begin() + static_cast<long>(pos + p.lhs.size()), f.end());
  return out;
}

std::vector<Match> matches_unchecked(const Grammar& g, const SententialForm& f) {
  std::vector<Match> out;
  for (std::size_t pos = 0; pos < f.size(); ++pos) {
    for (std::size_t k : g.productions_starting_with(f[pos])) {
      if (lhs_at(f, g.production(k).lhs, pos)) out.push_back({k, pos});
    }
  }
  return out;
}

// Forms are packed into byte strings for the visited set: one byte per symbol
// when the grammar has at most 256 symbols, two otherwise.
class FormCodec {
 public:
  explicit FormCodec(const Grammar& g) : wide_(g.symbol_count() > 256) {}

  std::string encode(const SententialForm& f) const {
    std::string out;
    out.reserve(f.size() * (wide_ ? 2 : 1));
    for (SymbolId s : f) {
      const auto v = static_cast<unsigned>(s);
      out.push_back(static_cast<char>(v & 0xff));
      if (wide_) out.push_back(static_cast<char>(v >> 8));
    }
    return out;
  }

  SententialForm decode(std::string_view bytes) const {
    SententialForm out;
    const std::size_t width = wide_ ? 2 : 1;
    out.reserve(bytes.size() / width);
    for (std::size_t i = 0; i < bytes.size(); i += width) {
      unsigned v = static_cast<unsigned char>(bytes[i]);
      if (wide_) v |= static_cast<unsigned>(static_cast<unsigned char>(bytes[i + 1])) << 8;
      out.push_back(static_cast<SymbolId>(v));
    }
    return out;
  }

 private:
  bool wide_;
};

// Breadth-first closure from the start symbol, deduplicated on (form, filter
// state). Expansion is FIFO over nodes and (position, production) over steps.
class Explorer {
 public:
  static constexpr std::uint32_t kRoot = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    std::uint32_t parent;
    std::uint32_t production;
    std::uint32_t position;
    std::uint32_t depth;
    StepFilter::State state;
  };

  Explorer(const Grammar& g, const SearchLimits& lim, const StepFilter* filter)
      : g_(g), lim_(lim), filter_(filter), codec_(g), seen_(1024, KeyHash{this}, KeyEq{this}) {
    lim_.validate();
  }

  // Visits every node as it is discovered; `on_node(index, form)` returns true
  // to stop. Returns true when the search stopped early through `on_node`.
  template <typename OnNode>
  bool run(OnNode&& on_node) {
    SententialForm root{g_.start()};
    add(root, {kRoot, 0, 0, 0, filter_ ? filter_->initial() : 0});
    if (on_node(std::size_t{0}, root)) return true;

    for (std::size_t head = 0; head < nodes_.size(); ++head) {
      const Node node = nodes_[head];
      const SententialForm form = codec_.decode(forms_[head]);
      auto matches = matches_unchecked(g_, form);

      std::vector<std::pair<Match, StepFilter::State>> allowed;
      allowed.reserve(matches.size());
      for (const Match& m : matches) {
        if (!filter_) {
          allowed.emplace_back(m, 0);
        } else if (auto s = filter_->advance(node.state, g_, form, m)) {
          allowed.emplace_back(m, *s);
        }
      }
      if (allowed.empty()) continue;
      if (node.depth >= lim_.max_steps) {
        pruned_ = true;
        continue;
      }
      for (const auto& [m, state] : allowed) {
        const Production& p = g_.production(m.production);
        const std::size_t len = form.size() - p.lhs.size() + p.rhs.size();
        if (len >= lim_.max_form_len) {
          pruned_ = true;
          continue;
        }
        SententialForm next = substitute(form, p, m.position);
        Node child{static_cast<std::uint32_t>(head), static_cast<std::uint32_t>(m.production),
                   static_cast<std::uint32_t>(m.position), node.depth + 1, state};
        const std::size_t before = nodes_.size();
        if (!add(next, child)) continue;
        if (before >= lim_.max_visited) {
          remove_last();
          pruned_ = true;
          return false;
        }
        if (on_node(before, next)) return true;
      }
    }
    return false;
  }

  bool pruned() const { return pruned_; }
  std::size_t visited() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }

  DerivationTrace trace_to(std::size_t index) const {
    std::vector<std::size_t> chain;
    for (std::size_t i = index; i != kRoot; i = nodes_[i].parent) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    DerivationTrace t;
    t.grammar = g_.name();
    t.initial = codec_.decode(forms_[chain.front()]);
    for (std::size_t k = 1; k < chain.size(); ++k) {
      const Node& n = nodes_[chain[k]];
      t.steps.push_back({n.production, n.position, codec_.decode(forms_[chain[k]])});
    }
    return t;
  }

 private:
  struct KeyHash {
    const Explorer* self;
    std::size_t operator()(std::uint32_t i) const noexcept {
      return std::hash<std::string_view>{}(self->forms_[i]) ^ (self->nodes_[i].state * 0x9e3779b97f4a7c15ull);
    }
  };
  struct KeyEq {
    const Explorer* self;
    bool operator()(std::uint32_t a, std::uint32_t b) const noexcept {
      return self->nodes_[a].state == self->nodes_[b].state && self->forms_[a] == self->forms_[b];
    }
  };

  // Appends the node unless an equal (form, state) is already known.
  bool add(const SententialForm& f, const Node& n) {
    forms_.push_back(codec_.encode(f));
    nodes_.push_back(n);
    if (!seen_.insert(static_cast<std::uint32_t>(nodes_.size() - 1)).second) {
      forms_.pop_back();
      nodes_.pop_back();
      return false;
    }
    return true;
  }

  void remove_last() {
    seen_.erase(static_cast<std::uint32_t>(nodes_.size() - 1));
    forms_.pop_back();
    nodes_.pop_back();
  }

  const Grammar& g_;
  SearchLimits lim_;
  const StepFilter* filter_;
  FormCodec codec_;
  std::vector<Node> nodes_;
  std::vector<std::string> forms_;
  std::unordered_set<std::uint32_t, KeyHash, KeyEq> seen_;
  bool pruned_ = false;
};

}  // namespace

// ---------------------------------------------------------------------------

InjectionFilter::InjectionFilter(const Grammar& g, SymbolId injector, SententialForm order)
    : injector_(injector), order_(std::move(order)) {
  if (!g.contains(injector) || g.is_terminal(injector)) throw ArgumentError("injector must be a non-terminal");
  for (SymbolId s : order_) {
    if (!g.contains(s) || !g.is_terminal(s)) throw ArgumentError("injection order must consist of terminals");
  }
  bool any = false;
  for (const Production& p : g.productions()) {
    const bool mine = p.lhs.size() == 1 && p.lhs.front() == injector;
    any = any || mine;
    is_injector_rule_.push_back(mine);
    SententialForm injected;
    std::copy_if(p.rhs.begin(), p.rhs.end(), std::back_inserter(injected), [&g](SymbolId s) { return g.is_terminal(s); });
    injected_.push_back(std::move(injected));
  }
  if (!any) throw ArgumentError("injector '" + g.name_of(injector) + "' has no single-symbol-lhs productions");
}

std::optional<StepFilter::State> InjectionFilter::advance(State s, const Grammar& g, const SententialForm&,
                                                          const Match& m) const {
  if (!is_injector_rule_[m.production]) return s;
  const SententialForm& injected = injected_[m.production];
  if (injected.empty()) {
    if (g.production(m.production).rhs.empty() && s < order_.size()) return std::nullopt;
    return s;
  }
  if (s + injected.size() > order_.size()) return std::nullopt;
  if (!std::equal(injected.begin(), injected.end(), order_.begin() + s)) return std::nullopt;
  return static_cast<State>(s + injected.size());
}

// ---------------------------------------------------------------------------

std::vector<Match> find_matches(const Grammar& g, const SententialForm& f) {
  check_form(g, f);
  return matches_unchecked(g, f);
}

SententialForm apply_at(const Grammar& g, const SententialForm& f, const Match& m) {
  if (m.production >= g.productions().size()) {
    throw MatchError("no production with index " + std::to_string(m.production));
  }
  const Production& p = g.production(m.production);
  if (!lhs_at(f, p.lhs, m.position)) {
    std::string found;
    if (m.position <= f.size()) {
      const std::size_t end = std::min(f.size(), m.position + p.lhs.size());
      found = render_form(g, std::span(f).subspan(m.position, end - m.position));
    } else {
      found = "<past end>";
    }
    throw MatchError("production " + std::to_string(m.production) + " expects '" + render_form(g, p.lhs) +
                     "' at position " + std::to_string(m.position) + " but found '" + found + "'");
  }
  return substitute(f, p, m.position);
}

std::vector<std::pair<Match, SententialForm>> successors(const Grammar& g, const SententialForm& f) {
  std::vector<std::pair<Match, SententialForm>> out;
  for (const Match& m : find_matches(g, f)) out.emplace_back(m, apply_at(g, f, m));
  return out;
}

SearchOutcome bfs_derive(const Grammar& g, const SententialForm& target, const SearchLimits& lim,
                         const StepFilter* filter) {
  check_form(g, target);
  Explorer ex(g, lim, filter);
  std::optional<std::size_t> hit;
  ex.run([&](std::size_t i, const SententialForm& f) {
    if (f == target && (!filter || filter->accepts(ex.node(i).state))) {
      hit = i;
      return true;
    }
    return false;
  });

  SearchOutcome out;
  out.visited = ex.visited();
  if (hit) {
    out.status = SearchStatus::Found;
    out.trace = ex.trace_to(*hit);
  } else {
    out.status = ex.pruned() ? SearchStatus::ExhaustedPruned : SearchStatus::ExhaustedComplete;
  }
  return out;
}

LanguageResult enumerate_language(const Grammar& g, const SearchLimits& lim) {
  Explorer ex(g, lim, nullptr);
  std::vector<std::size_t> hits;
  ex.run([&](std::size_t i, const SententialForm& f) {
    if (f.size() <= lim.max_string_len && g.is_terminal_form(f)) hits.push_back(i);
    return false;
  });
  LanguageResult out;
  out.pruned = ex.pruned();
  out.visited = ex.visited();
  for (std::size_t i : hits) {
    DerivationTrace t = ex.trace_to(i);
    SententialForm word = t.final_form();
    out.words.emplace_back(std::move(word), std::move(t));
  }
  return out;
}

FormsResult enumerate_forms(const Grammar& g, const SearchLimits& lim) {
  Explorer ex(g, lim, nullptr);
  FormsResult out;
  ex.run([&](std::size_t, const SententialForm& f) {
    out.forms.push_back(f);
    return false;
  });
  out.pruned = ex.pruned();
  out.visited = ex.visited();
  return out;
}

SententialForm replay_trace(const Grammar& g, const DerivationTrace& t) {
  if (t.grammar != g.name()) {
    throw ArgumentError("trace belongs to grammar '" + t.grammar + "', not '" + g.name() + "'");
  }
  check_form(g, t.initial);
  SententialForm current = t.initial;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const DerivationStep& s = t.steps[k];
    try {
      current = apply_at(g, current, {s.production, s.position});
    } catch (const MatchError& e) {
      throw ReplayError(e.what(), k);
    }
    if (current != s.after) {
      const bool known = std::all_of(s.after.begin(), s.after.end(), [&g](SymbolId x) { return g.contains(x); });
      const std::string recorded = known ? render_form(g, s.after) : "<foreign symbols>";
      throw ReplayError("recorded form '" + recorded + "' disagrees with replayed form '" + render_form(g, current) + "'",
                        k);
    }
  }
  return current;
}

TraceIndices trace_indices(const Grammar& g, const DerivationTrace& t) {
  const SententialForm final_form = replay_trace(g, t);
  TraceIndices out;
  for (const DerivationStep& s : t.steps) {
    const int delta = g.terminal_delta(s.production);
    if (delta > 0) out.production += delta;
    if (delta < 0) out.consumption -= delta;
  }
  out.transient = static_cast<long>(g.terminal_count(final_form)) - static_cast<long>(g.terminal_count(t.initial));
  return out;
}

SearchOutcome constrained_derive(const Grammar& g, SymbolId injector, const SententialForm& injection_order,
                                 const SententialForm& target, const SearchLimits& lim) {
  InjectionFilter filter(g, injector, injection_order);
  return bfs_derive(g, target, lim, &filter);
}

}  // namespace fgw
