#include "fgw/structure.hpp"

#include <algorithm>
#include <random>

namespace fgw {

const char* to_string(End e) { return e == End::Left ? "Left" : "Right"; }

const char* to_string(BufferOp op) {
  switch (op) {
    case BufferOp::Create: return "Create";
    case BufferOp::Destroy: return "Destroy";
    case BufferOp::InsertLeft: return "InsertLeft";
    case BufferOp::InsertRight: return "InsertRight";
    case BufferOp::DeleteLeft: return "DeleteLeft";
    case BufferOp::DeleteRight: return "DeleteRight";
    case BufferOp::Reorder: return "Reorder";
    case BufferOp::Unchanged: return "Unchanged";
    case BufferOp::AmbiguousEnd: return "AmbiguousEnd";
    case BufferOp::Other: return "Other";
  }
  return "?";
}

const char* to_string(Discipline d) {
  switch (d) {
    case Discipline::Stack: return "Stack";
    case Discipline::Queue: return "Queue";
    case Discipline::Deque: return "Deque";
    case Discipline::Other: return "Other";
    case Discipline::Empty: return "Empty";
  }
  return "?";
}

Delimiters Delimiters::resolve(const Grammar& g, std::string_view left, std::string_view right) {
  if (left == right) throw ArgumentError("left and right delimiters must differ");
  return {g.find(left), g.find(right)};
}

namespace {

struct Positions {
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
};

Positions locate(const SententialForm& form, const Delimiters& d, std::size_t step_index) {
  Positions p;
  for (std::size_t i = 0; i < form.size(); ++i) {
    for (auto [want, slot, side] : {std::tuple{d.left, &p.left, "left"}, std::tuple{d.right, &p.right, "right"}}) {
      if (want && form[i] == *want) {
        if (*slot) throw AnalysisError(std::string(side) + " delimiter occurs more than once", step_index);
        *slot = i;
      }
    }
  }
  return p;
}

bool drop_front_equals(const SententialForm& longer, const SententialForm& shorter) {
  return longer.size() == shorter.size() + 1 && std::equal(shorter.begin(), shorter.end(), longer.begin() + 1);
}

bool drop_back_equals(const SententialForm& longer, const SententialForm& shorter) {
  return longer.size() == shorter.size() + 1 && std::equal(shorter.begin(), shorter.end(), longer.begin());
}

bool is_delete(BufferOp op) { return op == BufferOp::DeleteLeft || op == BufferOp::DeleteRight; }
bool is_insert(BufferOp op) { return op == BufferOp::InsertLeft || op == BufferOp::InsertRight; }

}  // namespace

BufferSnapshot snapshot_of(const SententialForm& form, const Delimiters& d, std::size_t step_index) {
  BufferSnapshot s;
  s.step_index = step_index;
  const Positions p = locate(form, d, step_index);
  if (p.left && p.right && *p.left < *p.right) {
    s.present = true;
    s.contents.assign(form.begin() + static_cast<long>(*p.left + 1), form.begin() + static_cast<long>(*p.right));
  }
  return s;
}

std::vector<BufferSnapshot> extract_buffer_trace(const DerivationTrace& t, const Delimiters& d) {
  std::vector<BufferSnapshot> out;
  out.reserve(t.steps.size() + 1);
  for (std::size_t k = 0; k <= t.steps.size(); ++k) out.push_back(snapshot_of(t.form_at(k), d, k));
  return out;
}

std::vector<BufferSnapshot> extract_buffer_trace(const Grammar& g, const DerivationTrace& t, std::string_view left,
                                                 std::string_view right) {
  replay_trace(g, t);
  return extract_buffer_trace(t, Delimiters::resolve(g, left, right));
}

BufferOp classify_step(const BufferSnapshot& before, const BufferSnapshot& after) {
  if (!before.present && !after.present) return BufferOp::Unchanged;
  if (!before.present) return BufferOp::Create;
  if (!after.present) return BufferOp::Destroy;

  const SententialForm& b = before.contents;
  const SententialForm& a = after.contents;
  if (a == b) return BufferOp::Unchanged;
  if (a.size() == b.size() + 1) {
    if (b.empty()) return BufferOp::AmbiguousEnd;
    if (drop_front_equals(a, b)) return BufferOp::InsertLeft;
    if (drop_back_equals(a, b)) return BufferOp::InsertRight;
    return BufferOp::Other;
  }
  if (b.size() == a.size() + 1) {
    if (a.empty()) return BufferOp::AmbiguousEnd;
    if (drop_front_equals(b, a)) return BufferOp::DeleteLeft;
    if (drop_back_equals(b, a)) return BufferOp::DeleteRight;
    return BufferOp::Other;
  }
  if (a.size() == b.size() && std::is_permutation(a.begin(), a.end(), b.begin())) return BufferOp::Reorder;
  return BufferOp::Other;
}

BufferOp classify_step(const BufferSnapshot& before, const BufferSnapshot& after, std::optional<End> end) {
  const BufferOp base = classify_step(before, after);
  if (!end || !(is_insert(base) || is_delete(base) || base == BufferOp::AmbiguousEnd)) return base;

  const SententialForm& b = before.contents;
  const SententialForm& a = after.contents;
  if (*end == End::Left) {
    if (drop_front_equals(a, b)) return BufferOp::InsertLeft;
    if (drop_front_equals(b, a)) return BufferOp::DeleteLeft;
  } else {
    if (drop_back_equals(a, b)) return BufferOp::InsertRight;
    if (drop_back_equals(b, a)) return BufferOp::DeleteRight;
  }
  return base;
}

std::optional<End> rewrite_end(const Grammar& g, const SententialForm& form, const Match& m, const Delimiters& d) {
  const Positions p = locate(form, d, 0);
  if (!p.left || !p.right || *p.left > *p.right) return std::nullopt;
  const std::size_t lo = m.position;
  const std::size_t hi = m.position + g.production(m.production).lhs.size();  // exclusive
  const bool over_left = lo <= *p.left && *p.left < hi;
  const bool over_right = lo <= *p.right && *p.right < hi;
  if (over_left != over_right) return over_left ? End::Left : End::Right;
  if (over_left) return std::nullopt;
  const bool at_left = lo == *p.left + 1;
  const bool at_right = hi == *p.right;
  if (at_left != at_right) return at_left ? End::Left : End::Right;
  return std::nullopt;
}

BufferEvent describe_step(const BufferSnapshot& before, const BufferSnapshot& after, std::optional<End> end) {
  BufferEvent ev;
  ev.op = classify_step(before, after, end);
  switch (ev.op) {
    case BufferOp::InsertLeft: ev.payload = {after.contents.front()}; break;
    case BufferOp::InsertRight: ev.payload = {after.contents.back()}; break;
    case BufferOp::DeleteLeft: ev.payload = {before.contents.front()}; break;
    case BufferOp::DeleteRight: ev.payload = {before.contents.back()}; break;
    case BufferOp::Create:
    case BufferOp::Reorder:
    case BufferOp::AmbiguousEnd:
    case BufferOp::Other: ev.payload = after.contents; break;
    case BufferOp::Destroy:
    case BufferOp::Unchanged: break;
  }
  return ev;
}

std::vector<BufferEvent> buffer_events(const Grammar& g, const DerivationTrace& t, const Delimiters& d) {
  const auto snaps = extract_buffer_trace(t, d);
  std::vector<BufferEvent> out;
  out.reserve(t.steps.size());
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto end = rewrite_end(g, t.form_at(k), {t.steps[k].production, t.steps[k].position}, d);
    out.push_back(describe_step(snaps[k], snaps[k + 1], end));
  }
  return out;
}

std::vector<std::optional<SententialForm>> reconstruct_buffer(const std::optional<SententialForm>& initial,
                                                              const std::vector<BufferEvent>& events) {
  std::vector<std::optional<SententialForm>> out{initial};
  std::optional<SententialForm> cur = initial;
  for (const BufferEvent& ev : events) {
    switch (ev.op) {
      case BufferOp::Create:
      case BufferOp::Reorder:
      case BufferOp::AmbiguousEnd:
      case BufferOp::Other: cur = ev.payload; break;
      case BufferOp::Destroy: cur.reset(); break;
      case BufferOp::InsertLeft: cur->insert(cur->begin(), ev.payload.front()); break;
      case BufferOp::InsertRight: cur->push_back(ev.payload.front()); break;
      case BufferOp::DeleteLeft: cur->erase(cur->begin()); break;
      case BufferOp::DeleteRight: cur->pop_back(); break;
      case BufferOp::Unchanged: break;
    }
    out.push_back(cur);
  }
  return out;
}

DisciplineVerdict classify_discipline(const Grammar& g, std::string_view left, std::string_view right,
                                      const std::vector<DerivationTrace>& traces) {
  if (traces.empty()) throw ArgumentError("classify_discipline needs at least one trace");
  const Delimiters d = Delimiters::resolve(g, left, right);

  DisciplineVerdict out;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    replay_trace(g, traces[i]);
    const auto events = buffer_events(g, traces[i], d);
    for (std::size_t k = 0; k < events.size(); ++k) {
      const BufferOp op = events[k].op;
      ++out.op_histogram[op];
      switch (op) {
        case BufferOp::InsertLeft: out.insert_ends.insert(End::Left); break;
        case BufferOp::InsertRight: out.insert_ends.insert(End::Right); break;
        case BufferOp::DeleteLeft: out.delete_ends.insert(End::Left); break;
        case BufferOp::DeleteRight: out.delete_ends.insert(End::Right); break;
        case BufferOp::Other: out.violations.push_back({i, k, op}); break;
        default: break;
      }
    }
  }

  const auto& ins = out.insert_ends;
  const auto& del = out.delete_ends;
  auto within = [](const std::set<End>& s, End e) { return s.empty() || (s.size() == 1 && *s.begin() == e); };
  if (!out.violations.empty()) {
    out.verdict = Discipline::Other;
  } else if (ins.empty() && del.empty()) {
    out.verdict = Discipline::Empty;
  } else if ((within(ins, End::Left) && within(del, End::Left)) || (within(ins, End::Right) && within(del, End::Right))) {
    out.verdict = Discipline::Stack;
  } else if ((within(ins, End::Left) && within(del, End::Right)) || (within(ins, End::Right) && within(del, End::Left))) {
    out.verdict = Discipline::Queue;
  } else {
    out.verdict = Discipline::Deque;
  }
  return out;
}

// ---------------------------------------------------------------------------

PriorityOrder parse_priority(const Grammar& g, std::string_view text) {
  PriorityOrder out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t gt = text.find('>', pos);
    if (gt == std::string_view::npos) gt = text.size();
    std::string_view part = text.substr(pos, gt - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (part.empty()) throw ArgumentError("malformed priority order '" + std::string(text) + "'");
    const SymbolId s = g.id(part);
    if (std::find(out.begin(), out.end(), s) != out.end()) {
      throw ArgumentError("symbol '" + std::string(part) + "' repeated in priority order");
    }
    out.push_back(s);
    pos = gt + 1;
  }
  return out;
}

namespace {

std::optional<std::size_t> rank_of(const PriorityOrder& order, SymbolId s) {
  auto it = std::find(order.begin(), order.end(), s);
  if (it == order.end()) return std::nullopt;
  return static_cast<std::size_t>(it - order.begin());
}

// Symbol removed by the step, if the step is a delete.
std::optional<SymbolId> deleted_symbol(const BufferSnapshot& before, const BufferEvent& ev) {
  if (is_delete(ev.op)) return ev.payload.front();
  if (ev.op == BufferOp::AmbiguousEnd && before.contents.size() == 1) return before.contents.front();
  return std::nullopt;
}

// Empty string when the delete respects priority, otherwise a description.
std::string priority_breach(const Grammar& g, const BufferSnapshot& before, SymbolId removed,
                            const PriorityOrder& order, std::size_t step) {
  const auto r = rank_of(order, removed);
  if (!r) throw AnalysisError("deleted symbol '" + g.name_of(removed) + "' is outside the priority order", step);
  for (SymbolId s : before.contents) {
    if (auto rs = rank_of(order, s); rs && *rs < *r) {
      return "deleted '" + g.name_of(removed) + "' while '" + g.name_of(s) + "' was buffered";
    }
  }
  return {};
}

class PriorityFilter final : public StepFilter {
 public:
  PriorityFilter(Delimiters d, PriorityOrder order, bool require_reorder)
      : d_(d), order_(std::move(order)), require_reorder_(require_reorder) {}

  std::optional<State> advance(State s, const Grammar& g, const SententialForm& form, const Match& m) const override {
    try {
      const BufferSnapshot before = snapshot_of(form, d_);
      const BufferSnapshot after = snapshot_of(apply_at(g, form, m), d_);
      const BufferEvent ev = describe_step(before, after, rewrite_end(g, form, m, d_));
      if (auto removed = deleted_symbol(before, ev)) {
        if (!priority_breach(g, before, *removed, order_, 0).empty()) return std::nullopt;
      }
      return ev.op == BufferOp::Reorder ? State{1} : s;
    } catch (const AnalysisError&) {
      return std::nullopt;
    }
  }

  bool accepts(State s) const override { return !require_reorder_ || s == 1; }

 private:
  Delimiters d_;
  PriorityOrder order_;
  bool require_reorder_;
};

}  // namespace

PriorityCheck check_priority_discipline(const Grammar& g, const DerivationTrace& t, std::string_view left,
                                        std::string_view right, const PriorityOrder& order) {
  const auto snaps = extract_buffer_trace(g, t, left, right);
  const auto events = buffer_events(g, t, Delimiters::resolve(g, left, right));
  for (std::size_t k = 0; k < events.size(); ++k) {
    const auto removed = deleted_symbol(snaps[k], events[k]);
    if (!removed) continue;
    if (std::string why = priority_breach(g, snaps[k], *removed, order, k); !why.empty()) {
      return {false, k, std::move(why)};
    }
  }
  return {};
}

SearchOutcome find_priority_respecting_derivation(const Grammar& g, std::string_view left, std::string_view right,
                                                  const PriorityOrder& order, const SearchLimits& lim,
                                                  bool require_reorder) {
  PriorityFilter filter(Delimiters::resolve(g, left, right), order, require_reorder);
  return bfs_derive(g, {}, lim, &filter);
}

// ---------------------------------------------------------------------------

std::optional<DerivationTrace> random_derivation(const Grammar& g, std::uint64_t seed, const WalkOptions& opts) {
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
    DerivationTrace t{g.name(), {g.start()}, {}};
    SententialForm cur = t.initial;
    for (std::size_t step = 0; step <= opts.max_steps; ++step) {
      if (g.is_terminal_form(cur)) return t;
      if (step == opts.max_steps) break;
      auto next = successors(g, cur);
      if (next.empty()) break;

      std::vector<std::size_t> pool;
      if (cur.size() > opts.soft_len) {
        for (std::size_t i = 0; i < next.size(); ++i) {
          if (next[i].second.size() < cur.size()) pool.push_back(i);
        }
      }
      if (pool.empty()) {
        pool.resize(next.size());
        for (std::size_t i = 0; i < next.size(); ++i) pool[i] = i;
      }
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      auto& [m, form] = next[pool[pick(rng)]];
      t.steps.push_back({m.production, m.position, form});
      cur = std::move(form);
    }
  }
  return std::nullopt;
}

std::vector<DerivationTrace> random_derivations(const Grammar& g, std::size_t count, const WalkOptions& opts) {
  std::vector<DerivationTrace> out;
  for (std::size_t seed = 0; seed < count; ++seed) {
    if (auto t = random_derivation(g, seed, opts)) out.push_back(std::move(*t));
  }
  return out;
}

}  // namespace fgw
