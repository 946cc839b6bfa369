#include "pltl/dfa.hpp"

#include <sstream>

#include "pltl/semantics.hpp"

namespace pltl {

Dfa::Dfa(std::vector<uint8_t> symbol_class, uint32_t num_classes,
         std::vector<uint32_t> transitions, uint32_t initial, std::vector<uint8_t> accepting,
         bool accepts_negation)
    : symbol_class_(std::move(symbol_class)), num_classes_(num_classes),
      transitions_(std::move(transitions)), initial_(initial),
      accepting_(std::move(accepting)), accepts_negation_(accepts_negation) {
  if (transitions_.size() != accepting_.size() * num_classes_)
    throw error("malformed DFA transition table");
  for (uint32_t t : transitions_)
    if (t >= accepting_.size()) throw error("DFA transition out of range");
  for (uint8_t c : symbol_class_)
    if (c >= num_classes_) throw error("DFA symbol class out of range");
}

bool dfa_run(const Dfa &a, const Trajectory &s) {
  if (s.space().num_states() != a.num_symbols())
    throw error("trajectory alphabet does not match the automaton");
  uint32_t q = a.initial();
  for (int k = 1; k <= s.length(); ++k) q = a.next(q, s.index_at(k));
  return a.accepting(q);
}

namespace {

// Per-symbol truth of a temporal-free formula.
std::vector<uint8_t> predicate_classes(const Formula &p, const StateSpace &space) {
  std::vector<uint8_t> cls(space.num_states());
  for (uint64_t i = 0; i < space.num_states(); ++i)
    cls[i] = eval_state(p, space.state_at(i)) ? 1 : 0;
  return cls;
}

struct Builder {
  std::vector<uint32_t> trans;
  std::vector<uint8_t> accepting;

  uint32_t add_state(bool accept) {
    accepting.push_back(accept ? 1 : 0);
    trans.resize(accepting.size() * 2, 0);
    return static_cast<uint32_t>(accepting.size() - 1);
  }
  void set(uint32_t q, uint8_t cls, uint32_t target) { trans[q * 2 + cls] = target; }
  void set_both(uint32_t q, uint32_t target) {
    set(q, 0, target);
    set(q, 1, target);
  }
};

/* Reaches for the predicate inside the offset window [lo, hi]: counting
 * state n has consumed n symbols, so the arriving symbol is position n+1.
 * Accept trap on a hit inside the window, reject trap past it. */
Dfa reach_window(int lo, int hi, std::vector<uint8_t> cls, bool negated) {
  Builder b;
  std::vector<uint32_t> counting;
  for (int n = 0; n <= hi; ++n) counting.push_back(b.add_state(false));
  uint32_t acc = b.add_state(true);
  uint32_t rej = b.add_state(false);
  b.set_both(acc, acc);
  b.set_both(rej, rej);
  for (int n = 0; n <= hi; ++n) {
    uint32_t nxt = n < hi ? counting[static_cast<size_t>(n + 1)] : rej;
    if (n < lo) {
      b.set_both(counting[static_cast<size_t>(n)], nxt);
    } else {
      b.set(counting[static_cast<size_t>(n)], 1, acc);
      b.set(counting[static_cast<size_t>(n)], 0, nxt);
    }
  }
  return Dfa(std::move(cls), 2, std::move(b.trans), counting[0], std::move(b.accepting),
             negated);
}

/* Requires the predicate everywhere in the offset window [lo, hi]: reject
 * trap on a miss inside the window, accept trap once the window is done. */
Dfa guard_window(int lo, int hi, std::vector<uint8_t> cls, bool negated) {
  Builder b;
  std::vector<uint32_t> counting;
  for (int n = 0; n <= hi; ++n) counting.push_back(b.add_state(false));
  uint32_t acc = b.add_state(true);
  uint32_t rej = b.add_state(false);
  b.set_both(acc, acc);
  b.set_both(rej, rej);
  for (int n = 0; n <= hi; ++n) {
    uint32_t nxt = n < hi ? counting[static_cast<size_t>(n + 1)] : acc;
    if (n < lo) {
      b.set_both(counting[static_cast<size_t>(n)], nxt);
    } else {
      b.set(counting[static_cast<size_t>(n)], 1, nxt);
      b.set(counting[static_cast<size_t>(n)], 0, rej);
    }
  }
  return Dfa(std::move(cls), 2, std::move(b.trans), counting[0], std::move(b.accepting),
             negated);
}

/* Hunts for the predicate from offset lo onward, no upper bound. */
Dfa reach_tail(int lo, std::vector<uint8_t> cls, bool negated) {
  Builder b;
  std::vector<uint32_t> skip;
  for (int n = 0; n < lo; ++n) skip.push_back(b.add_state(false));
  uint32_t hunt = b.add_state(false);
  uint32_t acc = b.add_state(true);
  b.set_both(acc, acc);
  for (int n = 0; n < lo; ++n)
    b.set_both(skip[static_cast<size_t>(n)], n + 1 < lo ? skip[static_cast<size_t>(n + 1)] : hunt);
  b.set(hunt, 1, acc);
  b.set(hunt, 0, hunt);
  return Dfa(std::move(cls), 2, std::move(b.trans), lo > 0 ? skip[0] : hunt,
             std::move(b.accepting), negated);
}

/* Accepts once i+1 consecutive predicate states have been seen. */
Dfa consecutive_run(int i, std::vector<uint8_t> cls, bool negated) {
  Builder b;
  std::vector<uint32_t> run;
  for (int n = 0; n <= i; ++n) run.push_back(b.add_state(false));
  uint32_t acc = b.add_state(true);
  b.set_both(acc, acc);
  for (int n = 0; n <= i; ++n) {
    b.set(run[static_cast<size_t>(n)], 1, n < i ? run[static_cast<size_t>(n + 1)] : acc);
    b.set(run[static_cast<size_t>(n)], 0, run[0]);
  }
  return Dfa(std::move(cls), 2, std::move(b.trans), run[0], std::move(b.accepting), negated);
}

std::vector<uint8_t> complemented(std::vector<uint8_t> cls) {
  for (auto &c : cls) c = c ? 0 : 1;
  return cls;
}

bool nnf_shape_supported(const Formula &f) {
  if (f.is_state_formula()) return true;
  switch (f.op()) {
  case Op::Eventually:
  case Op::Always: {
    Formula c = f.child();
    if (c.is_state_formula()) return true;
    // nested shapes G(F[<=i] p) and F(G[<=i] p)
    if (f.interval().kind != IntervalKind::Unbounded) return false;
    Op inner = f.op() == Op::Always ? Op::Eventually : Op::Always;
    return c.op() == inner && c.interval().kind == IntervalKind::AtMost &&
           c.child().is_state_formula();
  }
  default: return false;
  }
}

} // namespace

bool dfa_supported(const Formula &f) { return nnf_shape_supported(f.nnf()); }

Dfa build_dfa(const Formula &raw, const StateSpace &space) {
  Formula f = raw.nnf();
  if (f.is_state_formula())
    return reach_window(0, 0, predicate_classes(f, space), false);

  if (!nnf_shape_supported(f))
    throw shape_error("unsupported template shape: " + raw.to_string());

  const Interval &itv = f.interval();
  Formula c = f.child();

  if (f.op() == Op::Eventually && c.is_state_formula()) {
    auto cls = predicate_classes(c, space);
    switch (itv.kind) {
    case IntervalKind::AtMost: return reach_window(0, itv.hi, std::move(cls), false);
    case IntervalKind::Between: return reach_window(itv.lo, itv.hi, std::move(cls), false);
    case IntervalKind::AtLeast: return reach_tail(itv.lo, std::move(cls), false);
    case IntervalKind::Unbounded: return reach_tail(0, std::move(cls), false);
    }
  }

  if (f.op() == Op::Always && c.is_state_formula()) {
    auto cls = predicate_classes(c, space);
    switch (itv.kind) {
    case IntervalKind::AtMost:
      // both co-safe and safe; treated as co-safe
      return guard_window(0, itv.hi, std::move(cls), false);
    case IntervalKind::Between:
      // safe only: accept strong violation, a miss inside the window
      return reach_window(itv.lo, itv.hi, complemented(std::move(cls)), true);
    case IntervalKind::AtLeast:
      return reach_tail(itv.lo, complemented(std::move(cls)), true);
    case IntervalKind::Unbounded:
      return reach_tail(0, complemented(std::move(cls)), true);
    }
  }

  // G(F[<=i] p): safe only, violated by i+1 consecutive !p
  if (f.op() == Op::Always) {
    auto cls = predicate_classes(c.child(), space);
    return consecutive_run(c.interval().hi, complemented(std::move(cls)), true);
  }
  // F(G[<=i] p): co-safe, satisfied by i+1 consecutive p
  auto cls = predicate_classes(c.child(), space);
  return consecutive_run(c.interval().hi, std::move(cls), false);
}

std::string Dfa::dump(const StateSpace &space) const {
  std::ostringstream os;
  os << "states: " << num_states() << ", initial: q" << initial_
     << (accepts_negation_ ? ", accepts negation\n" : "\n");
  os << "symbol classes:\n";
  for (uint32_t c = 0; c < num_classes_; ++c) {
    os << "  class " << c << ": {";
    int shown = 0;
    for (uint32_t s = 0; s < num_symbols(); ++s) {
      if (symbol_class_[s] != c) continue;
      if (shown > 0) os << ", ";
      if (shown == 12) {
        os << "...";
        break;
      }
      State st = space.state_at(s);
      os << "(";
      for (size_t v = 0; v < st.size(); ++v) {
        if (v) os << ",";
        if (space.is_numeric(v))
          os << st[v];
        else
          os << space.label(v, st[v]);
      }
      os << ")";
      ++shown;
    }
    os << "}\n";
  }
  os << "transitions (state, class) -> state; * marks accepting:\n";
  for (uint32_t q = 0; q < num_states(); ++q) {
    os << (accepting_[q] ? " *" : "  ") << "q" << q << ":";
    for (uint32_t c = 0; c < num_classes_; ++c)
      os << "  [" << c << "]-> q" << transitions_[q * num_classes_ + c];
    os << "\n";
  }
  return os.str();
}

} // namespace pltl
