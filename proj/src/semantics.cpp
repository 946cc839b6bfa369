#include "pltl/semantics.hpp"

#include <algorithm>
#include <unordered_map>

namespace pltl {

namespace {

struct Evaluator {
  const Trajectory &s;
  int L;
  // memo per (node id, view, clamped position); -1 unknown
  std::unordered_map<const void *, std::vector<int8_t>> memo;

  explicit Evaluator(const Trajectory &traj) : s(traj), L(traj.length()) {}

  int clamp(int k) const { return std::min(k, L + 1); }

  bool eval(int k, const Formula &f, bool strong) {
    k = clamp(k);
    auto &slots = memo[f.id()];
    if (slots.empty()) slots.assign(2 * static_cast<size_t>(L + 2), -1);
    int8_t &slot = slots[static_cast<size_t>(k) * 2 + (strong ? 1 : 0)];
    if (slot >= 0) return slot != 0;
    bool v = compute(k, f, strong);
    slot = v ? 1 : 0;
    return v;
  }

  bool compute(int k, const Formula &f, bool strong) {
    switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom:
      if (k > L) return !strong;
      return f.atom_pred().eval(s.state_at(k));
    case Op::Not: return !eval(k, f.child(), !strong);
    case Op::And: return eval(k, f.left(), strong) && eval(k, f.right(), strong);
    case Op::Or: return eval(k, f.left(), strong) || eval(k, f.right(), strong);
    case Op::Next: return eval(k + 1, f.child(), strong);
    case Op::Eventually: {
      auto [lo, hi] = window(k, f.interval());
      for (int j = lo; j <= hi; ++j)
        if (eval(j, f.child(), strong)) return true;
      return false;
    }
    case Op::Always: {
      auto [lo, hi] = window(k, f.interval());
      for (int j = lo; j <= hi; ++j)
        if (!eval(j, f.child(), strong)) return false;
      return true;
    }
    case Op::Until: {
      // witness j needs rhs at j and lhs on all of [k, j], j included
      auto [lo, hi] = window(k, f.interval());
      for (int j = k; j <= hi; ++j) {
        if (!eval(j, f.left(), strong)) return false; // no witness from here on
        if (j >= lo && eval(j, f.right(), strong)) return true;
      }
      return false;
    }
    case Op::Release: {
      // dual of Until: every j in the window has rhs at j or lhs somewhere in [k, j]
      auto [lo, hi] = window(k, f.interval());
      for (int j = k; j <= hi; ++j) {
        if (eval(j, f.left(), strong)) return true; // positions < j already checked
        if (j >= lo && !eval(j, f.right(), strong)) return false;
      }
      return true;
    }
    }
    return false;
  }

  /* Candidate position range for an interval anchored at k, clamped to the
   * virtual end position L+1. */
  std::pair<int, int> window(int k, const Interval &itv) const {
    switch (itv.kind) {
    case IntervalKind::Unbounded: return {k, L + 1};
    case IntervalKind::AtMost: return {k, clamp(k + itv.hi)};
    case IntervalKind::AtLeast: return {clamp(k + itv.lo), L + 1};
    case IntervalKind::Between: return {clamp(k + itv.lo), clamp(k + itv.hi)};
    }
    return {k, k};
  }
};

} // namespace

bool eval_strong(const Trajectory &s, int k, const Formula &f) {
  if (k < 1) throw error("time index must be >= 1");
  Evaluator ev(s);
  return ev.eval(k, f, true);
}

bool eval_weak(const Trajectory &s, int k, const Formula &f) {
  if (k < 1) throw error("time index must be >= 1");
  Evaluator ev(s);
  return ev.eval(k, f, false);
}

bool satisfies(const Trajectory &s, const Formula &f) {
  Fragment frag = f.fragment();
  if (frag == Fragment::Neither)
    throw fragment_error("formula is neither syntactically co-safe nor safe: " +
                         f.to_string());
  if (s.length() < f.horizon())
    throw horizon_error("trajectory of length " + std::to_string(s.length()) +
                        " shorter than formula horizon " + std::to_string(f.horizon()));
  if (frag == Fragment::Safe) return eval_weak(s, 1, f);
  return eval_strong(s, 1, f);
}

bool holds(const Trajectory &s, const Formula &f) {
  if (f.fragment() != Fragment::Neither) return satisfies(s, f);
  switch (f.op()) {
  case Op::And: return holds(s, f.left()) && holds(s, f.right());
  case Op::Or: return holds(s, f.left()) || holds(s, f.right());
  default:
    throw fragment_error("formula is undecidable on finite trajectories: " + f.to_string());
  }
}

bool eval_state(const Formula &f, const State &s) {
  switch (f.op()) {
  case Op::True: return true;
  case Op::False: return false;
  case Op::Atom: return f.atom_pred().eval(s);
  case Op::Not: return !eval_state(f.child(), s);
  case Op::And: return eval_state(f.left(), s) && eval_state(f.right(), s);
  case Op::Or: return eval_state(f.left(), s) || eval_state(f.right(), s);
  default: throw error("temporal operator in state formula: " + f.to_string());
  }
}

} // namespace pltl
