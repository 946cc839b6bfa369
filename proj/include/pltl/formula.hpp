#pragma once

#include <memory>
#include <optional>
#include <string>

#include "pltl/state_space.hpp"

namespace pltl {

enum class Op {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Next,
  Until,
  Release,
  Eventually,
  Always,
};

enum class IntervalKind { Unbounded, AtMost, AtLeast, Between };

/* Temporal window attached to U, R, F, G. `Between` requires lo < hi. */
struct Interval {
  IntervalKind kind = IntervalKind::Unbounded;
  int lo = 0;
  int hi = 0;

  static Interval unbounded() { return {}; }
  static Interval at_most(int i);
  static Interval at_least(int i);
  static Interval between(int i1, int i2);

  bool operator==(const Interval &o) const {
    return kind == o.kind && lo == o.lo && hi == o.hi;
  }
  std::string to_string() const; // "", "[<=5]", "[>=3]", "[>=51,<=52]"
};

enum class Fragment { CoSafe, Safe, Both, Neither };

/* Immutable formula AST with shared subterms. Structural equality and the
 * canonical printing make formulas usable as memo keys. */
class Formula {
public:
  Formula() : Formula(make_true()) {}

  static Formula make_true();
  static Formula make_false();
  static Formula atom(AtomicPredicate p);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  // !a | b
  static Formula implication(Formula a, Formula b);
  static Formula next(Formula f);
  static Formula until(Formula a, Formula b, Interval i = Interval::unbounded());
  static Formula release(Formula a, Formula b, Interval i = Interval::unbounded());
  static Formula eventually(Interval i, Formula f);
  static Formula always(Interval i, Formula f);

  Op op() const { return node_->op; }
  const Interval &interval() const { return node_->interval; }
  const AtomicPredicate &atom_pred() const { return *node_->atom; }
  Formula child() const { return Formula(node_->lhs); }  // unary
  Formula left() const { return Formula(node_->lhs); }
  Formula right() const { return Formula(node_->rhs); }
  bool is_unary() const;
  bool is_binary() const;

  bool operator==(const Formula &o) const;

  // Number of Boolean connectives (And/Or nodes).
  int size() const;

  /* Minimal trajectory length on which the formula can be decided at k=1:
   * one plus the nesting sum of bounded-window upper offsets. */
  int horizon() const;

  // True when the formula contains no temporal operator.
  bool is_state_formula() const;

  // Wraps one negation around the formula.
  Formula negated() const { return negation(*this); }

  // Negation normal form: Not pushed down to atoms via the standard dualities.
  Formula nnf() const;

  // Fragment of the negation normal form.
  Fragment fragment() const;

  std::string to_string() const;

  // Stable pointer usable as an identity key for one shared AST.
  const void *id() const { return node_.get(); }

private:
  struct Node {
    Op op;
    Interval interval;
    std::optional<AtomicPredicate> atom;
    std::shared_ptr<const Node> lhs, rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit Formula(NodePtr n) : node_(std::move(n)) {}
  static Formula make(Op op, Interval itv, NodePtr lhs = nullptr, NodePtr rhs = nullptr);

  NodePtr node_;
};

// Count of And/Or connectives; free-function form of Formula::size.
inline int size(const Formula &f) { return f.size(); }

Fragment classify(const Formula &f);

std::string to_string(Fragment f);

} // namespace pltl
