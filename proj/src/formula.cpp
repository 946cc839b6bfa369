#include "pltl/formula.hpp"

#include <algorithm>

namespace pltl {

Interval Interval::at_most(int i) {
  if (i < 0) throw config_error("interval parameter must be nonnegative");
  return {IntervalKind::AtMost, 0, i};
}

Interval Interval::at_least(int i) {
  if (i < 0) throw config_error("interval parameter must be nonnegative");
  return {IntervalKind::AtLeast, i, 0};
}

Interval Interval::between(int i1, int i2) {
  if (i1 < 0) throw config_error("interval parameter must be nonnegative");
  if (i1 >= i2) throw config_error("interval requires i1 < i2");
  return {IntervalKind::Between, i1, i2};
}

std::string Interval::to_string() const {
  switch (kind) {
  case IntervalKind::Unbounded: return "";
  case IntervalKind::AtMost: return "[<=" + std::to_string(hi) + "]";
  case IntervalKind::AtLeast: return "[>=" + std::to_string(lo) + "]";
  case IntervalKind::Between:
    return "[>=" + std::to_string(lo) + ",<=" + std::to_string(hi) + "]";
  }
  return "";
}

Formula Formula::make(Op op, Interval itv, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->interval = itv;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::make_true() { return make(Op::True, Interval::unbounded()); }
Formula Formula::make_false() { return make(Op::False, Interval::unbounded()); }

Formula Formula::atom(AtomicPredicate p) {
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->atom = std::move(p);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  return make(Op::Not, Interval::unbounded(), f.node_);
}
Formula Formula::conjunction(Formula a, Formula b) {
  return make(Op::And, Interval::unbounded(), a.node_, b.node_);
}
Formula Formula::disjunction(Formula a, Formula b) {
  return make(Op::Or, Interval::unbounded(), a.node_, b.node_);
}
Formula Formula::implication(Formula a, Formula b) {
  return disjunction(negation(a), b);
}
Formula Formula::next(Formula f) {
  return make(Op::Next, Interval::unbounded(), f.node_);
}
Formula Formula::until(Formula a, Formula b, Interval i) {
  return make(Op::Until, i, a.node_, b.node_);
}
Formula Formula::release(Formula a, Formula b, Interval i) {
  return make(Op::Release, i, a.node_, b.node_);
}
Formula Formula::eventually(Interval i, Formula f) {
  return make(Op::Eventually, i, f.node_);
}
Formula Formula::always(Interval i, Formula f) {
  return make(Op::Always, i, f.node_);
}

bool Formula::is_unary() const {
  return op() == Op::Not || op() == Op::Next || op() == Op::Eventually || op() == Op::Always;
}

bool Formula::is_binary() const {
  return op() == Op::And || op() == Op::Or || op() == Op::Until || op() == Op::Release;
}

bool Formula::operator==(const Formula &o) const {
  if (node_ == o.node_) return true;
  if (op() != o.op() || !(interval() == o.interval())) return false;
  switch (op()) {
  case Op::True:
  case Op::False: return true;
  case Op::Atom: return atom_pred() == o.atom_pred();
  case Op::Not:
  case Op::Next:
  case Op::Eventually:
  case Op::Always: return child() == o.child();
  default: return left() == o.left() && right() == o.right();
  }
}

int Formula::size() const {
  switch (op()) {
  case Op::True:
  case Op::False:
  case Op::Atom: return 0;
  case Op::And:
  case Op::Or: return 1 + left().size() + right().size();
  case Op::Until:
  case Op::Release: return left().size() + right().size();
  default: return child().size();
  }
}

namespace {

// Largest position offset reachable from k through bounded windows.
int max_offset(const Formula &f) {
  switch (f.op()) {
  case Op::True:
  case Op::False:
  case Op::Atom: return 0;
  case Op::Not: return max_offset(f.child());
  case Op::And:
  case Op::Or: return std::max(max_offset(f.left()), max_offset(f.right()));
  case Op::Next: return 1 + max_offset(f.child());
  case Op::Eventually:
  case Op::Always: {
    const Interval &i = f.interval();
    int w = i.kind == IntervalKind::Unbounded ? 0
            : i.kind == IntervalKind::AtLeast ? i.lo
                                              : i.hi;
    return w + max_offset(f.child());
  }
  case Op::Until:
  case Op::Release: {
    const Interval &i = f.interval();
    int w = i.kind == IntervalKind::Unbounded ? 0
            : i.kind == IntervalKind::AtLeast ? i.lo
                                              : i.hi;
    return w + std::max(max_offset(f.left()), max_offset(f.right()));
  }
  }
  return 0;
}

} // namespace

int Formula::horizon() const { return 1 + max_offset(*this); }

bool Formula::is_state_formula() const {
  switch (op()) {
  case Op::True:
  case Op::False:
  case Op::Atom: return true;
  case Op::Not: return child().is_state_formula();
  case Op::And:
  case Op::Or: return left().is_state_formula() && right().is_state_formula();
  default: return false;
  }
}

namespace {

Formula nnf_of(const Formula &f, bool negate) {
  switch (f.op()) {
  case Op::True: return negate ? Formula::make_false() : Formula::make_true();
  case Op::False: return negate ? Formula::make_true() : Formula::make_false();
  case Op::Atom: return negate ? Formula::negation(f) : f;
  case Op::Not: return nnf_of(f.child(), !negate);
  case Op::And: {
    auto l = nnf_of(f.left(), negate), r = nnf_of(f.right(), negate);
    return negate ? Formula::disjunction(l, r) : Formula::conjunction(l, r);
  }
  case Op::Or: {
    auto l = nnf_of(f.left(), negate), r = nnf_of(f.right(), negate);
    return negate ? Formula::conjunction(l, r) : Formula::disjunction(l, r);
  }
  case Op::Next: return Formula::next(nnf_of(f.child(), negate));
  case Op::Eventually: {
    auto c = nnf_of(f.child(), negate);
    return negate ? Formula::always(f.interval(), c) : Formula::eventually(f.interval(), c);
  }
  case Op::Always: {
    auto c = nnf_of(f.child(), negate);
    return negate ? Formula::eventually(f.interval(), c) : Formula::always(f.interval(), c);
  }
  case Op::Until: {
    auto l = nnf_of(f.left(), negate), r = nnf_of(f.right(), negate);
    return negate ? Formula::release(l, r, f.interval()) : Formula::until(l, r, f.interval());
  }
  case Op::Release: {
    auto l = nnf_of(f.left(), negate), r = nnf_of(f.right(), negate);
    return negate ? Formula::until(l, r, f.interval()) : Formula::release(l, r, f.interval());
  }
  }
  return f;
}

struct FragBits {
  bool cosafe;
  bool safe;
};

// Membership in the co-safe/safe grammars; input must be in NNF.
FragBits frag_bits(const Formula &f) {
  switch (f.op()) {
  case Op::True: return {true, false};
  case Op::False: return {false, true};
  case Op::Atom: return {true, true};
  case Op::Not: return {true, true}; // literal after NNF
  case Op::And:
  case Op::Or: {
    auto l = frag_bits(f.left()), r = frag_bits(f.right());
    return {l.cosafe && r.cosafe, l.safe && r.safe};
  }
  case Op::Next: return frag_bits(f.child());
  case Op::Eventually: {
    auto c = frag_bits(f.child());
    switch (f.interval().kind) {
    case IntervalKind::AtMost: return {c.cosafe, c.safe};
    case IntervalKind::Unbounded:
    case IntervalKind::AtLeast:
    case IntervalKind::Between: return {c.cosafe, false};
    }
    return c;
  }
  case Op::Always: {
    auto c = frag_bits(f.child());
    switch (f.interval().kind) {
    case IntervalKind::AtMost: return {c.cosafe, c.safe};
    case IntervalKind::Unbounded:
    case IntervalKind::AtLeast:
    case IntervalKind::Between: return {false, c.safe};
    }
    return c;
  }
  case Op::Until: {
    auto l = frag_bits(f.left()), r = frag_bits(f.right());
    bool both = l.cosafe && r.cosafe;
    bool safe = l.safe && r.safe;
    switch (f.interval().kind) {
    case IntervalKind::AtMost: return {both, safe};
    default: return {both, false};
    }
  }
  case Op::Release: {
    auto l = frag_bits(f.left()), r = frag_bits(f.right());
    bool cosafe = l.cosafe && r.cosafe;
    bool safe = l.safe && r.safe;
    switch (f.interval().kind) {
    case IntervalKind::AtMost: return {cosafe, safe};
    case IntervalKind::AtLeast:
    case IntervalKind::Between: return {false, safe};
    case IntervalKind::Unbounded: return {false, safe};
    }
    return {false, safe};
  }
  }
  return {false, false};
}

} // namespace

Formula Formula::nnf() const { return nnf_of(*this, false); }

Fragment Formula::fragment() const {
  FragBits b = frag_bits(nnf());
  if (b.cosafe && b.safe) return Fragment::Both;
  if (b.cosafe) return Fragment::CoSafe;
  if (b.safe) return Fragment::Safe;
  return Fragment::Neither;
}

Fragment classify(const Formula &f) { return f.fragment(); }

namespace {

/* Printing precedence, tighter binds lower:
 *   0 atoms/constants/parenthesized, 1 unary (! X F G), 2 U R, 3 &, 4 |
 */
int precedence(const Formula &f) {
  switch (f.op()) {
  case Op::True:
  case Op::False:
  case Op::Atom: return 0;
  case Op::Not:
  case Op::Next:
  case Op::Eventually:
  case Op::Always: return 1;
  case Op::Until:
  case Op::Release: return 2;
  case Op::And: return 3;
  case Op::Or: return 4;
  }
  return 0;
}

void print(const Formula &f, std::string &out, int parent_prec) {
  int prec = precedence(f);
  bool parens = prec > parent_prec;
  if (parens) out += '(';
  switch (f.op()) {
  case Op::True: out += "true"; break;
  case Op::False: out += "false"; break;
  case Op::Atom: out += f.atom_pred().to_string(); break;
  case Op::Not:
    out += '!';
    print(f.child(), out, -1);
    break;
  case Op::Next:
    out += 'X';
    print(f.child(), out, -1);
    break;
  case Op::Eventually:
    out += 'F';
    out += f.interval().to_string();
    print(f.child(), out, -1);
    break;
  case Op::Always:
    out += 'G';
    out += f.interval().to_string();
    print(f.child(), out, -1);
    break;
  case Op::Until:
  case Op::Release:
    print(f.left(), out, prec - 1);
    out += f.op() == Op::Until ? " U" : " R";
    out += f.interval().to_string();
    out += ' ';
    print(f.right(), out, prec); // right-associative
    break;
  case Op::And:
  case Op::Or:
    print(f.left(), out, prec);
    out += f.op() == Op::And ? " & " : " | ";
    print(f.right(), out, prec - 1); // left-associative
    break;
  }
  if (parens) out += ')';
}

} // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, out, 4);
  return out;
}

std::string to_string(Fragment f) {
  switch (f) {
  case Fragment::CoSafe: return "co-safe";
  case Fragment::Safe: return "safe";
  case Fragment::Both: return "both";
  case Fragment::Neither: return "neither";
  }
  return "";
}

} // namespace pltl
