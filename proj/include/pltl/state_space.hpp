#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pltl/errors.hpp"

namespace pltl {

/* A system state is a tuple of variable values: numeric variables hold an
 * integer from a closed interval, categorical variables hold the index of a
 * label. Values are laid out in declaration order, numerics first. */
using State = std::vector<int>;

struct NumericVar {
  std::string name;
  int lo = 0;
  int hi = 0;
};

struct CategoricalVar {
  std::string name;
  std::vector<std::string> labels;
};

/* Finite state space induced by the declared variables. States are
 * identified both by value tuple and by a flat index in [0, num_states). */
class StateSpace {
public:
  StateSpace() = default;
  StateSpace(std::vector<NumericVar> numeric, std::vector<CategoricalVar> categorical = {});

  const std::vector<NumericVar> &numeric() const { return numeric_; }
  const std::vector<CategoricalVar> &categorical() const { return categorical_; }

  size_t num_vars() const { return numeric_.size() + categorical_.size(); }
  bool is_numeric(size_t var) const { return var < numeric_.size(); }
  const std::string &var_name(size_t var) const;
  // Index of a variable by name; throws if undeclared.
  size_t var_index(const std::string &name) const;
  // Domain size of one variable.
  int var_size(size_t var) const;
  // Label index within a categorical variable; throws if unknown.
  int label_index(size_t var, const std::string &label) const;
  const std::string &label(size_t var, int value) const;

  uint64_t num_states() const { return num_states_; }

  bool contains(const State &s) const;
  void check(const State &s) const; // throws io_error if out of domain

  uint64_t index_of(const State &s) const;
  State state_at(uint64_t index) const;

  bool operator==(const StateSpace &other) const;

private:
  std::vector<NumericVar> numeric_;
  std::vector<CategoricalVar> categorical_;
  std::vector<uint64_t> strides_;
  uint64_t num_states_ = 0;
};

enum class Rel { Ge, Le, Eq };

/* Single-variable comparison evaluated on one state. Ge/Le apply to numeric
 * variables, Eq to categorical ones. */
struct AtomicPredicate {
  size_t var = 0;
  Rel rel = Rel::Ge;
  int value = 0;
  std::string var_name;   // kept for printing
  std::string label;      // printable rhs for Eq atoms

  static AtomicPredicate numeric(const StateSpace &space, const std::string &var, Rel rel,
                                 int threshold);
  static AtomicPredicate categorical(const StateSpace &space, const std::string &var,
                                     const std::string &label);

  bool eval(const State &s) const {
    switch (rel) {
    case Rel::Ge: return s[var] >= value;
    case Rel::Le: return s[var] <= value;
    case Rel::Eq: return s[var] == value;
    }
    return false;
  }

  bool operator==(const AtomicPredicate &o) const {
    return var == o.var && rel == o.rel && value == o.value;
  }

  std::string to_string() const;
};

} // namespace pltl
