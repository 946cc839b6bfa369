#include "pltl/state_space.hpp"

#include <algorithm>

namespace pltl {

StateSpace::StateSpace(std::vector<NumericVar> numeric, std::vector<CategoricalVar> categorical)
    : numeric_(std::move(numeric)), categorical_(std::move(categorical)) {
  std::vector<std::string> names;
  for (const auto &v : numeric_) {
    if (v.hi < v.lo)
      throw config_error("empty domain for variable '" + v.name + "'");
    names.push_back(v.name);
  }
  for (const auto &v : categorical_) {
    if (v.labels.empty())
      throw config_error("empty label set for variable '" + v.name + "'");
    names.push_back(v.name);
  }
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end())
    throw config_error("duplicate variable name");

  strides_.resize(num_vars());
  uint64_t n = 1;
  for (size_t i = 0; i < num_vars(); ++i) {
    strides_[i] = n;
    n *= static_cast<uint64_t>(var_size(i));
    if (n > (uint64_t(1) << 40))
      throw guard_error("state space too large");
  }
  num_states_ = n;
}

const std::string &StateSpace::var_name(size_t var) const {
  return var < numeric_.size() ? numeric_[var].name : categorical_[var - numeric_.size()].name;
}

size_t StateSpace::var_index(const std::string &name) const {
  for (size_t i = 0; i < numeric_.size(); ++i)
    if (numeric_[i].name == name) return i;
  for (size_t i = 0; i < categorical_.size(); ++i)
    if (categorical_[i].name == name) return numeric_.size() + i;
  throw config_error("unknown variable '" + name + "'");
}

int StateSpace::var_size(size_t var) const {
  if (is_numeric(var)) return numeric_[var].hi - numeric_[var].lo + 1;
  return static_cast<int>(categorical_[var - numeric_.size()].labels.size());
}

int StateSpace::label_index(size_t var, const std::string &label) const {
  const auto &labels = categorical_[var - numeric_.size()].labels;
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  throw config_error("unknown label '" + label + "' for variable '" + var_name(var) + "'");
}

const std::string &StateSpace::label(size_t var, int value) const {
  return categorical_[var - numeric_.size()].labels[static_cast<size_t>(value)];
}

bool StateSpace::contains(const State &s) const {
  if (s.size() != num_vars()) return false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (is_numeric(i)) {
      if (s[i] < numeric_[i].lo || s[i] > numeric_[i].hi) return false;
    } else {
      if (s[i] < 0 || s[i] >= var_size(i)) return false;
    }
  }
  return true;
}

void StateSpace::check(const State &s) const {
  if (!contains(s)) throw io_error("state outside the declared state space");
}

uint64_t StateSpace::index_of(const State &s) const {
  uint64_t idx = 0;
  for (size_t i = 0; i < num_vars(); ++i) {
    int base = is_numeric(i) ? numeric_[i].lo : 0;
    idx += strides_[i] * static_cast<uint64_t>(s[i] - base);
  }
  return idx;
}

State StateSpace::state_at(uint64_t index) const {
  State s(num_vars());
  for (size_t i = 0; i < num_vars(); ++i) {
    int v = static_cast<int>((index / strides_[i]) % static_cast<uint64_t>(var_size(i)));
    s[i] = is_numeric(i) ? v + numeric_[i].lo : v;
  }
  return s;
}

bool StateSpace::operator==(const StateSpace &other) const {
  if (numeric_.size() != other.numeric_.size() ||
      categorical_.size() != other.categorical_.size())
    return false;
  for (size_t i = 0; i < numeric_.size(); ++i) {
    const auto &a = numeric_[i], &b = other.numeric_[i];
    if (a.name != b.name || a.lo != b.lo || a.hi != b.hi) return false;
  }
  for (size_t i = 0; i < categorical_.size(); ++i) {
    const auto &a = categorical_[i], &b = other.categorical_[i];
    if (a.name != b.name || a.labels != b.labels) return false;
  }
  return true;
}

AtomicPredicate AtomicPredicate::numeric(const StateSpace &space, const std::string &var,
                                         Rel rel, int threshold) {
  size_t idx = space.var_index(var);
  if (!space.is_numeric(idx))
    throw config_error("relation requires a numeric variable: '" + var + "'");
  if (rel == Rel::Eq)
    throw config_error("'=' applies only to categorical variables: '" + var + "'");
  const auto &nv = space.numeric()[idx];
  if (threshold < nv.lo || threshold > nv.hi)
    throw config_error("threshold " + std::to_string(threshold) + " outside domain of '" +
                       var + "'");
  AtomicPredicate p;
  p.var = idx;
  p.rel = rel;
  p.value = threshold;
  p.var_name = var;
  return p;
}

AtomicPredicate AtomicPredicate::categorical(const StateSpace &space, const std::string &var,
                                             const std::string &label) {
  size_t idx = space.var_index(var);
  if (space.is_numeric(idx))
    throw config_error("'=' applies only to categorical variables: '" + var + "'");
  AtomicPredicate p;
  p.var = idx;
  p.rel = Rel::Eq;
  p.value = space.label_index(idx, label);
  p.var_name = var;
  p.label = label;
  return p;
}

std::string AtomicPredicate::to_string() const {
  switch (rel) {
  case Rel::Ge: return var_name + ">=" + std::to_string(value);
  case Rel::Le: return var_name + "<=" + std::to_string(value);
  case Rel::Eq: return var_name + "=" + label;
  }
  return "";
}

} // namespace pltl
