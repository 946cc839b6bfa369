#pragma once

#include <memory>
#include <random>
#include <vector>

#include "pltl/formula.hpp"
#include "pltl/prior.hpp"
#include "pltl/rng.hpp"
#include "pltl/trajectory.hpp"

namespace pltl::test {

inline std::shared_ptr<const StateSpace> small_space(int lo = 0, int hi = 1) {
  return std::make_shared<StateSpace>(std::vector<NumericVar>{{"x", lo, hi}});
}

inline Trajectory random_trajectory(std::shared_ptr<const StateSpace> space, int L,
                                    std::mt19937_64 &rng) {
  std::vector<uint32_t> idx(static_cast<size_t>(L));
  for (auto &v : idx) v = static_cast<uint32_t>(rng() % space->num_states());
  return Trajectory(std::move(space), std::move(idx));
}

// Strictly positive random distribution over the space.
inline std::vector<double> random_positive_dist(size_t n, std::mt19937_64 &rng) {
  std::vector<double> d(n);
  double sum = 0.0;
  for (auto &v : d) {
    v = 0.05 + uniform01(rng);
    sum += v;
  }
  double acc = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) {
    d[i] /= sum;
    acc += d[i];
  }
  d[n - 1] = 1.0 - acc;
  return d;
}

inline Dtmc random_dtmc(std::shared_ptr<const StateSpace> space, std::mt19937_64 &rng) {
  size_t H = space->num_states();
  std::vector<std::vector<double>> P(H);
  for (auto &row : P) row = random_positive_dist(H, rng);
  return Dtmc(std::move(space), std::move(P), random_positive_dist(H, rng));
}

/* Random formula over the full operator set, for semantics properties. */
inline Formula random_formula(const StateSpace &space, std::mt19937_64 &rng, int depth) {
  auto atom = [&]() {
    const auto &nv = space.numeric()[0];
    int a = nv.lo + static_cast<int>(rng() % static_cast<uint64_t>(nv.hi - nv.lo + 1));
    Rel rel = rng() % 2 == 0 ? Rel::Ge : Rel::Le;
    return Formula::atom(AtomicPredicate::numeric(space, nv.name, rel, a));
  };
  if (depth <= 0) {
    switch (rng() % 4) {
    case 0: return Formula::make_true();
    case 1: return Formula::make_false();
    default: return atom();
    }
  }
  auto rec = [&]() { return random_formula(space, rng, depth - 1); };
  auto itv = [&]() {
    switch (rng() % 4) {
    case 0: return Interval::unbounded();
    case 1: return Interval::at_most(static_cast<int>(rng() % 4));
    case 2: return Interval::at_least(static_cast<int>(rng() % 4));
    default: {
      int i1 = static_cast<int>(rng() % 3);
      return Interval::between(i1, i1 + 1 + static_cast<int>(rng() % 3));
    }
    }
  };
  switch (rng() % 9) {
  case 0: return atom();
  case 1: return Formula::negation(rec());
  case 2: return Formula::conjunction(rec(), rec());
  case 3: return Formula::disjunction(rec(), rec());
  case 4: return Formula::next(rec());
  case 5: return Formula::until(rec(), rec(), itv());
  case 6: return Formula::release(rec(), rec(), itv());
  case 7: return Formula::eventually(itv(), rec());
  default: return Formula::always(itv(), rec());
  }
}

/* Random instance of one of the four automaton template kinds. */
inline Formula random_template_instance(const StateSpace &space, std::mt19937_64 &rng,
                                        int max_i) {
  const auto &nv = space.numeric()[0];
  int a = nv.lo + static_cast<int>(rng() % static_cast<uint64_t>(nv.hi - nv.lo + 1));
  Rel rel = rng() % 2 == 0 ? Rel::Ge : Rel::Le;
  Formula p = Formula::atom(AtomicPredicate::numeric(space, nv.name, rel, a));
  auto itv = [&]() {
    switch (rng() % 3) {
    case 0: return Interval::at_most(1 + static_cast<int>(rng() % static_cast<uint64_t>(max_i)));
    case 1: return Interval::at_least(1 + static_cast<int>(rng() % static_cast<uint64_t>(max_i)));
    default: {
      int i1 = static_cast<int>(rng() % static_cast<uint64_t>(max_i));
      int i2 = i1 + 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_i - i1 > 0 ? max_i - i1 : 1));
      return Interval::between(i1, i2);
    }
    }
  };
  switch (rng() % 4) {
  case 0: return Formula::always(itv(), p);
  case 1: return Formula::eventually(itv(), p);
  case 2:
    return Formula::always(Interval::unbounded(),
                           Formula::eventually(Interval::at_most(1 + static_cast<int>(rng() % static_cast<uint64_t>(max_i))), p));
  default:
    return Formula::eventually(Interval::unbounded(),
                               Formula::always(Interval::at_most(1 + static_cast<int>(rng() % static_cast<uint64_t>(max_i))), p));
  }
}

} // namespace pltl::test
