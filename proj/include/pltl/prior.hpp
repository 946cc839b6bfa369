#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "pltl/formula.hpp"
#include "pltl/trajectory.hpp"

namespace pltl {

/* Labeled discrete-time Markov chain over the full state space: row-stochastic
 * transition matrix indexed by flat state index, plus an initial distribution
 * whose support is the initial state set. */
class Dtmc {
public:
  Dtmc(std::shared_ptr<const StateSpace> space, std::vector<std::vector<double>> transition,
       std::vector<double> p_init);

  const StateSpace &space() const { return *space_; }
  const std::shared_ptr<const StateSpace> &space_ptr() const { return space_; }
  size_t num_states() const { return p_init_.size(); }
  double transition(size_t from, size_t to) const { return rows_[from][to]; }
  const std::vector<std::vector<double>> &matrix() const { return rows_; }
  const std::vector<double> &p_init() const { return p_init_; }
  // Nonzero transitions of one row as (target, probability) pairs.
  const std::vector<std::pair<uint32_t, double>> &row_support(size_t from) const {
    return row_support_[from];
  }
  const std::vector<uint32_t> &initial_states() const { return initial_states_; }

private:
  std::shared_ptr<const StateSpace> space_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> p_init_;
  std::vector<std::vector<std::pair<uint32_t, double>>> row_support_;
  std::vector<uint32_t> initial_states_;
};

/* Prior over length-L trajectories: either i.i.d. per step from a stationary
 * distribution, or a path measure of a DTMC. */
class Prior {
public:
  static Prior stationary(std::shared_ptr<const StateSpace> space, std::vector<double> dist);
  static Prior markov(Dtmc dtmc);

  bool is_stationary() const { return std::holds_alternative<StationaryData>(data_); }
  const std::vector<double> &stationary_dist() const {
    return std::get<StationaryData>(data_).dist;
  }
  const Dtmc &dtmc() const { return std::get<Dtmc>(data_); }
  const StateSpace &space() const;
  const std::shared_ptr<const StateSpace> &space_ptr() const;

  /* True when some state (stationary) or reachable trajectory carries zero
   * mass; information-gain support errors may then occur. */
  bool has_zero_mass_states() const;

  double trajectory_prob(const Trajectory &s) const;

  /* n independent length-L samples. Trajectory i is drawn from substream
   * mix_seed(seed, i), so the result is independent of generation order. */
  Dataset simulate(int L, int n, uint64_t seed) const;

  // All support trajectories with exact probabilities; guard |S|^L <= 10^6.
  std::vector<std::pair<Trajectory, double>> enumerate(int L) const;

private:
  struct StationaryData {
    std::vector<double> dist;
    std::shared_ptr<const StateSpace> space;
  };
  std::variant<StationaryData, Dtmc> data_;

  explicit Prior(StationaryData d) : data_(std::move(d)) {}
  explicit Prior(Dtmc d) : data_(std::move(d)) {}
};

// Free-function aliases matching the operation names used in the CLI.
inline double prior_prob(const Prior &p, const Trajectory &s) { return p.trajectory_prob(s); }
inline Dataset simulate(const Prior &p, int L, int n, uint64_t seed) {
  return p.simulate(L, n, seed);
}
inline std::vector<std::pair<Trajectory, double>> brute_force_enumerate(const Prior &p, int L) {
  return p.enumerate(L);
}

/* Fraction of dataset trajectories satisfying f (satisfaction decided by
 * parts for mixed-fragment Boolean combinations). */
double empirical_prob(const Dataset &d, const Formula &f);

// Number of dataset trajectories satisfying f.
size_t satisfied_count(const Dataset &d, const Formula &f);

} // namespace pltl
