#include "pltl/prior.hpp"

#include <cmath>
#include <iostream>

#include "pltl/rng.hpp"
#include "pltl/semantics.hpp"

namespace pltl {

namespace {

constexpr double kStochasticTol = 1e-12;

void check_distribution(const std::vector<double> &dist, const char *what) {
  double sum = 0.0;
  for (double p : dist) {
    if (p < 0.0) throw config_error(std::string(what) + " has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kStochasticTol)
    throw config_error(std::string(what) + " does not sum to 1");
}

} // namespace

Dtmc::Dtmc(std::shared_ptr<const StateSpace> space,
           std::vector<std::vector<double>> transition, std::vector<double> p_init)
    : space_(std::move(space)), rows_(std::move(transition)), p_init_(std::move(p_init)) {
  size_t H = space_->num_states();
  if (rows_.size() != H || p_init_.size() != H)
    throw config_error("transition matrix and p_init must cover the full state space");
  for (size_t i = 0; i < H; ++i) {
    if (rows_[i].size() != H) throw config_error("transition matrix must be square");
    check_distribution(rows_[i], "transition row");
  }
  check_distribution(p_init_, "initial distribution");
  row_support_.resize(H);
  for (size_t i = 0; i < H; ++i)
    for (size_t j = 0; j < H; ++j)
      if (rows_[i][j] > 0.0) row_support_[i].emplace_back(static_cast<uint32_t>(j), rows_[i][j]);
  for (size_t i = 0; i < H; ++i)
    if (p_init_[i] > 0.0) initial_states_.push_back(static_cast<uint32_t>(i));
}

Prior Prior::stationary(std::shared_ptr<const StateSpace> space, std::vector<double> dist) {
  if (dist.size() != space->num_states())
    throw config_error("stationary distribution must cover the full state space");
  check_distribution(dist, "stationary distribution");
  bool zero = false;
  for (double p : dist) zero = zero || p == 0.0;
  if (zero)
    std::cerr << "warning: stationary prior has zero-mass states; "
                 "information gain may be undefined for some formulas\n";
  return Prior(StationaryData{std::move(dist), std::move(space)});
}

Prior Prior::markov(Dtmc dtmc) { return Prior(std::move(dtmc)); }

const StateSpace &Prior::space() const {
  return is_stationary() ? *std::get<StationaryData>(data_).space : dtmc().space();
}

const std::shared_ptr<const StateSpace> &Prior::space_ptr() const {
  return is_stationary() ? std::get<StationaryData>(data_).space : dtmc().space_ptr();
}

bool Prior::has_zero_mass_states() const {
  if (is_stationary()) {
    for (double p : stationary_dist())
      if (p == 0.0) return true;
    return false;
  }
  const Dtmc &m = dtmc();
  if (m.initial_states().size() < m.num_states()) return true;
  for (size_t i = 0; i < m.num_states(); ++i)
    if (m.row_support(i).size() < m.num_states()) return true;
  return false;
}

double Prior::trajectory_prob(const Trajectory &s) const {
  if (is_stationary()) {
    const auto &dist = stationary_dist();
    double p = 1.0;
    for (int k = 1; k <= s.length(); ++k) p *= dist[s.index_at(k)];
    return p;
  }
  const Dtmc &m = dtmc();
  double p = m.p_init()[s.index_at(1)];
  for (int k = 1; k < s.length() && p > 0.0; ++k)
    p *= m.transition(s.index_at(k), s.index_at(k + 1));
  return p;
}

Dataset Prior::simulate(int L, int n, uint64_t seed) const {
  if (L < 1) throw config_error("trajectory length must be >= 1");
  if (n < 1) throw config_error("sample count must be >= 1");
  std::vector<Trajectory> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<uint64_t>(i)));
    std::vector<uint32_t> idx(static_cast<size_t>(L));
    if (is_stationary()) {
      const auto &dist = stationary_dist();
      for (int k = 0; k < L; ++k)
        idx[static_cast<size_t>(k)] = static_cast<uint32_t>(sample_index(rng, dist, 1.0));
    } else {
      const Dtmc &m = dtmc();
      idx[0] = static_cast<uint32_t>(sample_index(rng, m.p_init(), 1.0));
      for (int k = 1; k < L; ++k)
        idx[static_cast<size_t>(k)] =
            static_cast<uint32_t>(sample_index(rng, m.matrix()[idx[static_cast<size_t>(k - 1)]], 1.0));
    }
    out.emplace_back(space_ptr(), std::move(idx));
  }
  return Dataset(std::move(out));
}

std::vector<std::pair<Trajectory, double>> Prior::enumerate(int L) const {
  uint64_t H = space().num_states();
  double total = std::pow(static_cast<double>(H), L);
  if (total > 1e6) throw guard_error("enumeration guard exceeded: |S|^L > 1e6");

  std::vector<std::pair<Trajectory, double>> out;
  std::vector<uint32_t> idx(static_cast<size_t>(L), 0);
  while (true) {
    Trajectory t(space_ptr(), idx);
    double p = trajectory_prob(t);
    if (p > 0.0) out.emplace_back(std::move(t), p);
    // odometer increment
    int k = L - 1;
    while (k >= 0) {
      if (++idx[static_cast<size_t>(k)] < H) break;
      idx[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

size_t satisfied_count(const Dataset &d, const Formula &f) {
  size_t count = 0;
  for (const Trajectory &t : d.trajectories())
    if (holds(t, f)) ++count;
  return count;
}

double empirical_prob(const Dataset &d, const Formula &f) {
  return static_cast<double>(satisfied_count(d, f)) / static_cast<double>(d.size());
}

} // namespace pltl
