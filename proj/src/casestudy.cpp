#include "pltl/casestudy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pltl/rng.hpp"

namespace pltl {

std::shared_ptr<const StateSpace> chain_space() {
  return std::make_shared<StateSpace>(std::vector<NumericVar>{{"x", 1, 10}});
}

Dtmc birth_death_chain(std::shared_ptr<const StateSpace> space, const ChainParams &c) {
  size_t H = space->num_states();
  if (std::abs(c.p0 + c.pm1 + c.pp1 - 1.0) > 1e-9)
    throw config_error("interior move probabilities must sum to 1");
  std::vector<std::vector<double>> P(H, std::vector<double>(H, 0.0));
  for (size_t i = 0; i < H; ++i) {
    if (i == 0) {
      P[i][i] = c.phat0;
      P[i][i + 1] = c.phat1;
    } else if (i == H - 1) {
      P[i][i] = c.phat0;
      P[i][i - 1] = c.phatm1;
    } else {
      P[i][i - 1] = c.pm1;
      P[i][i] = c.p0;
      P[i][i + 1] = c.pp1;
    }
  }
  std::vector<double> p_init(H, 1.0 / static_cast<double>(H));
  return Dtmc(std::move(space), std::move(P), std::move(p_init));
}

namespace {

bool constraint_holds(const Trajectory &t, const WindowConstraint &w, size_t var) {
  int lowest = std::numeric_limits<int>::max();
  for (int k = w.from; k <= w.to; ++k) lowest = std::min(lowest, t.state_at(k)[var]);
  return w.min_at_most ? lowest <= w.value : lowest >= w.value;
}

} // namespace

Dataset simulate_with_constraints(const Prior &prior, int L, int n, uint64_t seed,
                                  const std::vector<std::vector<WindowConstraint>> &per_traj) {
  if (n < 1) throw config_error("sample count must be >= 1");
  if (per_traj.size() != static_cast<size_t>(n))
    throw config_error("constraint list must have one entry per trajectory");
  for (const auto &cs : per_traj)
    for (const auto &w : cs)
      if (w.from < 1 || w.to > L || w.from > w.to)
        throw config_error("constraint window outside [1, L]");

  constexpr int kMaxAttempts = 200000;
  std::vector<Trajectory> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    uint64_t sub = mix_seed(seed, static_cast<uint64_t>(i));
    bool done = false;
    for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
      Dataset one = prior.simulate(L, 1, mix_seed(sub, static_cast<uint64_t>(attempt)));
      const Trajectory &t = one[0];
      bool ok = true;
      for (const auto &w : per_traj[static_cast<size_t>(i)])
        ok = ok && constraint_holds(t, w, 0);
      if (ok) {
        out.push_back(t);
        done = true;
      }
    }
    if (!done)
      throw infeasible_error("constraint set for trajectory " + std::to_string(i) +
                             " never satisfied; the window may have zero probability");
  }
  return Dataset(std::move(out));
}

namespace {

CaseStudyData generate_case_one(const CaseStudySpec &spec, uint64_t seed) {
  if (spec.length < 80)
    throw config_error("anomaly windows need length >= 80");
  auto space = chain_space();
  Prior prior = Prior::markov(birth_death_chain(space, ChainParams{}));

  int n = spec.n;
  int first = std::min(n, (n * 60) / 100);
  int last_start = std::max(0, n - first); // overlap in the middle
  std::vector<std::vector<WindowConstraint>> constraints(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto &cs = constraints[static_cast<size_t>(i)];
    if (i < first) {
      cs.push_back({1, 5, 2, true});    // dip to x <= 2 early
      cs.push_back({51, 52, 9, false}); // sit at x >= 9 on 51..52
    }
    if (i >= last_start) cs.push_back({71, 80, 2, true});
  }
  Dataset d = simulate_with_constraints(prior, spec.length, n, seed, constraints);
  return {std::move(d), std::move(prior)};
}

CaseStudyData generate_case_two(const CaseStudySpec &spec, uint64_t seed, bool scenario_a) {
  auto space = chain_space();
  ChainParams present;
  present.p0 = 0.2;
  present.pm1 = 0.6;
  present.pp1 = 0.2;
  Prior present_prior = Prior::markov(birth_death_chain(space, present));
  Dataset d = present_prior.simulate(spec.length, spec.n, seed);

  ChainParams prior_params;
  if (!scenario_a) {
    prior_params.p0 = 0.05;
    prior_params.pm1 = 0.9;
    prior_params.pp1 = 0.05;
  }
  Prior prior = Prior::markov(birth_death_chain(space, prior_params));
  return {std::move(d), std::move(prior)};
}

} // namespace

std::shared_ptr<const StateSpace> grid_space(int grid) {
  return std::make_shared<StateSpace>(
      std::vector<NumericVar>{{"x", 1, grid}, {"y", 1, grid}},
      std::vector<CategoricalVar>{{"b_cop", {"bank_1", "bank_2", "bank_3"}}});
}

CaseStudyData generate_grid_case(const GridCaseSpec &spec, uint64_t seed) {
  auto space = grid_space(spec.grid);
  std::vector<double> uniform(space->num_states(),
                              1.0 / static_cast<double>(space->num_states()));
  Prior prior = Prior::stationary(space, std::move(uniform));

  auto in_rect = [](int x, int y, int lo, int hi) {
    return x >= lo && x <= hi && y >= lo && y <= hi;
  };
  auto toward = [](int v, int lo, int hi) { return v < lo ? 1 : v > hi ? -1 : 0; };

  /* Matching-belief walks steer one king move toward the target whenever they
   * are inside the cause region, so the target is reached within two steps of
   * any cause state. From the target they escape: half the time they jump to
   * a uniform cell outside the cause region and resume wandering, which keeps
   * re-entries frequent and rules out "stays in a region" explanations. */
  std::vector<Trajectory> trajectories;
  for (int i = 0; i < spec.n; ++i) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<uint64_t>(i)));
    int b = static_cast<int>(rng() % 100) < spec.match_percent
                ? spec.belief
                : (spec.belief + 1 + static_cast<int>(rng() % 2)) % 3;
    int x = 1 + static_cast<int>(rng() % static_cast<uint64_t>(spec.grid));
    int y = 1 + static_cast<int>(rng() % static_cast<uint64_t>(spec.grid));
    std::vector<State> states;
    for (int k = 0; k < spec.length; ++k) {
      states.push_back({x, y, b});
      bool scripted = b == spec.belief && in_rect(x, y, spec.cause_lo, spec.cause_hi);
      if (scripted && in_rect(x, y, spec.target_lo, spec.target_hi) && rng() % 2 == 0) {
        do {
          x = 1 + static_cast<int>(rng() % static_cast<uint64_t>(spec.grid));
          y = 1 + static_cast<int>(rng() % static_cast<uint64_t>(spec.grid));
        } while (in_rect(x, y, spec.cause_lo, spec.cause_hi));
        continue;
      }
      int dx, dy;
      if (scripted && !in_rect(x, y, spec.target_lo, spec.target_hi)) {
        dx = toward(x, spec.target_lo, spec.target_hi);
        dy = toward(y, spec.target_lo, spec.target_hi);
      } else {
        dx = static_cast<int>(rng() % 3) - 1;
        dy = static_cast<int>(rng() % 3) - 1;
      }
      x = std::clamp(x + dx, 1, spec.grid);
      y = std::clamp(y + dy, 1, spec.grid);
    }
    trajectories.push_back(Trajectory::from_states(space, states));
  }
  return {Dataset(std::move(trajectories)), std::move(prior)};
}

CaseStudyData generate_case_study(const CaseStudySpec &spec, uint64_t seed) {
  switch (spec.which) {
  case CaseStudySpec::Which::I: return generate_case_one(spec, seed);
  case CaseStudySpec::Which::IIa: return generate_case_two(spec, seed, true);
  case CaseStudySpec::Which::IIb: return generate_case_two(spec, seed, false);
  case CaseStudySpec::Which::III: {
    GridCaseSpec g;
    g.n = spec.n;
    g.length = spec.length;
    return generate_grid_case(g, seed);
  }
  }
  throw config_error("unknown case study");
}

} // namespace pltl
