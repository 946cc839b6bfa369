#pragma once

#include "pltl/prior.hpp"

namespace pltl {

/* Synthetic data generators for the shipped case studies.
 *
 * Cases I and II run on a 10-state birth-death chain over x in [1,10]:
 * interior states move down/stay/up with (p_m1, p_0, p_p1); the boundary
 * states split their mass between staying and stepping inward. The initial
 * distribution is uniform.
 *
 * Case I simulates from the chain and injects two anomalous patterns by
 * whole-trajectory rejection: the first 60 of 100 trajectories must dip to
 * x <= 2 within time 1..5 and sit at x >= 9 on times 51..52, the last 60
 * must dip to x <= 2 within times 71..80 (the middle 20 carry all three
 * constraints).
 *
 * Case II simulates plainly from a "present" chain with a downward drift
 * while the prior chain differs: scenario (a) drift-free, scenario (b)
 * strongly downward. */
struct ChainParams {
  double p0 = 1.0 / 3.0, pm1 = 1.0 / 3.0, pp1 = 1.0 / 3.0;
  double phat0 = 0.5, phat1 = 0.5, phatm1 = 0.5;
};

Dtmc birth_death_chain(std::shared_ptr<const StateSpace> space, const ChainParams &params);

std::shared_ptr<const StateSpace> chain_space(); // x in [1,10]

struct WindowConstraint {
  int from = 1, to = 1;    // 1-based time window
  int value = 1;           // threshold
  bool min_at_most = true; // true: min over window <= value; false: all >= value
};

struct CaseStudySpec {
  enum class Which { I, IIa, IIb, III };
  Which which = Which::I;
  int n = 100;
  int length = 100;
};

struct CaseStudyData {
  Dataset dataset;
  Prior prior;
};

CaseStudyData generate_case_study(const CaseStudySpec &spec, uint64_t seed);

/* Constrained simulation from a chain prior: each trajectory i with a
 * nonempty constraint set is resampled wholesale until every window
 * constraint holds. Throws infeasible_error when a constraint set never
 * succeeds within the attempt budget. */
Dataset simulate_with_constraints(const Prior &prior, int L, int n, uint64_t seed,
                                  const std::vector<std::vector<WindowConstraint>> &per_traj);

/* Case III synthetic ground truth: an 8x8 grid with a per-trajectory cop
 * belief label. Trajectories whose belief matches `belief` steer one king
 * move toward the target rectangle whenever they are inside the cause
 * rectangle, so the target is reached within two steps of any cause state;
 * everything else is a clipped king-move random walk. The prior is uniform
 * over the grid-belief space. */
struct GridCaseSpec {
  int grid = 8;
  int n = 90;
  int length = 40;
  int cause_lo = 2, cause_hi = 7;
  int target_lo = 4, target_hi = 5;
  int belief = 0;              // index into {bank_1, bank_2, bank_3}
  int match_percent = 80;      // share of trajectories carrying the matching belief
};

CaseStudyData generate_grid_case(const GridCaseSpec &spec, uint64_t seed);

std::shared_ptr<const StateSpace> grid_space(int grid = 8);

} // namespace pltl
