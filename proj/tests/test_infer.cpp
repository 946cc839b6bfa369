#include "doctest.h"

#include <cmath>

#include "pltl/casestudy.hpp"
#include "pltl/infer.hpp"
#include "pltl/parser.hpp"
#include "pltl/semantics.hpp"
#include "test_helpers.hpp"

using namespace pltl;

namespace {

// Trajectories where positions [from,to] (1-based) carry values from `band`,
// uniform elsewhere.
Dataset banded_dataset(std::shared_ptr<const StateSpace> space, int n, int L,
                       const std::vector<std::tuple<int, int, int, int>> &bands_per_group,
                       const std::vector<int> &group_of, std::mt19937_64 &rng,
                       int noise_lo = -1, int noise_hi = -1) {
  const auto &nv = space->numeric()[0];
  if (noise_lo < 0) noise_lo = nv.lo;
  if (noise_hi < 0) noise_hi = nv.hi;
  std::vector<Trajectory> ts;
  for (int i = 0; i < n; ++i) {
    std::vector<State> states;
    for (int k = 1; k <= L; ++k) {
      int v = noise_lo + static_cast<int>(rng() % static_cast<uint64_t>(noise_hi - noise_lo + 1));
      auto [from, to, lo, hi] = bands_per_group[static_cast<size_t>(group_of[static_cast<size_t>(i)])];
      if (k >= from && k <= to) v = lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
      states.push_back({v});
    }
    ts.push_back(Trajectory::from_states(space, states));
  }
  return Dataset(std::move(ts));
}

InferConfig quick_config() {
  InferConfig cfg;
  cfg.pso.swarm = 14;
  cfg.pso.iterations = 18;
  cfg.mc_samples = 800;
  cfg.seed = 3;
  return cfg;
}

} // namespace

TEST_CASE("config validation and derived bounds") {
  InferConfig cfg;
  cfg.validate();
  CHECK(cfg.iteration_bound() == 4); // floor(log_0.5(0.1) + 1)
  cfg.p_th = 0.95;
  cfg.p_hat_th = 0.5;
  CHECK(cfg.iteration_bound() == 5);
  CHECK(cfg.size_guarantee_holds(3));   // 2 * 4.32 = 8.6 <= 10
  CHECK_FALSE(cfg.size_guarantee_holds(8)); // 7 * 4.32 = 30.2 > 10

  InferConfig bad;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(bad.validate(), config_error);
  bad = InferConfig{};
  bad.p_hat_th = 0.95; // above p_th
  CHECK_THROWS_AS(bad.validate(), config_error);
}

TEST_CASE("a single covering template finishes in one iteration") {
  auto space = test::small_space(1, 10);
  std::mt19937_64 rng(61);
  Prior p = Prior::stationary(space, std::vector<double>(10, 0.1));
  std::vector<int> groups(30, 0);
  Dataset d = banded_dataset(space, 30, 12, {{1, 3, 8, 10}}, groups, rng);

  InferConfig cfg = quick_config();
  auto templates = TemplateSpec::standard_scalar(*space, 0, 11);
  InferredFormula r = infer(d, p, templates, cfg);

  CHECK(r.iterations == 1);
  CHECK(r.coverage == 1.0);
  CHECK(r.coverage_met);
  CHECK(r.patterns.size() == 1);
  // coverage recomputed independently through the semantics
  size_t direct = 0;
  for (const auto &t : d.trajectories()) direct += holds(t, r.formula());
  CHECK(direct == r.covered_count);
}

TEST_CASE("two disjoint groups need two iterations and the accumulator is exact") {
  auto space = test::small_space(1, 10);
  std::mt19937_64 rng(62);
  Prior p = Prior::stationary(space, std::vector<double>(10, 0.1));
  std::vector<int> groups;
  for (int i = 0; i < 40; ++i) groups.push_back(i < 24 ? 0 : 1);
  // group 0 sits high on 2..4, group 1 sits low on 2..4
  Dataset d = banded_dataset(space, 40, 12, {{2, 4, 9, 10}, {2, 4, 1, 2}}, groups, rng);

  InferConfig cfg = quick_config();
  cfg.p_th = 0.95;
  auto templates = TemplateSpec::standard_scalar(*space, 0, 11);
  InferredFormula r = infer(d, p, templates, cfg);

  CHECK(r.iterations == 2);
  CHECK(r.coverage >= 0.95);
  CHECK(r.patterns.size() == 2);
  CHECK(r.iterations <= cfg.iteration_bound());

  // beta accumulator equals the direct count over the original dataset
  size_t direct = 0;
  for (const auto &t : d.trajectories()) direct += holds(t, r.formula());
  CHECK(direct == r.covered_count);
  CHECK(r.coverage == static_cast<double>(direct) / 40.0);

  // patterns were evaluated on disjoint residual sets
  CHECK(r.patterns[0].residual_count == 40);
  CHECK(r.patterns[1].residual_count == 40 - r.patterns[0].covered_count);

  // accepted conjuncts satisfied the gain factor at acceptance time
  for (const auto &pat : r.patterns)
    for (auto [gained, required] : pat.conjunction_checks) CHECK(gained >= required);

  // size accounting matches the assembled formula
  CHECK(r.total_size == r.formula().size());
}

TEST_CASE("the epsilon conjunction rule rejects coverage-dropping conjuncts") {
  auto space = test::small_space(1, 10);
  std::mt19937_64 rng(66);
  Prior p = Prior::stationary(space, std::vector<double>(10, 0.1));
  // two planted windows with half-overlapping carrier sets: trajectories
  // 0..69 sit at x>=7 on positions 2..4, trajectories 20..89 at x<=4 on 7..9;
  // the loose thresholds keep both windows well above the Monte Carlo clamp
  std::vector<Trajectory> ts;
  for (int i = 0; i < 90; ++i) {
    std::vector<State> states;
    for (int k = 1; k <= 12; ++k) {
      int v = 1 + static_cast<int>(rng() % 10);
      if (i < 70 && k >= 2 && k <= 4) v = 7 + static_cast<int>(rng() % 4);
      if (i >= 20 && k >= 7 && k <= 9) v = 1 + static_cast<int>(rng() % 4);
      states.push_back({v});
    }
    ts.push_back(Trajectory::from_states(space, states));
  }
  Dataset d(std::move(ts));

  InferConfig cfg = quick_config();
  cfg.p_th = 0.95;
  cfg.p_hat_th = 0.45;
  cfg.alpha = 1.2;
  cfg.mc_samples = 2000;
  cfg.pso.swarm = 30;
  cfg.pso.iterations = 50;
  // one window template per group signature, so the runner-up candidate is
  // always the other group's pattern
  TemplateSpec high, low;
  high.kind = low.kind = TemplateKind::Always;
  high.shape = low.shape = IntervalKind::Between;
  high.horizon_cap = low.horizon_cap = 11;
  high.pred = FixedPred{Formula::atom(AtomicPredicate::numeric(*space, "x", Rel::Ge, 7))};
  low.pred = FixedPred{Formula::atom(AtomicPredicate::numeric(*space, "x", Rel::Le, 4))};
  std::vector<TemplateSpec> templates = {high, low};

  // coverage rule: the cross-group conjunct is allowed while it stays feasible
  cfg.conjunction_rule = InferConfig::ConjunctionRule::Coverage;
  InferredFormula cov = infer(d, p, templates, cfg);
  // epsilon rule with a zero tolerance: any coverage drop rejects the conjunct
  cfg.conjunction_rule = InferConfig::ConjunctionRule::Epsilon;
  cfg.epsilon = 0.0;
  InferredFormula eps = infer(d, p, templates, cfg);

  REQUIRE_FALSE(cov.patterns.empty());
  REQUIRE_FALSE(eps.patterns.empty());
  CHECK(cov.patterns[0].parts.size() == 2);
  CHECK(eps.patterns[0].parts.size() == 1);
  CHECK(eps.patterns[0].coverage_residual > cov.patterns[0].coverage_residual);
}

TEST_CASE("size budget is a hard stop") {
  auto space = test::small_space(1, 10);
  std::mt19937_64 rng(63);
  Prior p = Prior::stationary(space, std::vector<double>(10, 0.1));
  std::vector<int> groups;
  for (int i = 0; i < 30; ++i) groups.push_back(i % 3);
  // three groups with disjoint signatures; background noise stays mid-range
  Dataset d = banded_dataset(space, 30, 12,
                             {{2, 4, 9, 10}, {2, 4, 1, 2}, {7, 9, 9, 10}}, groups, rng);

  InferConfig cfg = quick_config();
  cfg.p_th = 0.99;
  cfg.p_hat_th = 0.3; // each group is a third of the data
  cfg.ell_th = 1;     // at most one connective: two patterns, no conjunctions
  // window templates only; the groups then need one pattern each
  TemplateSpec win;
  win.kind = TemplateKind::Always;
  win.shape = IntervalKind::Between;
  win.horizon_cap = 11;
  win.pred = VarThresholdPred{0};
  InferredFormula r = infer(d, p, {win}, cfg);
  CHECK(r.total_size <= 1);
  CHECK(r.size_budget_hit);
  CHECK_FALSE(r.coverage_met);
  CHECK(r.patterns.size() == 2);
}

TEST_CASE("zero-coverage pattern aborts with a diagnostic") {
  auto space = test::small_space(1, 10);
  std::mt19937_64 rng(64);
  Prior p = Prior::stationary(space, std::vector<double>(10, 0.1));
  std::vector<int> groups(10, 0);
  Dataset d = banded_dataset(space, 10, 8, {{1, 8, 5, 5}}, groups, rng);
  InferConfig cfg = quick_config();
  // a template set that cannot cover anything: demand x >= 6 permanently
  TemplateSpec t;
  t.kind = TemplateKind::Always;
  t.shape = IntervalKind::AtMost;
  t.horizon_cap = 7;
  t.pred = FixedPred{Formula::atom(AtomicPredicate::numeric(*space, "x", Rel::Ge, 6))};
  CHECK_THROWS_AS(infer(d, p, {t}, cfg), infeasible_error);
}

TEST_CASE("empty template list is rejected") {
  auto space = test::small_space(1, 10);
  Prior p = Prior::stationary(space, std::vector<double>(10, 0.1));
  Dataset d = p.simulate(5, 5, 1);
  CHECK_THROWS_AS(infer(d, p, {}, quick_config()), config_error);
}

TEST_CASE("inference is deterministic under a fixed seed") {
  auto space = test::small_space(1, 10);
  std::mt19937_64 rng(65);
  Prior p = Prior::stationary(space, std::vector<double>(10, 0.1));
  std::vector<int> groups;
  for (int i = 0; i < 30; ++i) groups.push_back(i % 2);
  Dataset d = banded_dataset(space, 30, 12, {{2, 4, 9, 10}, {6, 8, 1, 2}}, groups, rng);
  InferConfig cfg = quick_config();
  cfg.p_th = 0.95;
  auto templates = TemplateSpec::standard_scalar(*space, 0, 11);
  InferredFormula a = infer(d, p, templates, cfg);
  InferredFormula b = infer(d, p, templates, cfg);
  CHECK(a.formula() == b.formula());
  CHECK(a.coverage == b.coverage);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("case two chains drift as configured") {
  CaseStudySpec spec;
  spec.which = CaseStudySpec::Which::IIb;
  spec.n = 60;
  spec.length = 60;
  CaseStudyData data = generate_case_study(spec, 9);
  // the strongly downward prior chain: interior rows put 0.9 on the step down
  const Dtmc &chain = data.prior.dtmc();
  CHECK(chain.transition(4, 3) == doctest::Approx(0.9));
  CHECK(chain.transition(4, 5) == doctest::Approx(0.05));
  // the dataset comes from the milder present chain: occupancy is not pinned
  // to the bottom state the way the scenario-b prior would force it
  size_t at_bottom = 0, total = 0;
  for (const auto &t : data.dataset.trajectories())
    for (int k = 30; k <= 60; ++k) {
      at_bottom += t.state_at(k)[0] <= 2;
      ++total;
    }
  double frac = static_cast<double>(at_bottom) / static_cast<double>(total);
  CHECK(frac > 0.15);
  CHECK(frac < 0.95);

  spec.which = CaseStudySpec::Which::IIa;
  CaseStudyData a = generate_case_study(spec, 9);
  CHECK(a.prior.dtmc().transition(4, 3) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("truth factor counts cause positions") {
  auto space = test::small_space(1, 10);
  std::vector<State> a{{5}, {1}, {5}, {2}};
  std::vector<State> b{{1}, {1}, {5}, {1}};
  Dataset d({Trajectory::from_states(space, a), Trajectory::from_states(space, b)});

  Formula never = parse("x>=9", *space);
  CHECK(truth_factor(d, never) == 0.0);
  Formula cause = parse("x>=5", *space); // true at 3 of the 8 positions
  CHECK(truth_factor(d, cause) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK_THROWS_AS(truth_factor(d, parse("F(x>=5)", *space)), error);
}

TEST_CASE("table-two rows are consistent with the closed form") {
  CHECK(gain_closed_form(0.9948, 5.58e-16, 100) == doctest::Approx(0.3491).epsilon(2e-3));
  CHECK(gain_closed_form(0.8438, 5.58e-16, 100) == doctest::Approx(0.292).epsilon(2e-3));
  CHECK(gain_closed_form(0.9323, 7.8e-16, 100) == doctest::Approx(0.3218).epsilon(2e-3));
}

TEST_CASE("causal inference recovers a planted reach pattern") {
  GridCaseSpec spec;
  spec.n = 45;
  spec.length = 30;
  CaseStudyData data = generate_grid_case(spec, 17);

  const StateSpace &space = data.dataset.space();
  Formula cause = parse("(x>=2 & x<=7 & y>=2 & y<=7) & b_cop=bank_1", space);

  RectPred rect;
  rect.vars = {0, 1};
  rect.ranges = {{2, 7}, {2, 7}};
  std::vector<TemplateSpec> effects(2);
  effects[0].kind = TemplateKind::Eventually;
  effects[0].shape = IntervalKind::AtMost;
  effects[0].horizon_cap = 8;
  effects[0].pred = rect;
  effects[1].kind = TemplateKind::Always;
  effects[1].shape = IntervalKind::AtMost;
  effects[1].horizon_cap = 8;
  effects[1].pred = rect;

  InferConfig cfg = quick_config();
  cfg.p_th = 0.9;
  cfg.ell_th = 30;
  cfg.mc_samples = 1200;
  cfg.pso.swarm = 24;
  cfg.pso.iterations = 36;
  auto results = infer_causal(data.dataset, data.prior, {cause}, effects, cfg);
  REQUIRE(results.size() == 1);
  const CausalInference &r = results[0];
  CHECK_FALSE(r.excluded);
  CHECK(r.eta > 0.0);
  CHECK(r.result.coverage >= 0.9);
  REQUIRE_FALSE(r.result.patterns.empty());
  // top effect is a bounded eventually whose window covers two steps
  const Formula &eff = r.result.patterns[0].parts.front();
  CHECK(eff.op() == Op::Eventually);
  CHECK(eff.interval().kind == IntervalKind::AtMost);
  // recomputed coverage agrees
  size_t direct = 0;
  for (const auto &t : data.dataset.trajectories()) direct += holds(t, r.result.formula());
  CHECK(direct == r.result.covered_count);
}

TEST_CASE("vacuous causes are excluded with a diagnostic") {
  GridCaseSpec spec;
  spec.n = 20;
  spec.length = 15;
  CaseStudyData data = generate_grid_case(spec, 19);
  const StateSpace &space = data.dataset.space();
  // b never takes a fourth label; use an impossible rectangle instead
  Formula cause = parse("x>=8 & x<=8 & y>=8 & y<=8 & b_cop=bank_3", space);
  double eta = truth_factor(data.dataset, cause);
  RectPred rect;
  rect.vars = {0, 1};
  rect.ranges = {{1, 8}, {1, 8}};
  TemplateSpec eff;
  eff.kind = TemplateKind::Eventually;
  eff.shape = IntervalKind::AtMost;
  eff.horizon_cap = 5;
  eff.pred = rect;
  InferConfig cfg = quick_config();
  cfg.mc_samples = 300;
  auto results = infer_causal(data.dataset, data.prior, {cause}, {eff}, cfg);
  REQUIRE(results.size() == 1);
  if (eta == 0.0)
    CHECK(results[0].excluded);
  else
    CHECK_FALSE(results[0].excluded);
}

TEST_CASE("effect disjunction grows until the coverage threshold") {
  // two behavior modes: from the cause region, half the matching trajectories
  // run to a low corner, half to a high corner
  auto space = grid_space(8);
  std::mt19937_64 rng(71);
  std::vector<Trajectory> ts;
  auto step_toward = [](int v, int lo, int hi) { return v < lo ? 1 : v > hi ? -1 : 0; };
  for (int i = 0; i < 36; ++i) {
    int b = i % 3 == 0 ? 0 : 1 + static_cast<int>(rng() % 2);
    int tlo = (i / 3) % 2 == 0 ? 2 : 6; // alternate target corner per matching trajectory
    int x = 1 + static_cast<int>(rng() % 8), y = 1 + static_cast<int>(rng() % 8);
    std::vector<State> states;
    for (int k = 0; k < 24; ++k) {
      states.push_back({x, y, b});
      bool in_cause = b == 0 && x >= 2 && x <= 7 && y >= 2 && y <= 7;
      bool at_target = x >= tlo && x <= tlo + 1 && y >= tlo && y <= tlo + 1;
      int dx, dy;
      if (in_cause && !at_target) {
        dx = step_toward(x, tlo, tlo + 1);
        dy = step_toward(y, tlo, tlo + 1);
      } else {
        dx = static_cast<int>(rng() % 3) - 1;
        dy = static_cast<int>(rng() % 3) - 1;
      }
      x = std::clamp(x + dx, 1, 8);
      y = std::clamp(y + dy, 1, 8);
    }
    ts.push_back(Trajectory::from_states(space, states));
  }
  Dataset d(std::move(ts));
  std::vector<double> uniform(space->num_states(), 1.0 / space->num_states());
  Prior prior = Prior::stationary(space, uniform);

  Formula cause = parse("(x>=2 & x<=7 & y>=2 & y<=7) & b_cop=bank_1", *space);
  RectPred rect;
  rect.vars = {0, 1};
  rect.ranges = {{1, 8}, {1, 8}};
  TemplateSpec eff;
  eff.kind = TemplateKind::Eventually;
  eff.shape = IntervalKind::AtMost;
  eff.horizon_cap = 10;
  eff.pred = rect;

  InferConfig cfg = quick_config();
  cfg.p_th = 0.97;
  cfg.ell_th = 40;
  cfg.mc_samples = 1000;
  cfg.pso.swarm = 24;
  cfg.pso.iterations = 36;
  auto results = infer_causal(d, prior, {cause}, {eff}, cfg);
  REQUIRE(results.size() == 1);
  const auto &r = results[0].result;
  CHECK(r.coverage >= 0.97);
  CHECK(r.iterations >= 2);
  CHECK(r.patterns[0].parts.size() >= 2); // the effect is a disjunction
}
