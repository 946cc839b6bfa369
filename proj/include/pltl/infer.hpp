#pragma once

#include "pltl/pso.hpp"

namespace pltl {

struct InferConfig {
  double p_th = 0.9;      // overall coverage threshold
  double p_hat_th = 0.5;  // per-pattern coverage threshold
  int ell_th = 10;        // size budget (Boolean connectives)
  double alpha = 1.5;     // gain factor required to accept a conjunct
  double epsilon = 0.05;  // coverage-drop tolerance for the epsilon rule
  enum class ConjunctionRule { Coverage, Epsilon };
  ConjunctionRule conjunction_rule = ConjunctionRule::Coverage;
  int mc_samples = 10000; // simulated sample size for estimated gains
  uint64_t seed = 1;
  PsoConfig pso;
  double rho = 1000.0;

  void validate() const;
  PenaltyConfig penalty() const { return {p_hat_th, rho}; }

  // Largest admissible number of iterations when every pattern meets p_hat_th.
  int iteration_bound() const;
  /* (|templates|-1) * log_{1-p_hat_th}(1-p_th) <= ell_th; when this holds the
   * returned formula fits the size budget. */
  bool size_guarantee_holds(size_t num_templates) const;
};

struct PatternRecord {
  std::vector<Formula> parts; // conjoined primitives, rank order
  Formula formula;            // the whole pattern
  double coverage_residual = 0.0; // coverage on the residual set when adopted
  size_t covered_count = 0;       // satisfied trajectories in the residual set
  size_t residual_count = 0;
  InfoGainResult seed_gain;    // exact gain of the top-ranked primitive
  InfoGainResult pattern_gain; // estimated gain of the full pattern
  bool met_threshold = false;  // coverage_residual >= p_hat_th
  double eta = -1.0;           // truth factor, causal runs only
  // (estimated new gain, alpha * estimated old gain) at each acceptance
  std::vector<std::pair<double, double>> conjunction_checks;
};

struct RankedCandidate {
  Formula formula;
  InfoGainResult gain;
  double coverage = 0.0;
  double score = 0.0; // gain minus penalty, the ranking key
};

struct IterationReport {
  std::vector<RankedCandidate> ranked;
};

struct InferredFormula {
  std::vector<PatternRecord> patterns;
  size_t covered_count = 0; // over the original dataset
  size_t total_count = 0;
  double coverage = 0.0; // covered_count / total_count
  int total_size = 0;
  int iterations = 0;
  bool coverage_met = false;
  bool size_budget_hit = false; // growth stopped by the size budget
  std::vector<IterationReport> reports;

  // Disjunction of the patterns.
  Formula formula() const;
};

/* Greedy information-guided inference: per-template swarm optimization,
 * gain ranking, conjunction growth gated by the gain factor and the
 * coverage rule, then recursion on the uncovered remainder with the
 * patterns joined in disjunction. */
InferredFormula infer(const Dataset &d, const Prior &p,
                      const std::vector<TemplateSpec> &templates, const InferConfig &cfg);

/* Fraction of all state-time positions at which the (temporal-free) cause
 * formula holds. */
double truth_factor(const Dataset &d, const Formula &cause);

struct CausalInference {
  Formula cause;
  double eta = 0.0;
  bool excluded = false; // cause never fires in the dataset
  InferredFormula result;
};

/* Causal-form inference G(cause -> effect): per cause, optimizes the effect
 * templates with estimated gains, ranks by gain + truth factor, and grows a
 * disjunction inside the effect until the coverage threshold is met. Causes
 * that never fire are excluded with a diagnostic. */
std::vector<CausalInference> infer_causal(const Dataset &d, const Prior &p,
                                          const std::vector<Formula> &causes,
                                          const std::vector<TemplateSpec> &effect_templates,
                                          const InferConfig &cfg);

} // namespace pltl
