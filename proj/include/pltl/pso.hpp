#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "pltl/infogain.hpp"

namespace pltl {

enum class TemplateKind {
  Always,           // G_I(p)
  Eventually,       // F_I(p)
  AlwaysEventually, // G(F[<=i] p)
  EventuallyAlways, // F(G[<=i] p)
};

/* Predicate searched by a template: a single numeric variable with threshold
 * and polarity dimensions, a rectangle over numeric variables, or a fixed
 * formula with no free parameters. */
struct VarThresholdPred {
  size_t var = 0;
};
struct RectPred {
  std::vector<size_t> vars;
  std::vector<std::pair<int, int>> ranges; // search box per variable
};
struct FixedPred {
  Formula formula;
};
using PredSpec = std::variant<VarThresholdPred, RectPred, FixedPred>;

struct ParamDim {
  std::string name;
  int lo = 0;
  int hi = 0;
};

/* Template with free integer parameters: temporal window dimensions followed
 * by predicate dimensions. When `cause` is set the instantiated formula is
 * the causal form G(cause -> effect) with the template describing the
 * effect. Between windows are parameterized as (i1, width) so i1 < i2 holds
 * by construction; windows are capped at horizon_cap so every instance is
 * decidable on length horizon_cap + 1. */
struct TemplateSpec {
  std::string name;
  TemplateKind kind = TemplateKind::Always;
  IntervalKind shape = IntervalKind::AtMost; // Unbounded not searchable
  int horizon_cap = 1;
  PredSpec pred;
  std::optional<Formula> cause;

  bool causal() const { return cause.has_value(); }
  std::vector<ParamDim> layout(const StateSpace &space) const;
  Formula instantiate(const std::vector<int> &theta, const StateSpace &space) const;
  // The effect part alone (the full formula minus the causal wrapper).
  Formula instantiate_effect(const std::vector<int> &theta, const StateSpace &space) const;

  /* The eight standard template specs over one numeric variable:
   * G/F with each window shape plus G(F[<=i]) and F(G[<=i]). */
  static std::vector<TemplateSpec> standard_scalar(const StateSpace &space, size_t var,
                                                   int horizon_cap);
  // Same template kinds with a rectangle predicate over two numeric variables.
  static std::vector<TemplateSpec> standard_rect(const StateSpace &space, size_t var_x,
                                                 size_t var_y, int horizon_cap);
};

struct PsoConfig {
  int swarm = 30;
  int iterations = 50;
  double inertia = 0.729;
  double cognitive = 1.494;
  double social = 1.494;
  double velocity_clamp = 0.5; // fraction of each dimension's range
  uint64_t seed = 1;

  void validate() const;
};

struct PenaltyConfig {
  double p_hat_th = 0.5;
  double rho = 1000.0;

  void validate() const;
};

/* Penalized objective of the constrained gain-maximization problem:
 * -gain + G(coverage) with G(x) = rho * (p_hat_th - x) below the threshold
 * and 0 above it. Primitive templates use the exact gain; causal templates
 * estimate it against `mc_sample`. Support violations map to +infinity. */
double objective(const std::vector<int> &theta, const TemplateSpec &t, const Dataset &d,
                 const Prior &p, const PenaltyConfig &pen, GainCache *cache = nullptr,
                 const Dataset *mc_sample = nullptr);

struct PsoResult {
  std::vector<int> theta;
  Formula formula;
  InfoGainResult gain;          // exact for primitives, estimated for causal
  double objective = 0.0;       // penalized objective of the incumbent
  double coverage = 0.0;        // empirical coverage of the returned formula
  std::vector<double> incumbent_trace; // best objective after each iteration
};

/* Global-best particle swarm over the template's integer box. Particles move
 * in the continuous relaxation; positions are rounded (halves toward the
 * lower integer) and clamped before evaluation. Deterministic for a fixed
 * seed: every random draw comes from a per-particle substream. */
PsoResult pso_optimize(const TemplateSpec &t, const Dataset &d, const Prior &p,
                       const PsoConfig &cfg, const PenaltyConfig &pen,
                       GainCache *cache = nullptr, const Dataset *mc_sample = nullptr);

/* Per-trajectory satisfaction verdicts, routed through the template DFA or
 * the sliding-window causal evaluator when the shape allows, with the
 * generic semantics as fallback. Agrees with holds() everywhere. */
std::vector<uint8_t> fast_verdicts(const Dataset &d, const Formula &f);

} // namespace pltl
