#pragma once

#include <mutex>
#include <string>
#include <unordered_map>

#include "pltl/prior.hpp"
#include "pltl/product.hpp"

namespace pltl {

/* Information gain of a formula over a prior, in nats per time step:
 * beta is the empirical satisfaction probability on the dataset, gamma the
 * satisfaction probability under the prior. */
struct InfoGainResult {
  double beta = 0.0;
  double gamma = 0.0;
  double gain = 0.0;
  int length = 0;
  bool estimated = false; // gamma from a simulated sample rather than exact
};

/* (1/L) * (beta*ln(beta/gamma) + (1-beta)*ln((1-beta)/(1-gamma))) with the
 * convention 0*ln(0/x) = 0. Throws support_error when a satisfied (violated)
 * formula has zero prior mass on the satisfying (violating) side. */
double gain_closed_form(double beta, double gamma, int L);

/* Backward dynamic-programming table: steps[ell] holds p(ell, .) for
 * ell = 0..L, steps[L] being the accepting-state indicator. Stationary
 * tables have one entry per DFA state, product tables one per
 * (DFA state, chain state) pair in DFA-major order. */
struct DpTable {
  std::vector<std::vector<double>> steps;
};

/* Exact prior satisfaction probability via backward DP over the template
 * DFA (stationary prior) or over the product automaton (DTMC prior).
 * Requires a build_dfa-supported formula and L >= horizon(f). */
double gamma_stationary(const Formula &f, const std::vector<double> &dist,
                        const StateSpace &space, int L, DpTable *table = nullptr);
double gamma_dtmc(const Formula &f, const Dtmc &m, int L, DpTable *table = nullptr);

class GainCache;

// Dispatch on the prior kind, consulting the cache when given.
double gamma_exact(const Formula &f, const Prior &p, int L, GainCache *cache = nullptr);

/* Memo for exact gamma values, bound to one prior. Safe for concurrent
 * lookup/insert; cached results are the stored doubles, so enabling the
 * cache cannot change any computed value. */
class GainCache {
public:
  explicit GainCache(const Prior &prior) : prior_(&prior) {}

  const Prior &prior() const { return *prior_; }
  void set_enabled(bool enabled) { enabled_ = enabled; }

  double gamma(const Formula &f, int L);
  size_t entries() const { return map_.size(); }

private:
  const Prior *prior_;
  bool enabled_ = true;
  std::mutex mu_;
  std::unordered_map<std::string, double> map_;
};

// beta from the dataset, exact gamma from the prior, closed-form gain.
InfoGainResult info_gain(const Dataset &d, const Formula &f, const Prior &p,
                         GainCache *cache = nullptr);

/* Posterior probability mass of one trajectory given the formula and the
 * dataset: prior mass rescaled by beta/gamma on the satisfying side and by
 * (1-beta)/(1-gamma) on the violating side. */
double posterior_mass(const Prior &p, const Dataset &d, const Formula &f, const Trajectory &s,
                      GainCache *cache = nullptr);

/* Monte Carlo gain estimate: gamma is the satisfaction frequency in the
 * simulated sample, clamped away from 0 and 1 by 1/(2n). Decides by parts,
 * so Boolean combinations are allowed. */
InfoGainResult estimated_info_gain(const Dataset &d, const Formula &f, const Dataset &sampled,
                                   int L);

/* Test oracle: the per-step KL divergence computed by full enumeration of
 * the prior support, using the posterior masses directly. Guard |S|^L <= 1e6. */
double kl_direct(const Prior &p, const Dataset &d, const Formula &f, int L);

} // namespace pltl
