#include "pltl/infogain.hpp"

#include <algorithm>
#include <cmath>

#include "pltl/dfa.hpp"
#include "pltl/semantics.hpp"

namespace pltl {

double gain_closed_form(double beta, double gamma, int L) {
  if (L < 1) throw error("length must be >= 1");
  if (beta < 0.0 || beta > 1.0 || gamma < 0.0 || gamma > 1.0)
    throw error("beta and gamma must be probabilities");
  if (beta > 0.0 && gamma == 0.0)
    throw support_error("Assumption 1 violated: satisfied formula has zero prior mass");
  if (beta < 1.0 && gamma == 1.0)
    throw support_error("Assumption 1 violated: violated formula has zero prior mass");
  double t1 = beta == 0.0 ? 0.0 : beta * std::log(beta / gamma);
  double t2 = beta == 1.0 ? 0.0 : (1.0 - beta) * std::log((1.0 - beta) / (1.0 - gamma));
  return std::max(0.0, (t1 + t2) / static_cast<double>(L));
}

namespace {

void check_horizon(const Formula &f, int L) {
  if (L < f.horizon())
    throw horizon_error("length " + std::to_string(L) + " shorter than formula horizon " +
                        std::to_string(f.horizon()));
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

} // namespace

double gamma_stationary(const Formula &f, const std::vector<double> &dist,
                        const StateSpace &space, int L, DpTable *table) {
  check_horizon(f, L);
  if (dist.size() != space.num_states())
    throw config_error("stationary distribution must cover the full state space");
  Dfa a = build_dfa(f, space);
  uint32_t K = a.num_states();

  // c[j] holds the (target, mass) rows of the DFA transition kernel under
  // the per-step distribution, targets ascending.
  std::vector<std::vector<std::pair<uint32_t, double>>> c(K);
  for (uint32_t j = 0; j < K; ++j) {
    std::vector<double> row(K, 0.0);
    for (uint32_t sym = 0; sym < a.num_symbols(); ++sym) row[a.next(j, sym)] += dist[sym];
    for (uint32_t k = 0; k < K; ++k)
      if (row[k] != 0.0) c[j].emplace_back(k, row[k]);
  }

  std::vector<double> cur(K), prev(K);
  for (uint32_t k = 0; k < K; ++k) cur[k] = a.accepting(k) ? 1.0 : 0.0;
  if (table) {
    table->steps.assign(static_cast<size_t>(L) + 1, {});
    table->steps[static_cast<size_t>(L)] = cur;
  }
  for (int ell = L; ell >= 1; --ell) {
    for (uint32_t j = 0; j < K; ++j) {
      double acc = 0.0;
      for (auto [k, w] : c[j]) acc += w * cur[k];
      prev[j] = clamp01(acc);
    }
    std::swap(cur, prev);
    if (table) table->steps[static_cast<size_t>(ell - 1)] = cur;
  }
  double p0 = cur[a.initial()];
  return a.accepts_negation() ? 1.0 - p0 : p0;
}

double gamma_dtmc(const Formula &f, const Dtmc &m, int L, DpTable *table) {
  check_horizon(f, L);
  Dfa a = build_dfa(f, m.space());
  ProductAutomaton prod(m, a);
  size_t H = prod.chain_states(), K = prod.dfa_states();

  // value vector indexed q*H + s
  std::vector<double> cur(H * K), prev(H * K);
  for (size_t q = 0; q < K; ++q)
    for (size_t s = 0; s < H; ++s)
      cur[q * H + s] = a.accepting(static_cast<uint32_t>(q)) ? 1.0 : 0.0;
  if (table) {
    table->steps.assign(static_cast<size_t>(L), {});
    table->steps[static_cast<size_t>(L) - 1] = cur;
  }

  // target DFA state per (q, symbol class), reused across chain states
  std::vector<uint32_t> target(K * a.num_classes());
  for (uint32_t q = 0; q < K; ++q)
    for (uint32_t cls = 0; cls < a.num_classes(); ++cls)
      target[q * a.num_classes() + cls] = a.next_class(q, static_cast<uint8_t>(cls));

  for (int ell = L; ell >= 2; --ell) {
    for (size_t q = 0; q < K; ++q) {
      for (size_t s = 0; s < H; ++s) {
        double acc = 0.0;
        for (auto [s2, p] : m.row_support(s)) {
          uint32_t q2 = target[q * a.num_classes() + a.symbol_class(s2)];
          acc += p * cur[static_cast<size_t>(q2) * H + s2];
        }
        prev[q * H + s] = clamp01(acc);
      }
    }
    std::swap(cur, prev);
    if (table) table->steps[static_cast<size_t>(ell - 2)] = cur;
  }

  double gamma = 0.0;
  for (auto [state, weight] : prod.initial()) {
    double v = cur[state];
    gamma += weight * (a.accepts_negation() ? 1.0 - v : v);
  }
  return clamp01(gamma);
}

double gamma_exact(const Formula &f, const Prior &p, int L, GainCache *cache) {
  if (cache) return cache->gamma(f, L);
  if (p.is_stationary()) return gamma_stationary(f, p.stationary_dist(), p.space(), L);
  return gamma_dtmc(f, p.dtmc(), L);
}

double GainCache::gamma(const Formula &f, int L) {
  std::string key;
  if (enabled_) {
    key = f.to_string() + "@" + std::to_string(L);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
  }
  double value = prior_->is_stationary()
                     ? gamma_stationary(f, prior_->stationary_dist(), prior_->space(), L)
                     : gamma_dtmc(f, prior_->dtmc(), L);
  if (enabled_) {
    std::lock_guard<std::mutex> lock(mu_);
    map_.emplace(std::move(key), value);
  }
  return value;
}

InfoGainResult info_gain(const Dataset &d, const Formula &f, const Prior &p,
                         GainCache *cache) {
  InfoGainResult r;
  r.length = d.length();
  r.beta = empirical_prob(d, f);
  r.gamma = gamma_exact(f, p, r.length, cache);
  r.gain = gain_closed_form(r.beta, r.gamma, r.length);
  return r;
}

double posterior_mass(const Prior &p, const Dataset &d, const Formula &f, const Trajectory &s,
                      GainCache *cache) {
  double beta = empirical_prob(d, f);
  double gamma = gamma_exact(f, p, d.length(), cache);
  double prior = p.trajectory_prob(s);
  if (holds(s, f)) {
    if (gamma == 0.0) {
      if (beta > 0.0) throw support_error("Assumption 1 violated: zero prior mass on the satisfying side");
      return 0.0;
    }
    return prior * beta / gamma;
  }
  if (gamma == 1.0) {
    if (beta < 1.0) throw support_error("Assumption 1 violated: zero prior mass on the violating side");
    return 0.0;
  }
  return prior * (1.0 - beta) / (1.0 - gamma);
}

InfoGainResult estimated_info_gain(const Dataset &d, const Formula &f, const Dataset &sampled,
                                   int L) {
  InfoGainResult r;
  r.length = L;
  r.estimated = true;
  r.beta = empirical_prob(d, f);
  double lo = 1.0 / (2.0 * static_cast<double>(sampled.size()));
  r.gamma = std::min(1.0 - lo, std::max(lo, empirical_prob(sampled, f)));
  r.gain = gain_closed_form(r.beta, r.gamma, L);
  return r;
}

double kl_direct(const Prior &p, const Dataset &d, const Formula &f, int L) {
  auto support = p.enumerate(L);
  double beta = empirical_prob(d, f);
  double gamma = 0.0;
  bool any_sat = false, any_unsat = false;
  std::vector<uint8_t> sat(support.size());
  for (size_t i = 0; i < support.size(); ++i) {
    sat[i] = holds(support[i].first, f) ? 1 : 0;
    (sat[i] ? any_sat : any_unsat) = true;
    if (sat[i]) gamma += support[i].second;
  }
  gamma = std::min(1.0, gamma);
  if (beta > 0.0 && !any_sat)
    throw support_error("Assumption 1 violated: satisfied formula has zero prior mass");
  if (beta < 1.0 && !any_unsat)
    throw support_error("Assumption 1 violated: violated formula has zero prior mass");

  double kl = 0.0;
  for (size_t i = 0; i < support.size(); ++i) {
    double prior = support[i].second;
    double post = sat[i] ? prior * beta / gamma : prior * (1.0 - beta) / (1.0 - gamma);
    if (post > 0.0) kl += post * std::log(post / prior);
  }
  return kl / static_cast<double>(L);
}

} // namespace pltl
