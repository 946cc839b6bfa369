#include "pltl/infer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pltl/rng.hpp"
#include "pltl/semantics.hpp"

namespace pltl {

void InferConfig::validate() const {
  if (p_th <= 0.0 || p_th > 1.0) throw config_error("p_th must lie in (0, 1]");
  if (p_hat_th <= 0.0 || p_hat_th > p_th)
    throw config_error("p_hat_th must lie in (0, p_th]");
  if (ell_th < 1) throw config_error("ell_th must be >= 1");
  if (alpha <= 1.0) throw config_error("alpha must be > 1");
  if (epsilon < 0.0) throw config_error("epsilon must be >= 0");
  if (mc_samples < 1) throw config_error("mc_samples must be >= 1");
  pso.validate();
  penalty().validate();
}

namespace {

double coverage_iterations(double p_th, double p_hat_th) {
  // log_{1 - p_hat_th}(1 - p_th) + 1
  if (p_th >= 1.0 || p_hat_th >= 1.0) return 1.0;
  return std::log(1.0 - p_th) / std::log(1.0 - p_hat_th) + 1.0;
}

} // namespace

int InferConfig::iteration_bound() const {
  return static_cast<int>(std::floor(coverage_iterations(p_th, p_hat_th) + 1e-9));
}

bool InferConfig::size_guarantee_holds(size_t num_templates) const {
  if (num_templates == 0) return true;
  double lhs =
      (static_cast<double>(num_templates) - 1.0) * (coverage_iterations(p_th, p_hat_th) - 1.0);
  return lhs <= static_cast<double>(ell_th) + 1e-9;
}

Formula InferredFormula::formula() const {
  Formula out;
  bool first = true;
  for (const auto &p : patterns) {
    out = first ? p.formula : Formula::disjunction(out, p.formula);
    first = false;
  }
  return out;
}

namespace {

size_t count_true(const std::vector<uint8_t> &v) {
  size_t n = 0;
  for (uint8_t b : v) n += b;
  return n;
}

InfoGainResult estimate_gain(const Dataset &d, const Formula &f, const Dataset &sample) {
  InfoGainResult r;
  r.length = d.length();
  r.estimated = true;
  r.beta = static_cast<double>(count_true(fast_verdicts(d, f))) / static_cast<double>(d.size());
  double lo = 1.0 / (2.0 * static_cast<double>(sample.size()));
  double hat =
      static_cast<double>(count_true(fast_verdicts(sample, f))) / static_cast<double>(sample.size());
  r.gamma = std::min(1.0 - lo, std::max(lo, hat));
  r.gain = gain_closed_form(r.beta, r.gamma, r.length);
  return r;
}

// Connectives of the final formula if `pattern_size`-sized pattern joins
// `committed` patterns carrying `committed_size` connectives.
int projected_size(int committed_size, size_t committed, int pattern_size) {
  return committed_size + pattern_size + static_cast<int>(committed);
}

struct InferState {
  const Prior &prior;
  const std::vector<TemplateSpec> &templates;
  const InferConfig &cfg;
  GainCache cache;
  std::optional<Dataset> sample; // simulated lazily, shared across iterations
  InferredFormula out;
  int committed_size = 0;

  InferState(const Prior &p, const std::vector<TemplateSpec> &ts, const InferConfig &c)
      : prior(p), templates(ts), cfg(c), cache(p) {}

  const Dataset &mc_sample(int L) {
    if (!sample)
      sample = prior.simulate(L, cfg.mc_samples, mix_seed(cfg.seed, 0x6d63u));
    return *sample;
  }

  void run(const Dataset &residual) {
    ++out.iterations;
    const PenaltyConfig pen = cfg.penalty();

    // per-template optimization, then rank by penalized score
    std::vector<RankedCandidate> ranked;
    for (size_t k = 0; k < templates.size(); ++k) {
      PsoConfig pso_cfg = cfg.pso;
      pso_cfg.seed = mix_seed(cfg.seed, (static_cast<uint64_t>(out.iterations) << 16) + k);
      PsoResult r = pso_optimize(templates[k], residual, prior, pso_cfg, pen, &cache);
      RankedCandidate c{r.formula, r.gain, r.coverage,
                        std::isfinite(r.objective) ? -r.objective
                                                   : -std::numeric_limits<double>::infinity()};
      ranked.push_back(std::move(c));
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
      if (a.score != b.score) return a.score > b.score;
      return a.formula.horizon() < b.formula.horizon();
    });
    out.reports.push_back({ranked});

    PatternRecord pat;
    pat.parts = {ranked.front().formula};
    pat.formula = ranked.front().formula;
    pat.seed_gain = ranked.front().gain;
    pat.residual_count = residual.size();

    // conjunction growth over the remaining candidates, in rank order
    const Dataset &sample = mc_sample(residual.length());
    InfoGainResult cur = estimate_gain(residual, pat.formula, sample);
    for (size_t j = 1; j < ranked.size(); ++j) {
      const Formula &cand = ranked[j].formula;
      if (std::find(pat.parts.begin(), pat.parts.end(), cand) != pat.parts.end()) continue;
      Formula grown = Formula::conjunction(pat.formula, cand);
      if (projected_size(committed_size, out.patterns.size(), grown.size()) > cfg.ell_th) {
        out.size_budget_hit = true;
        continue;
      }
      InfoGainResult next = estimate_gain(residual, grown, sample);
      if (next.gain < cfg.alpha * cur.gain) continue;
      bool coverage_ok =
          cfg.conjunction_rule == InferConfig::ConjunctionRule::Coverage
              ? next.beta >= cfg.p_hat_th
              : std::abs(next.beta - cur.beta) <= cfg.epsilon;
      if (!coverage_ok) continue;
      pat.conjunction_checks.emplace_back(next.gain, cfg.alpha * cur.gain);
      pat.parts.push_back(cand);
      pat.formula = grown;
      cur = next;
    }
    pat.pattern_gain = cur;

    // adopt the pattern and accumulate coverage
    if (projected_size(committed_size, out.patterns.size(), pat.formula.size()) >
        cfg.ell_th) {
      out.size_budget_hit = true;
      return; // size budget exhausted; return what is committed
    }
    auto verdicts = fast_verdicts(residual, pat.formula);
    pat.covered_count = count_true(verdicts);
    pat.coverage_residual =
        static_cast<double>(pat.covered_count) / static_cast<double>(residual.size());
    pat.met_threshold = pat.coverage_residual >= cfg.p_hat_th;
    if (pat.covered_count == 0)
      throw infeasible_error(
          "inference stalled: pattern '" + pat.formula.to_string() +
          "' covers no residual trajectory (p_hat_th may be infeasible here)");

    committed_size =
        projected_size(committed_size, out.patterns.size(), pat.formula.size());
    out.covered_count += pat.covered_count;
    out.patterns.push_back(std::move(pat));
    out.coverage =
        static_cast<double>(out.covered_count) / static_cast<double>(out.total_count);

    if (out.coverage >= cfg.p_th) {
      out.coverage_met = true;
      return;
    }

    std::vector<size_t> keep;
    for (size_t i = 0; i < residual.size(); ++i)
      if (!verdicts[i]) keep.push_back(i);
    if (keep.empty()) return; // full residual coverage already returned above
    run(residual.subset(keep));
  }
};

} // namespace

InferredFormula infer(const Dataset &d, const Prior &p,
                      const std::vector<TemplateSpec> &templates, const InferConfig &cfg) {
  cfg.validate();
  if (templates.empty()) throw config_error("template set must be nonempty");
  for (const auto &t : templates)
    if (t.causal()) throw config_error("causal templates go through infer_causal");
  if (!(d.space() == p.space()))
    throw config_error("dataset and prior use different state spaces");
  if (!cfg.size_guarantee_holds(templates.size()))
    std::fprintf(stderr,
                 "warning: size budget ell_th=%d does not cover the worst-case "
                 "pattern growth for %zu templates\n",
                 cfg.ell_th, templates.size());

  InferState st(p, templates, cfg);
  st.out.total_count = d.size();
  st.run(d);
  st.out.total_size = st.out.formula().size();
  return st.out;
}

double truth_factor(const Dataset &d, const Formula &cause) {
  if (!cause.is_state_formula())
    throw error("truth factor requires a temporal-free cause: " + cause.to_string());
  const StateSpace &space = d.space();
  std::vector<uint8_t> mask(space.num_states());
  for (uint64_t i = 0; i < space.num_states(); ++i)
    mask[i] = eval_state(cause, space.state_at(i)) ? 1 : 0;
  size_t hits = 0;
  for (const Trajectory &t : d.trajectories())
    for (int k = 1; k <= t.length(); ++k) hits += mask[t.index_at(k)];
  return static_cast<double>(hits) /
         (static_cast<double>(d.size()) * static_cast<double>(d.length()));
}

std::vector<CausalInference> infer_causal(const Dataset &d, const Prior &p,
                                          const std::vector<Formula> &causes,
                                          const std::vector<TemplateSpec> &effect_templates,
                                          const InferConfig &cfg) {
  cfg.validate();
  if (causes.empty()) throw config_error("cause list must be nonempty");
  if (effect_templates.empty()) throw config_error("effect template set must be nonempty");

  std::vector<CausalInference> results;
  const PenaltyConfig pen = cfg.penalty();

  for (size_t ci = 0; ci < causes.size(); ++ci) {
    CausalInference ri;
    ri.cause = causes[ci];
    ri.eta = truth_factor(d, causes[ci]);
    if (ri.eta == 0.0) {
      ri.excluded = true;
      std::fprintf(stderr, "note: cause '%s' never fires in the dataset; excluded\n",
                   causes[ci].to_string().c_str());
      results.push_back(std::move(ri));
      continue;
    }

    std::vector<TemplateSpec> templates = effect_templates;
    for (auto &t : templates) t.cause = causes[ci];

    Dataset sample =
        p.simulate(d.length(), cfg.mc_samples, mix_seed(cfg.seed, 0xca750000u + ci));

    InferredFormula &out = ri.result;
    out.total_count = d.size();
    GainCache cache(p);

    std::vector<Formula> effects;
    std::vector<size_t> residual_index(d.size());
    for (size_t i = 0; i < d.size(); ++i) residual_index[i] = i;
    Dataset residual = d;
    PatternRecord pat;
    pat.eta = ri.eta;
    pat.residual_count = d.size();

    while (true) {
      ++out.iterations;

      std::vector<RankedCandidate> ranked;
      std::vector<Formula> candidate_effects;
      for (size_t k = 0; k < templates.size(); ++k) {
        PsoConfig pso_cfg = cfg.pso;
        pso_cfg.seed =
            mix_seed(cfg.seed, (ci << 24) + (static_cast<uint64_t>(out.iterations) << 16) + k);
        PsoResult r =
            pso_optimize(templates[k], residual, p, pso_cfg, pen, &cache, &sample);
        // ranking key: estimated gain + truth factor, penalty carried over
        double score = (std::isfinite(r.objective) ? -r.objective
                                                   : -std::numeric_limits<double>::infinity()) +
                       ri.eta;
        ranked.push_back({r.formula, r.gain, r.coverage, score});
        candidate_effects.push_back(templates[k].instantiate_effect(r.theta, d.space()));
      }
      std::vector<size_t> order(ranked.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (ranked[a].score != ranked[b].score) return ranked[a].score > ranked[b].score;
        return ranked[a].formula.horizon() < ranked[b].formula.horizon();
      });
      IterationReport report;
      for (size_t i : order) report.ranked.push_back(ranked[i]);
      out.reports.push_back(std::move(report));

      effects.push_back(candidate_effects[order.front()]);
      pat.parts.push_back(candidate_effects[order.front()]);

      // rebuild G(cause -> e1 | e2 | ...) and re-evaluate on the full dataset
      Formula eff = effects.front();
      for (size_t i = 1; i < effects.size(); ++i) eff = Formula::disjunction(eff, effects[i]);
      pat.formula =
          Formula::always(Interval::unbounded(), Formula::implication(causes[ci], eff));

      auto verdicts = fast_verdicts(d, pat.formula);
      size_t covered = count_true(verdicts);
      if (covered <= out.covered_count && out.iterations > 1)
        throw infeasible_error("causal inference stalled: effect disjunct for cause '" +
                               causes[ci].to_string() + "' adds no coverage");
      out.covered_count = covered;
      out.coverage = static_cast<double>(covered) / static_cast<double>(d.size());

      if (out.coverage >= cfg.p_th) {
        out.coverage_met = true;
        break;
      }
      std::vector<size_t> keep;
      for (size_t i = 0; i < d.size(); ++i)
        if (!verdicts[i]) keep.push_back(i);
      residual = d.subset(keep);
    }

    pat.covered_count = out.covered_count;
    pat.coverage_residual = out.coverage;
    pat.met_threshold = out.coverage >= cfg.p_hat_th;
    pat.pattern_gain = estimate_gain(d, pat.formula, sample);
    pat.seed_gain = pat.pattern_gain;
    out.patterns.push_back(std::move(pat));
    out.total_size = out.formula().size();
    results.push_back(std::move(ri));
  }
  return results;
}

} // namespace pltl
