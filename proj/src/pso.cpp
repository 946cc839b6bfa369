#include "pltl/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "pltl/dfa.hpp"
#include "pltl/rng.hpp"
#include "pltl/semantics.hpp"

namespace pltl {

namespace {

Interval window_of(IntervalKind shape, int horizon_cap, const std::vector<int> &theta,
                   size_t &at) {
  switch (shape) {
  case IntervalKind::AtMost: return Interval::at_most(theta[at++]);
  case IntervalKind::AtLeast: return Interval::at_least(theta[at++]);
  case IntervalKind::Between: {
    int i1 = theta[at++];
    int w = theta[at++];
    return Interval::between(i1, std::min(i1 + w, horizon_cap));
  }
  case IntervalKind::Unbounded: return Interval::unbounded();
  }
  return Interval::unbounded();
}

} // namespace

std::vector<ParamDim> TemplateSpec::layout(const StateSpace &space) const {
  std::vector<ParamDim> dims;
  switch (shape) {
  case IntervalKind::AtMost:
  case IntervalKind::AtLeast:
    dims.push_back({"i", 1, horizon_cap});
    break;
  case IntervalKind::Between:
    dims.push_back({"i1", 0, horizon_cap - 1});
    dims.push_back({"w", 1, horizon_cap});
    break;
  case IntervalKind::Unbounded: break;
  }
  if (std::holds_alternative<VarThresholdPred>(pred)) {
    const auto &vp = std::get<VarThresholdPred>(pred);
    const auto &nv = space.numeric()[vp.var];
    dims.push_back({"a", nv.lo, nv.hi});
    dims.push_back({"pol", 0, 1});
  } else if (std::holds_alternative<RectPred>(pred)) {
    const auto &rp = std::get<RectPred>(pred);
    for (size_t i = 0; i < rp.vars.size(); ++i) {
      const auto &name = space.var_name(rp.vars[i]);
      dims.push_back({"lo_" + name, rp.ranges[i].first, rp.ranges[i].second});
      dims.push_back({"w_" + name, 0, rp.ranges[i].second - rp.ranges[i].first});
    }
  }
  return dims;
}

Formula TemplateSpec::instantiate_effect(const std::vector<int> &theta,
                                         const StateSpace &space) const {
  size_t at = 0;
  Interval itv = window_of(shape, horizon_cap, theta, at);

  Formula p = Formula::make_true();
  if (std::holds_alternative<VarThresholdPred>(pred)) {
    const auto &vp = std::get<VarThresholdPred>(pred);
    int a = theta[at++];
    int pol = theta[at++];
    p = Formula::atom(AtomicPredicate::numeric(space, space.var_name(vp.var),
                                               pol == 0 ? Rel::Ge : Rel::Le, a));
  } else if (std::holds_alternative<RectPred>(pred)) {
    const auto &rp = std::get<RectPred>(pred);
    bool first = true;
    for (size_t i = 0; i < rp.vars.size(); ++i) {
      int lo = theta[at++];
      int w = theta[at++];
      int hi = std::min(lo + w, rp.ranges[i].second);
      const auto &name = space.var_name(rp.vars[i]);
      Formula part = Formula::conjunction(
          Formula::atom(AtomicPredicate::numeric(space, name, Rel::Ge, lo)),
          Formula::atom(AtomicPredicate::numeric(space, name, Rel::Le, hi)));
      p = first ? part : Formula::conjunction(p, part);
      first = false;
    }
  } else {
    p = std::get<FixedPred>(pred).formula;
  }

  switch (kind) {
  case TemplateKind::Always: return Formula::always(itv, p);
  case TemplateKind::Eventually: return Formula::eventually(itv, p);
  case TemplateKind::AlwaysEventually:
    return Formula::always(Interval::unbounded(), Formula::eventually(itv, p));
  case TemplateKind::EventuallyAlways:
    return Formula::eventually(Interval::unbounded(), Formula::always(itv, p));
  }
  return p;
}

Formula TemplateSpec::instantiate(const std::vector<int> &theta,
                                  const StateSpace &space) const {
  Formula body = instantiate_effect(theta, space);
  if (!cause) return body;
  return Formula::always(Interval::unbounded(), Formula::implication(*cause, body));
}

std::vector<TemplateSpec> TemplateSpec::standard_scalar(const StateSpace &space, size_t var,
                                                        int horizon_cap) {
  const std::string v = space.var_name(var);
  std::vector<TemplateSpec> out;
  auto add = [&](TemplateKind kind, IntervalKind shape, const std::string &name) {
    TemplateSpec t;
    t.name = name + "(" + v + ")";
    t.kind = kind;
    t.shape = shape;
    t.horizon_cap = horizon_cap;
    t.pred = VarThresholdPred{var};
    out.push_back(std::move(t));
  };
  add(TemplateKind::Always, IntervalKind::AtMost, "G[<=i]");
  add(TemplateKind::Always, IntervalKind::AtLeast, "G[>=i]");
  add(TemplateKind::Always, IntervalKind::Between, "G[>=i1,<=i2]");
  add(TemplateKind::Eventually, IntervalKind::AtMost, "F[<=i]");
  add(TemplateKind::Eventually, IntervalKind::AtLeast, "F[>=i]");
  add(TemplateKind::Eventually, IntervalKind::Between, "F[>=i1,<=i2]");
  add(TemplateKind::AlwaysEventually, IntervalKind::AtMost, "GF[<=i]");
  add(TemplateKind::EventuallyAlways, IntervalKind::AtMost, "FG[<=i]");
  return out;
}

std::vector<TemplateSpec> TemplateSpec::standard_rect(const StateSpace &space, size_t var_x,
                                                      size_t var_y, int horizon_cap) {
  RectPred rect;
  rect.vars = {var_x, var_y};
  rect.ranges = {{space.numeric()[var_x].lo, space.numeric()[var_x].hi},
                 {space.numeric()[var_y].lo, space.numeric()[var_y].hi}};
  std::vector<TemplateSpec> out;
  auto add = [&](TemplateKind kind, IntervalKind shape, const std::string &name) {
    TemplateSpec t;
    t.name = name + "(rect)";
    t.kind = kind;
    t.shape = shape;
    t.horizon_cap = horizon_cap;
    t.pred = rect;
    out.push_back(std::move(t));
  };
  add(TemplateKind::Always, IntervalKind::AtMost, "G[<=i]");
  add(TemplateKind::Always, IntervalKind::AtLeast, "G[>=i]");
  add(TemplateKind::Always, IntervalKind::Between, "G[>=i1,<=i2]");
  add(TemplateKind::Eventually, IntervalKind::AtMost, "F[<=i]");
  add(TemplateKind::Eventually, IntervalKind::AtLeast, "F[>=i]");
  add(TemplateKind::Eventually, IntervalKind::Between, "F[>=i1,<=i2]");
  add(TemplateKind::AlwaysEventually, IntervalKind::AtMost, "GF[<=i]");
  add(TemplateKind::EventuallyAlways, IntervalKind::AtMost, "FG[<=i]");
  return out;
}

void PsoConfig::validate() const {
  if (swarm < 2) throw config_error("pso swarm size must be >= 2");
  if (iterations < 1) throw config_error("pso iterations must be >= 1");
  if (inertia <= 0.0 || cognitive <= 0.0 || social <= 0.0)
    throw config_error("pso coefficients must be positive");
  if (velocity_clamp <= 0.0) throw config_error("pso velocity clamp must be positive");
}

void PenaltyConfig::validate() const {
  if (p_hat_th <= 0.0 || p_hat_th > 1.0)
    throw config_error("p_hat_th must lie in (0, 1]");
  if (rho <= 0.0) throw config_error("rho must be positive");
}

namespace {

/* Sliding-window data for the causal fast path. */
struct EffectWindow {
  bool always = false;
  IntervalKind kind = IntervalKind::AtMost;
  int lo = 0, hi = 0;
  std::vector<uint8_t> mask;
};

struct CausalShape {
  std::vector<uint8_t> cause_mask;
  std::vector<EffectWindow> effects;
};

// And/Or/atom state formulas only; keeps the beyond-end verdict vacuous.
bool plain_state_formula(const Formula &f) {
  switch (f.op()) {
  case Op::Atom: return true;
  case Op::And:
  case Op::Or: return plain_state_formula(f.left()) && plain_state_formula(f.right());
  default: return false;
  }
}

std::vector<uint8_t> state_mask(const Formula &p, const StateSpace &space) {
  std::vector<uint8_t> mask(space.num_states());
  for (uint64_t i = 0; i < space.num_states(); ++i)
    mask[i] = eval_state(p, space.state_at(i)) ? 1 : 0;
  return mask;
}

bool collect_effects(const Formula &f, const StateSpace &space,
                     std::vector<EffectWindow> &out) {
  if (f.op() == Op::Or)
    return collect_effects(f.left(), space, out) && collect_effects(f.right(), space, out);
  if (f.op() != Op::Eventually && f.op() != Op::Always) return false;
  if (!plain_state_formula(f.child())) return false;
  EffectWindow w;
  w.always = f.op() == Op::Always;
  w.kind = f.interval().kind;
  w.lo = f.interval().lo;
  w.hi = f.interval().hi;
  w.mask = state_mask(f.child(), space);
  out.push_back(std::move(w));
  return true;
}

std::optional<CausalShape> match_causal(const Formula &f, const StateSpace &space) {
  if (f.op() != Op::Always || f.interval().kind != IntervalKind::Unbounded)
    return std::nullopt;
  Formula body = f.child();
  if (body.op() != Op::Or || body.left().op() != Op::Not) return std::nullopt;
  Formula cause = body.left().child();
  if (!plain_state_formula(cause)) return std::nullopt;
  CausalShape shape;
  if (!collect_effects(body.right(), space, shape.effects)) return std::nullopt;
  shape.cause_mask = state_mask(cause, space);
  return shape;
}

/* Weak-view verdict of G(cause -> effect-disjunction) using prefix counts
 * of each effect predicate along the trajectory. */
bool causal_satisfies(const Trajectory &s, const CausalShape &shape,
                      const std::vector<std::vector<int>> &prefix) {
  int L = s.length();
  auto count_in = [&](size_t e, int a, int b) { // positions [a, b], 1-based
    return prefix[e][static_cast<size_t>(b)] - prefix[e][static_cast<size_t>(a - 1)];
  };
  for (int k = 1; k <= L; ++k) {
    if (!shape.cause_mask[s.index_at(k)]) continue;
    bool ok = false;
    for (size_t e = 0; e < shape.effects.size() && !ok; ++e) {
      const EffectWindow &w = shape.effects[e];
      if (!w.always) {
        switch (w.kind) {
        case IntervalKind::AtMost:
          ok = k + w.hi > L || count_in(e, k, k + w.hi) > 0;
          break;
        case IntervalKind::Between:
          ok = k + w.hi > L || count_in(e, k + w.lo, k + w.hi) > 0;
          break;
        case IntervalKind::AtLeast:
        case IntervalKind::Unbounded:
          ok = true; // weakly satisfiable past the end
          break;
        }
      } else {
        switch (w.kind) {
        case IntervalKind::AtMost: {
          int b = std::min(k + w.hi, L);
          ok = count_in(e, k, b) == b - k + 1;
          break;
        }
        case IntervalKind::Between: {
          int a = k + w.lo, b = std::min(k + w.hi, L);
          ok = a > L || count_in(e, a, b) == b - a + 1;
          break;
        }
        case IntervalKind::AtLeast: {
          int a = k + w.lo;
          ok = a > L || count_in(e, a, L) == L - a + 1;
          break;
        }
        case IntervalKind::Unbounded:
          ok = count_in(e, k, L) == L - k + 1;
          break;
        }
      }
    }
    if (!ok) return false;
  }
  return true;
}

} // namespace

std::vector<uint8_t> fast_verdicts(const Dataset &d, const Formula &f) {
  std::vector<uint8_t> out(d.size());
  if (dfa_supported(f)) {
    if (d.length() < f.horizon())
      throw horizon_error("dataset length shorter than formula horizon");
    Dfa a = build_dfa(f, d.space());
    for (size_t i = 0; i < d.size(); ++i) out[i] = dfa_satisfies(a, d[i]) ? 1 : 0;
    return out;
  }
  if (auto shape = match_causal(f, d.space())) {
    if (d.length() < f.horizon())
      throw horizon_error("dataset length shorter than formula horizon");
    std::vector<std::vector<int>> prefix(shape->effects.size());
    for (size_t i = 0; i < d.size(); ++i) {
      const Trajectory &t = d[i];
      for (size_t e = 0; e < shape->effects.size(); ++e) {
        auto &pre = prefix[e];
        pre.assign(static_cast<size_t>(t.length()) + 1, 0);
        for (int k = 1; k <= t.length(); ++k)
          pre[static_cast<size_t>(k)] =
              pre[static_cast<size_t>(k - 1)] + (shape->effects[e].mask[t.index_at(k)] ? 1 : 0);
      }
      out[i] = causal_satisfies(t, *shape, prefix) ? 1 : 0;
    }
    return out;
  }
  if (f.op() == Op::And || f.op() == Op::Or) {
    auto l = fast_verdicts(d, f.left());
    auto r = fast_verdicts(d, f.right());
    for (size_t i = 0; i < d.size(); ++i)
      out[i] = f.op() == Op::And ? (l[i] && r[i]) : (l[i] || r[i]);
    return out;
  }
  for (size_t i = 0; i < d.size(); ++i) out[i] = holds(d[i], f) ? 1 : 0;
  return out;
}

namespace {

double coverage_of(const std::vector<uint8_t> &verdicts) {
  size_t n = 0;
  for (uint8_t v : verdicts) n += v;
  return static_cast<double>(n) / static_cast<double>(verdicts.size());
}

} // namespace

double objective(const std::vector<int> &theta, const TemplateSpec &t, const Dataset &d,
                 const Prior &p, const PenaltyConfig &pen, GainCache *cache,
                 const Dataset *mc_sample) {
  Formula f = t.instantiate(theta, d.space());
  double beta = coverage_of(fast_verdicts(d, f));
  double penalty = beta <= pen.p_hat_th ? pen.rho * (pen.p_hat_th - beta) : 0.0;
  double gain;
  try {
    if (t.causal()) {
      if (!mc_sample) throw error("causal template objective needs a simulated sample");
      double lo = 1.0 / (2.0 * static_cast<double>(mc_sample->size()));
      double gamma_hat =
          std::min(1.0 - lo, std::max(lo, coverage_of(fast_verdicts(*mc_sample, f))));
      gain = gain_closed_form(beta, gamma_hat, d.length());
    } else {
      gain = gain_closed_form(beta, gamma_exact(f, p, d.length(), cache), d.length());
    }
  } catch (const support_error &) {
    return std::numeric_limits<double>::infinity();
  }
  return -gain + penalty;
}

namespace {

int round_half_down(double x) { return static_cast<int>(std::ceil(x - 0.5)); }

} // namespace

PsoResult pso_optimize(const TemplateSpec &t, const Dataset &d, const Prior &p,
                       const PsoConfig &cfg, const PenaltyConfig &pen, GainCache *cache,
                       const Dataset *mc_sample) {
  cfg.validate();
  pen.validate();
  const StateSpace &space = d.space();
  std::vector<ParamDim> dims = t.layout(space);
  size_t D = dims.size();

  std::map<std::vector<int>, double> fitness_memo;
  auto fitness = [&](const std::vector<int> &theta) {
    auto it = fitness_memo.find(theta);
    if (it != fitness_memo.end()) return it->second;
    double v = objective(theta, t, d, p, pen, cache, mc_sample);
    fitness_memo.emplace(theta, v);
    return v;
  };

  auto rounded = [&](const std::vector<double> &x) {
    std::vector<int> theta(D);
    for (size_t i = 0; i < D; ++i)
      theta[i] = std::clamp(round_half_down(x[i]), dims[i].lo, dims[i].hi);
    return theta;
  };

  PsoResult result;
  if (D == 0) {
    result.theta = {};
    result.objective = fitness({});
    result.incumbent_trace.assign(static_cast<size_t>(cfg.iterations) + 1, result.objective);
  } else {
    int n = cfg.swarm;
    std::vector<std::mt19937_64> rng;
    rng.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rng.emplace_back(mix_seed(cfg.seed, static_cast<uint64_t>(i)));

    std::vector<std::vector<double>> x(static_cast<size_t>(n), std::vector<double>(D));
    std::vector<std::vector<double>> v(static_cast<size_t>(n), std::vector<double>(D, 0.0));
    std::vector<std::vector<double>> pbest_x = x;
    std::vector<double> pbest_f(static_cast<size_t>(n),
                                std::numeric_limits<double>::infinity());
    std::vector<double> gbest_x(D);
    double gbest_f = std::numeric_limits<double>::infinity();

    for (int i = 0; i < n; ++i) {
      for (size_t dd = 0; dd < D; ++dd) {
        double span = dims[dd].hi - dims[dd].lo;
        x[static_cast<size_t>(i)][dd] =
            dims[dd].lo + uniform01(rng[static_cast<size_t>(i)]) * span;
        v[static_cast<size_t>(i)][dd] =
            (uniform01(rng[static_cast<size_t>(i)]) - 0.5) * std::max(span, 1.0);
      }
    }

    auto evaluate_all = [&]() {
      for (int i = 0; i < n; ++i) {
        double fi = fitness(rounded(x[static_cast<size_t>(i)]));
        if (fi < pbest_f[static_cast<size_t>(i)]) {
          pbest_f[static_cast<size_t>(i)] = fi;
          pbest_x[static_cast<size_t>(i)] = x[static_cast<size_t>(i)];
        }
        if (fi < gbest_f) {
          gbest_f = fi;
          gbest_x = x[static_cast<size_t>(i)];
        }
      }
    };

    evaluate_all();
    result.incumbent_trace.push_back(gbest_f);
    int stalled = 0;
    for (int iter = 0; iter < cfg.iterations; ++iter) {
      double before = gbest_f;
      if (stalled >= 10) {
        // scatter the swarm but keep the incumbent; pbest memory restarts
        for (int i = 0; i < n; ++i) {
          for (size_t dd = 0; dd < D; ++dd) {
            double span = dims[dd].hi - dims[dd].lo;
            x[static_cast<size_t>(i)][dd] =
                dims[dd].lo + uniform01(rng[static_cast<size_t>(i)]) * span;
            v[static_cast<size_t>(i)][dd] =
                (uniform01(rng[static_cast<size_t>(i)]) - 0.5) * std::max(span, 1.0);
          }
          pbest_f[static_cast<size_t>(i)] = std::numeric_limits<double>::infinity();
        }
        stalled = 0;
      } else {
        for (int i = 0; i < n; ++i) {
          auto &xi = x[static_cast<size_t>(i)];
          auto &vi = v[static_cast<size_t>(i)];
          for (size_t dd = 0; dd < D; ++dd) {
            double span = dims[dd].hi - dims[dd].lo;
            double r1 = uniform01(rng[static_cast<size_t>(i)]);
            double r2 = uniform01(rng[static_cast<size_t>(i)]);
            vi[dd] = cfg.inertia * vi[dd] +
                     cfg.cognitive * r1 * (pbest_x[static_cast<size_t>(i)][dd] - xi[dd]) +
                     cfg.social * r2 * (gbest_x[dd] - xi[dd]);
            double vmax = std::max(cfg.velocity_clamp * span, 0.5);
            vi[dd] = std::clamp(vi[dd], -vmax, vmax);
            xi[dd] = std::clamp(xi[dd] + vi[dd], static_cast<double>(dims[dd].lo),
                                static_cast<double>(dims[dd].hi));
          }
        }
      }
      evaluate_all();
      result.incumbent_trace.push_back(gbest_f);
      stalled = gbest_f < before ? 0 : stalled + 1;
    }
    result.theta = rounded(gbest_x);
    result.objective = gbest_f;
  }

  result.formula = t.instantiate(result.theta, space);
  auto verdicts = fast_verdicts(d, result.formula);
  result.coverage = coverage_of(verdicts);
  InfoGainResult ig;
  ig.length = d.length();
  ig.beta = result.coverage;
  try {
    if (t.causal()) {
      double lo = 1.0 / (2.0 * static_cast<double>(mc_sample->size()));
      ig.gamma =
          std::min(1.0 - lo, std::max(lo, coverage_of(fast_verdicts(*mc_sample, result.formula))));
      ig.estimated = true;
    } else {
      ig.gamma = gamma_exact(result.formula, p, d.length(), cache);
    }
    ig.gain = gain_closed_form(ig.beta, ig.gamma, ig.length);
  } catch (const support_error &) {
    ig.gain = 0.0;
  }
  result.gain = ig;
  return result;
}

} // namespace pltl
