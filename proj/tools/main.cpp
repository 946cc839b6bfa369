#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pltl/casestudy.hpp"
#include "pltl/dfa.hpp"
#include "pltl/infer.hpp"
#include "pltl/io.hpp"
#include "pltl/parser.hpp"
#include "pltl/semantics.hpp"

using nlohmann::json;
using namespace pltl;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitComputation = 3;

void emit(const json &j, const std::string &output, const std::string &format) {
  std::string text = format == "text" ? j.dump(2) : j.dump();
  if (output.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(output);
    if (!out) throw io_error("cannot write '" + output + "'");
    out << text << "\n";
  }
}

std::shared_ptr<const StateSpace> space_from_options(const std::string &space_path,
                                                     const std::string &prior_path) {
  if (!space_path.empty()) return load_space(space_path);
  if (!prior_path.empty()) return load_space(prior_path);
  throw config_error("a state space is needed: pass --space or --prior");
}

json gain_to_json(const InfoGainResult &g) {
  return {{"beta", g.beta},
          {"gamma", g.gamma},
          {"gain", g.gain},
          {"L", g.length},
          {"estimated", g.estimated}};
}

json pattern_to_json(const PatternRecord &p) {
  json parts = json::array();
  for (const auto &f : p.parts) parts.push_back(f.to_string());
  json j{{"formula", p.formula.to_string()},
         {"parts", parts},
         {"coverage_residual", p.coverage_residual},
         {"covered", p.covered_count},
         {"residual_size", p.residual_count},
         {"gain", gain_to_json(p.pattern_gain)}};
  if (p.eta >= 0.0) j["eta"] = p.eta;
  return j;
}

json result_to_json(const InferredFormula &r) {
  json patterns = json::array();
  for (const auto &p : r.patterns) patterns.push_back(pattern_to_json(p));
  return {{"formula", r.formula().to_string()},
          {"coverage", r.coverage},
          {"covered", r.covered_count},
          {"total", r.total_count},
          {"size", r.total_size},
          {"iterations", r.iterations},
          {"coverage_met", r.coverage_met},
          {"patterns", patterns}};
}

void print_report(const InferredFormula &r, std::ostream &os) {
  os << "inferred formula: " << r.formula().to_string() << "\n";
  os << "coverage " << r.coverage << " (" << r.covered_count << "/" << r.total_count
     << "), size " << r.total_size << ", iterations " << r.iterations << "\n";
  for (size_t it = 0; it < r.reports.size(); ++it) {
    os << "iteration " << it + 1 << " candidates (formula | beta | gamma | gain):\n";
    for (const auto &c : r.reports[it].ranked) {
      os << "  " << c.formula.to_string() << " | " << c.gain.beta << " | " << c.gain.gamma
         << " | " << c.gain.gain << (c.gain.estimated ? " (est)" : "") << "\n";
    }
  }
  for (size_t i = 0; i < r.patterns.size(); ++i) {
    const auto &p = r.patterns[i];
    os << "pattern " << i + 1 << ": " << p.formula.to_string() << "  covers "
       << p.covered_count << "/" << p.residual_count << " residual";
    if (p.eta >= 0.0) os << ", eta " << p.eta;
    os << "\n";
  }
}

std::vector<TemplateSpec> templates_from_config(const RunConfig &run, const StateSpace &space,
                                                int L) {
  int cap = L - 1;
  if (run.templates == "rect") {
    if (space.numeric().size() < 2)
      throw config_error("rect templates need two numeric variables");
    return TemplateSpec::standard_rect(space, 0, 1, cap);
  }
  if (run.templates != "scalar")
    throw config_error("templates must be 'scalar' or 'rect'");
  if (space.numeric().empty()) throw config_error("scalar templates need a numeric variable");
  return TemplateSpec::standard_scalar(space, 0, cap);
}

std::vector<TemplateSpec> effect_templates_from_config(const RunConfig &run,
                                                       const StateSpace &space, int L) {
  if (space.numeric().size() < 2)
    throw config_error("causal effect templates need two numeric variables");
  RectPred rect;
  rect.vars = {0, 1};
  if (run.effect_region) {
    rect.ranges = {{(*run.effect_region)[0], (*run.effect_region)[1]},
                   {(*run.effect_region)[2], (*run.effect_region)[3]}};
  } else {
    rect.ranges = {{space.numeric()[0].lo, space.numeric()[0].hi},
                   {space.numeric()[1].lo, space.numeric()[1].hi}};
  }
  std::vector<TemplateSpec> out;
  for (const std::string &kind : run.effect_kinds) {
    TemplateSpec t;
    t.kind = kind == "G" ? TemplateKind::Always : TemplateKind::Eventually;
    t.name = (kind == "G" ? "G[<=i](rect)" : "F[<=i](rect)");
    t.shape = IntervalKind::AtMost;
    t.horizon_cap = std::min(run.effect_horizon, L - 1);
    t.pred = rect;
    out.push_back(std::move(t));
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"pLTL inference over trajectory datasets with prior knowledge"};
  app.require_subcommand(1);

  uint64_t seed = 1;
  std::string config_path, output, format = "json";
  app.add_option("--seed", seed, "master RNG seed");
  app.add_option("--config", config_path, "run configuration (JSON)");
  app.add_option("--output", output, "write results to this file instead of stdout");
  app.add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  // infogain
  auto *cmd_ig = app.add_subcommand("infogain", "information gain of a formula");
  std::string ig_formula, ig_dataset, ig_prior;
  bool ig_estimate = false;
  int ig_samples = 10000;
  cmd_ig->add_option("--formula", ig_formula)->required();
  cmd_ig->add_option("--dataset", ig_dataset)->required();
  cmd_ig->add_option("--prior", ig_prior)->required();
  cmd_ig->add_flag("--estimate", ig_estimate, "Monte Carlo gamma instead of exact");
  cmd_ig->add_option("--mc-samples", ig_samples, "sample size for --estimate");

  // infer
  auto *cmd_inf = app.add_subcommand("infer", "infer a formula from a dataset");
  std::string inf_dataset, inf_prior;
  bool inf_causal = false;
  cmd_inf->add_option("--dataset", inf_dataset)->required();
  cmd_inf->add_option("--prior", inf_prior)->required();
  cmd_inf->add_flag("--causal", inf_causal, "causal-form inference (config lists causes)");

  // simulate
  auto *cmd_sim = app.add_subcommand("simulate", "generate a dataset");
  std::string sim_case, sim_prior, sim_out, sim_prior_out;
  int sim_n = 0, sim_len = 0;
  cmd_sim->add_option("--case", sim_case, "case study: I, IIa, IIb, III");
  cmd_sim->add_option("--prior", sim_prior, "simulate from this prior file instead");
  cmd_sim->add_option("--n", sim_n, "number of trajectories")->check(CLI::PositiveNumber);
  cmd_sim->add_option("--length", sim_len, "trajectory length")->check(CLI::PositiveNumber);
  cmd_sim->add_option("--out", sim_out, "dataset output path (.csv or .jsonl)")->required();
  cmd_sim->add_option("--prior-out", sim_prior_out, "also write the generator's prior here");

  // eval
  auto *cmd_ev = app.add_subcommand("eval", "evaluate a formula on a dataset");
  std::string ev_formula, ev_dataset, ev_prior, ev_space;
  cmd_ev->add_option("--formula", ev_formula)->required();
  cmd_ev->add_option("--dataset", ev_dataset)->required();
  cmd_ev->add_option("--prior", ev_prior, "prior file (for its state space)");
  cmd_ev->add_option("--space", ev_space, "state space file");

  // dfa
  auto *cmd_dfa = app.add_subcommand("dfa", "dump the template automaton of a formula");
  std::string dfa_formula, dfa_prior, dfa_space;
  cmd_dfa->add_option("--formula", dfa_formula)->required();
  cmd_dfa->add_option("--prior", dfa_prior);
  cmd_dfa->add_option("--space", dfa_space);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) ? kExitUsage : 0;
  }

  try {
    if (cmd_ig->parsed()) {
      Prior prior = load_prior(ig_prior);
      Dataset d = load_dataset(ig_dataset, prior.space_ptr());
      Formula f = parse(ig_formula, prior.space());
      InfoGainResult r;
      if (ig_estimate) {
        Dataset sampled = prior.simulate(d.length(), ig_samples, seed);
        r = estimated_info_gain(d, f, sampled, d.length());
      } else {
        r = info_gain(d, f, prior);
      }
      emit(gain_to_json(r), output, format);
      return 0;
    }

    if (cmd_inf->parsed()) {
      RunConfig run;
      if (!config_path.empty()) run = load_run_config(config_path);
      run.inference.seed = seed;
      Prior prior = load_prior(inf_prior);
      Dataset d = load_dataset(inf_dataset, prior.space_ptr());
      if (inf_causal) {
        if (run.causes.empty())
          throw config_error("causal inference needs causes in the config file");
        std::vector<Formula> causes;
        for (const auto &text : run.causes) causes.push_back(parse(text, prior.space()));
        auto effects = effect_templates_from_config(run, prior.space(), d.length());
        auto results = infer_causal(d, prior, causes, effects, run.inference);
        json arr = json::array();
        for (const auto &r : results) {
          json item{{"cause", r.cause.to_string()}, {"eta", r.eta}, {"excluded", r.excluded}};
          if (!r.excluded) item["result"] = result_to_json(r.result);
          arr.push_back(std::move(item));
        }
        emit(arr, output, format);
        if (format == "text")
          for (const auto &r : results)
            if (!r.excluded) print_report(r.result, std::cerr);
      } else {
        auto templates = templates_from_config(run, prior.space(), d.length());
        InferredFormula r = infer(d, prior, templates, run.inference);
        emit(result_to_json(r), output, format);
        if (format == "text") print_report(r, std::cerr);
      }
      return 0;
    }

    if (cmd_sim->parsed()) {
      RunConfig run;
      if (!config_path.empty()) run = load_run_config(config_path);
      int n = sim_n > 0 ? sim_n : run.sim_n;
      int L = sim_len > 0 ? sim_len : run.sim_length;
      if (!sim_case.empty()) {
        CaseStudySpec spec;
        spec.n = n;
        spec.length = L;
        if (sim_case == "I")
          spec.which = CaseStudySpec::Which::I;
        else if (sim_case == "IIa")
          spec.which = CaseStudySpec::Which::IIa;
        else if (sim_case == "IIb")
          spec.which = CaseStudySpec::Which::IIb;
        else if (sim_case == "III")
          spec.which = CaseStudySpec::Which::III;
        else
          throw config_error("--case must be I, IIa, IIb or III");
        CaseStudyData data = generate_case_study(spec, seed);
        save_dataset(data.dataset, sim_out);
        if (!sim_prior_out.empty()) save_prior(data.prior, sim_prior_out);
      } else if (!sim_prior.empty()) {
        Prior prior = load_prior(sim_prior);
        save_dataset(prior.simulate(L, n, seed), sim_out);
      } else {
        throw config_error("simulate needs --case or --prior");
      }
      return 0;
    }

    if (cmd_ev->parsed()) {
      auto space = space_from_options(ev_space, ev_prior);
      Dataset d = load_dataset(ev_dataset, space);
      Formula f = parse(ev_formula, *space);
      json verdicts = json::array();
      size_t count = 0;
      for (const auto &t : d.trajectories()) {
        bool v = holds(t, f);
        verdicts.push_back(v);
        count += v;
      }
      emit({{"beta", static_cast<double>(count) / static_cast<double>(d.size())},
            {"m", d.size()},
            {"verdicts", verdicts}},
           output, format);
      return 0;
    }

    if (cmd_dfa->parsed()) {
      auto space = space_from_options(dfa_space, dfa_prior);
      Formula f = parse(dfa_formula, *space);
      Dfa a = build_dfa(f, *space);
      std::cout << a.dump(*space);
      return 0;
    }
  } catch (const parse_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const config_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return 0;
}
