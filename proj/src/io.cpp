#include "pltl/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pltl {

using nlohmann::json;

namespace {

json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw io_error("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << content;
}

std::shared_ptr<const StateSpace> space_from_json(const json &j) {
  std::vector<NumericVar> numeric;
  std::vector<CategoricalVar> categorical;
  if (j.contains("variables"))
    for (const auto &v : j.at("variables"))
      numeric.push_back({v.at("name").get<std::string>(), v.at("min").get<int>(),
                         v.at("max").get<int>()});
  if (j.contains("categorical"))
    for (const auto &v : j.at("categorical"))
      categorical.push_back(
          {v.at("name").get<std::string>(), v.at("labels").get<std::vector<std::string>>()});
  return std::make_shared<StateSpace>(std::move(numeric), std::move(categorical));
}

json space_to_json(const StateSpace &space) {
  json j;
  j["variables"] = json::array();
  for (const auto &v : space.numeric())
    j["variables"].push_back({{"name", v.name}, {"min", v.lo}, {"max", v.hi}});
  j["categorical"] = json::array();
  for (const auto &v : space.categorical())
    j["categorical"].push_back({{"name", v.name}, {"labels", v.labels}});
  return j;
}

State state_from_json(const json &tuple, const StateSpace &space) {
  if (!tuple.is_array() || tuple.size() != space.num_vars())
    throw io_error("state tuple arity mismatch");
  State s(space.num_vars());
  for (size_t v = 0; v < space.num_vars(); ++v) {
    if (space.is_numeric(v)) {
      s[v] = tuple[v].get<int>();
    } else {
      s[v] = space.label_index(v, tuple[v].get<std::string>());
    }
  }
  space.check(s);
  return s;
}

json state_to_json(const State &s, const StateSpace &space) {
  json tuple = json::array();
  for (size_t v = 0; v < space.num_vars(); ++v) {
    if (space.is_numeric(v))
      tuple.push_back(s[v]);
    else
      tuple.push_back(space.label(v, s[v]));
  }
  return tuple;
}

// Listed states must be a bijection onto the induced space; returns the
// flat index of each listed state.
std::vector<uint32_t> listed_state_indices(const json &states, const StateSpace &space) {
  if (states.size() != space.num_states())
    throw io_error("prior must list every state of the space exactly once");
  std::vector<uint32_t> order;
  std::vector<uint8_t> seen(space.num_states(), 0);
  for (const auto &tuple : states) {
    uint32_t idx = static_cast<uint32_t>(space.index_of(state_from_json(tuple, space)));
    if (seen[idx]) throw io_error("prior lists a state twice");
    seen[idx] = 1;
    order.push_back(idx);
  }
  return order;
}

} // namespace

std::shared_ptr<const StateSpace> load_space(const std::string &path) {
  json j = read_json(path);
  if (j.contains("space")) return space_from_json(j.at("space"));
  return space_from_json(j);
}

Prior load_prior(const std::string &path) {
  json j = read_json(path);
  try {
    auto space = space_from_json(j.at("space"));
    std::string type = j.at("type").get<std::string>();
    auto order = listed_state_indices(j.at("states"), *space);
    size_t H = space->num_states();
    if (type == "stationary") {
      auto probs = j.at("probs").get<std::vector<double>>();
      if (probs.size() != H) throw io_error("probs length mismatch");
      std::vector<double> dist(H, 0.0);
      for (size_t i = 0; i < H; ++i) dist[order[i]] = probs[i];
      return Prior::stationary(std::move(space), std::move(dist));
    }
    if (type == "dtmc") {
      auto p_init_listed = j.at("p_init").get<std::vector<double>>();
      auto P_listed = j.at("P").get<std::vector<std::vector<double>>>();
      if (p_init_listed.size() != H || P_listed.size() != H)
        throw io_error("p_init / P dimension mismatch");
      std::vector<double> p_init(H, 0.0);
      std::vector<std::vector<double>> P(H, std::vector<double>(H, 0.0));
      for (size_t i = 0; i < H; ++i) {
        if (P_listed[i].size() != H) throw io_error("P must be square");
        p_init[order[i]] = p_init_listed[i];
        for (size_t k = 0; k < H; ++k) P[order[i]][order[k]] = P_listed[i][k];
      }
      return Prior::markov(Dtmc(std::move(space), std::move(P), std::move(p_init)));
    }
    throw io_error("unknown prior type '" + type + "'");
  } catch (const json::exception &e) {
    throw io_error("malformed prior file '" + path + "': " + e.what());
  }
}

void save_prior(const Prior &p, const std::string &path) {
  const StateSpace &space = p.space();
  json j;
  j["space"] = space_to_json(space);
  json states = json::array();
  for (uint64_t i = 0; i < space.num_states(); ++i)
    states.push_back(state_to_json(space.state_at(i), space));
  j["states"] = std::move(states);
  if (p.is_stationary()) {
    j["type"] = "stationary";
    j["probs"] = p.stationary_dist();
  } else {
    j["type"] = "dtmc";
    j["p_init"] = p.dtmc().p_init();
    j["P"] = p.dtmc().matrix();
  }
  write_file(path, j.dump(1));
}

namespace {

bool ends_with(const std::string &s, const std::string &suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Dataset load_dataset_csv(const std::string &path, std::shared_ptr<const StateSpace> space) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw io_error("empty dataset file '" + path + "'");

  // header: traj_id,t,<vars...>
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() != 2 + space->num_vars() || header[0] != "traj_id" || header[1] != "t")
    throw io_error("dataset header must be traj_id,t,<variables> in '" + path + "'");
  std::vector<size_t> var_of_col;
  for (size_t c = 2; c < header.size(); ++c) var_of_col.push_back(space->var_index(header[c]));

  std::vector<std::pair<long, std::vector<std::pair<long, State>>>> grouped;
  long current_id = -1;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size())
      throw io_error("row " + std::to_string(lineno) + " has wrong arity in '" + path + "'");
    long id, t;
    State s(space->num_vars());
    try {
      id = std::stol(cells[0]);
      t = std::stol(cells[1]);
      for (size_t c = 2; c < cells.size(); ++c) {
        size_t v = var_of_col[c - 2];
        if (space->is_numeric(v))
          s[v] = std::stoi(cells[c]);
        else
          s[v] = space->label_index(v, cells[c]);
      }
    } catch (const std::logic_error &) {
      throw io_error("row " + std::to_string(lineno) + " has a malformed value in '" + path +
                     "'");
    }
    space->check(s);
    if (grouped.empty() || id != current_id) {
      grouped.emplace_back(id, std::vector<std::pair<long, State>>{});
      current_id = id;
    }
    grouped.back().second.emplace_back(t, s);
  }

  std::vector<Trajectory> trajectories;
  for (auto &[id, rows] : grouped) {
    std::sort(rows.begin(), rows.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    std::vector<State> states;
    for (size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].first != static_cast<long>(k + 1))
        throw io_error("trajectory " + std::to_string(id) + " has non-contiguous time steps");
      states.push_back(rows[k].second);
    }
    trajectories.push_back(Trajectory::from_states(space, states));
  }
  return Dataset(std::move(trajectories));
}

Dataset load_dataset_jsonl(const std::string &path, std::shared_ptr<const StateSpace> space) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::vector<Trajectory> trajectories;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception &e) {
      throw io_error("malformed JSON line in '" + path + "': " + e.what());
    }
    std::vector<State> states;
    try {
      for (const auto &tuple : j.at("states")) states.push_back(state_from_json(tuple, *space));
    } catch (const json::exception &e) {
      throw io_error("malformed trajectory object in '" + path + "': " + e.what());
    }
    trajectories.push_back(Trajectory::from_states(space, states));
  }
  if (trajectories.empty()) throw io_error("empty dataset file '" + path + "'");
  return Dataset(std::move(trajectories));
}

} // namespace

Dataset load_dataset(const std::string &path, std::shared_ptr<const StateSpace> space) {
  if (ends_with(path, ".jsonl")) return load_dataset_jsonl(path, std::move(space));
  return load_dataset_csv(path, std::move(space));
}

void save_dataset(const Dataset &d, const std::string &path) {
  const StateSpace &space = d.space();
  std::ostringstream os;
  if (ends_with(path, ".jsonl")) {
    for (size_t i = 0; i < d.size(); ++i) {
      json j;
      j["id"] = i;
      json states = json::array();
      for (int k = 1; k <= d.length(); ++k)
        states.push_back(state_to_json(d[i].state_at(k), space));
      j["states"] = std::move(states);
      os << j.dump() << "\n";
    }
  } else {
    os << "traj_id,t";
    for (size_t v = 0; v < space.num_vars(); ++v) os << "," << space.var_name(v);
    os << "\n";
    for (size_t i = 0; i < d.size(); ++i) {
      for (int k = 1; k <= d.length(); ++k) {
        os << i << "," << k;
        State s = d[i].state_at(k);
        for (size_t v = 0; v < space.num_vars(); ++v) {
          if (space.is_numeric(v))
            os << "," << s[v];
          else
            os << "," << space.label(v, s[v]);
        }
        os << "\n";
      }
    }
  }
  write_file(path, os.str());
}

RunConfig load_run_config(const std::string &path) {
  json j = read_json(path);
  RunConfig cfg;
  try {
    if (j.contains("inference")) {
      const json &inf = j.at("inference");
      auto &ic = cfg.inference;
      if (inf.contains("p_th")) ic.p_th = inf.at("p_th").get<double>();
      if (inf.contains("p_hat_th")) ic.p_hat_th = inf.at("p_hat_th").get<double>();
      if (inf.contains("ell_th")) ic.ell_th = inf.at("ell_th").get<int>();
      if (inf.contains("alpha")) ic.alpha = inf.at("alpha").get<double>();
      if (inf.contains("epsilon")) ic.epsilon = inf.at("epsilon").get<double>();
      if (inf.contains("mc_samples")) ic.mc_samples = inf.at("mc_samples").get<int>();
      if (inf.contains("conjunction_rule")) {
        std::string rule = inf.at("conjunction_rule").get<std::string>();
        if (rule == "coverage")
          ic.conjunction_rule = InferConfig::ConjunctionRule::Coverage;
        else if (rule == "epsilon")
          ic.conjunction_rule = InferConfig::ConjunctionRule::Epsilon;
        else
          throw config_error("conjunction_rule must be 'coverage' or 'epsilon'");
      }
      if (inf.contains("templates")) cfg.templates = inf.at("templates").get<std::string>();
    }
    if (j.contains("pso")) {
      const json &ps = j.at("pso");
      auto &pc = cfg.inference.pso;
      if (ps.contains("swarm")) pc.swarm = ps.at("swarm").get<int>();
      if (ps.contains("iterations")) pc.iterations = ps.at("iterations").get<int>();
      if (ps.contains("inertia")) pc.inertia = ps.at("inertia").get<double>();
      if (ps.contains("cognitive")) pc.cognitive = ps.at("cognitive").get<double>();
      if (ps.contains("social")) pc.social = ps.at("social").get<double>();
      if (ps.contains("velocity_clamp"))
        pc.velocity_clamp = ps.at("velocity_clamp").get<double>();
    }
    if (j.contains("penalty")) {
      const json &pe = j.at("penalty");
      if (pe.contains("rho")) cfg.inference.rho = pe.at("rho").get<double>();
      if (pe.contains("p_hat_th"))
        cfg.inference.p_hat_th = pe.at("p_hat_th").get<double>();
    }
    if (j.contains("simulation")) {
      const json &sim = j.at("simulation");
      if (sim.contains("n")) cfg.sim_n = sim.at("n").get<int>();
      if (sim.contains("length")) cfg.sim_length = sim.at("length").get<int>();
    }
    if (j.contains("causal")) {
      const json &ca = j.at("causal");
      if (ca.contains("causes")) cfg.causes = ca.at("causes").get<std::vector<std::string>>();
      if (ca.contains("effect_kinds"))
        cfg.effect_kinds = ca.at("effect_kinds").get<std::vector<std::string>>();
      if (ca.contains("effect_horizon"))
        cfg.effect_horizon = ca.at("effect_horizon").get<int>();
      if (ca.contains("effect_region")) {
        auto r = ca.at("effect_region").get<std::vector<int>>();
        if (r.size() != 4) throw config_error("effect_region must be [x_lo,x_hi,y_lo,y_hi]");
        cfg.effect_region = {r[0], r[1], r[2], r[3]};
      }
    }
  } catch (const json::exception &e) {
    throw config_error("malformed config '" + path + "': " + e.what());
  }
  return cfg;
}

} // namespace pltl
