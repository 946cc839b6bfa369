#pragma once

#include <memory>
#include <optional>
#include <string>

#include "pltl/infer.hpp"
#include "pltl/prior.hpp"

namespace pltl {

/* File formats
 *
 * State space (embedded under "space" in prior files, or standalone):
 *   {"variables":  [{"name":"x","min":1,"max":10}, ...],
 *    "categorical":[{"name":"b","labels":["bank_1","bank_2"]}, ...]}
 *
 * Prior:
 *   {"type":"stationary","space":{...},"states":[[1],...],"probs":[...]}
 *   {"type":"dtmc","space":{...},"states":[[1],...],"p_init":[...],"P":[[...]]}
 * States are value tuples in declaration order, categorical values as label
 * strings; the listed order indexes probs / p_init / P.
 *
 * Dataset: CSV with header "traj_id,t,<var...>" (t is 1-based), or JSON
 * lines with one {"id":...,"states":[[...],...]} object per line.
 *
 * Run config (JSON): sections "inference", "pso", "penalty", "simulation",
 * optional "causal".
 */

std::shared_ptr<const StateSpace> load_space(const std::string &path);

Prior load_prior(const std::string &path);
void save_prior(const Prior &p, const std::string &path);

Dataset load_dataset(const std::string &path, std::shared_ptr<const StateSpace> space);
void save_dataset(const Dataset &d, const std::string &path); // by extension: .csv / .jsonl

struct RunConfig {
  InferConfig inference;
  std::string templates = "scalar"; // scalar | rect
  // causal mode
  std::vector<std::string> causes;       // cause formula strings
  std::vector<std::string> effect_kinds = {"F", "G"};
  int effect_horizon = 10;
  std::optional<std::array<int, 4>> effect_region; // x_lo x_hi y_lo y_hi
  // simulation section
  int sim_n = 100;
  int sim_length = 100;
};

RunConfig load_run_config(const std::string &path);

} // namespace pltl
