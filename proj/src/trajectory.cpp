#include "pltl/trajectory.hpp"

namespace pltl {

Trajectory::Trajectory(std::shared_ptr<const StateSpace> space,
                       std::vector<uint32_t> state_indices)
    : space_(std::move(space)), indices_(std::move(state_indices)) {
  if (indices_.empty()) throw io_error("trajectory must have length >= 1");
  for (uint32_t idx : indices_)
    if (idx >= space_->num_states()) throw io_error("state index outside the state space");
}

Trajectory Trajectory::from_states(std::shared_ptr<const StateSpace> space,
                                   const std::vector<State> &states) {
  std::vector<uint32_t> idx;
  idx.reserve(states.size());
  for (const State &s : states) {
    space->check(s);
    idx.push_back(static_cast<uint32_t>(space->index_of(s)));
  }
  return Trajectory(std::move(space), std::move(idx));
}

Dataset::Dataset(std::vector<Trajectory> trajectories)
    : trajectories_(std::move(trajectories)) {
  if (trajectories_.empty()) throw io_error("dataset must be nonempty");
  int L = trajectories_.front().length();
  for (const auto &t : trajectories_) {
    if (t.length() != L) throw io_error("dataset trajectories must share one length");
    if (!(t.space() == trajectories_.front().space()))
      throw io_error("dataset trajectories must share one state space");
  }
}

Dataset Dataset::subset(const std::vector<size_t> &keep) const {
  std::vector<Trajectory> ts;
  ts.reserve(keep.size());
  for (size_t i : keep) ts.push_back(trajectories_[i]);
  return Dataset(std::move(ts));
}

} // namespace pltl
