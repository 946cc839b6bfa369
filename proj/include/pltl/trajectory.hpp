#pragma once

#include <memory>
#include <vector>

#include "pltl/state_space.hpp"

namespace pltl {

/* Finite state sequence s_1..s_L, stored as flat state indices into a shared
 * StateSpace. Time indices are 1-based throughout. */
class Trajectory {
public:
  Trajectory(std::shared_ptr<const StateSpace> space, std::vector<uint32_t> state_indices);

  static Trajectory from_states(std::shared_ptr<const StateSpace> space,
                                const std::vector<State> &states);

  int length() const { return static_cast<int>(indices_.size()); }
  // State index at 1-based time k.
  uint32_t index_at(int k) const { return indices_[static_cast<size_t>(k - 1)]; }
  State state_at(int k) const { return space_->state_at(index_at(k)); }
  const std::vector<uint32_t> &indices() const { return indices_; }
  const StateSpace &space() const { return *space_; }
  const std::shared_ptr<const StateSpace> &space_ptr() const { return space_; }

private:
  std::shared_ptr<const StateSpace> space_;
  std::vector<uint32_t> indices_;
};

/* Nonempty collection of trajectories of one common length. */
class Dataset {
public:
  explicit Dataset(std::vector<Trajectory> trajectories);

  int length() const { return trajectories_.front().length(); }
  size_t size() const { return trajectories_.size(); }
  const Trajectory &operator[](size_t i) const { return trajectories_[i]; }
  const std::vector<Trajectory> &trajectories() const { return trajectories_; }
  const StateSpace &space() const { return trajectories_.front().space(); }
  const std::shared_ptr<const StateSpace> &space_ptr() const {
    return trajectories_.front().space_ptr();
  }

  // Subset by trajectory positions, same length invariant preserved.
  Dataset subset(const std::vector<size_t> &keep) const;

private:
  std::vector<Trajectory> trajectories_;
};

} // namespace pltl
