#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pltl/formula.hpp"
#include "pltl/trajectory.hpp"

namespace pltl {

/* Deterministic finite automaton over the concrete state set of a StateSpace.
 * Transitions are keyed by the predicate class of the consumed state, which
 * pre-composes the transition relation with the labeling function. Template
 * automata use two classes (predicate false / true). */
class Dfa {
public:
  Dfa(std::vector<uint8_t> symbol_class, uint32_t num_classes,
      std::vector<uint32_t> transitions, uint32_t initial, std::vector<uint8_t> accepting,
      bool accepts_negation);

  uint32_t num_states() const { return static_cast<uint32_t>(accepting_.size()); }
  uint32_t num_symbols() const { return static_cast<uint32_t>(symbol_class_.size()); }
  uint32_t num_classes() const { return num_classes_; }
  uint32_t initial() const { return initial_; }
  bool accepting(uint32_t q) const { return accepting_[q] != 0; }
  uint8_t symbol_class(uint32_t symbol) const { return symbol_class_[symbol]; }

  uint32_t next(uint32_t q, uint32_t symbol) const {
    return transitions_[q * num_classes_ + symbol_class_[symbol]];
  }
  uint32_t next_class(uint32_t q, uint8_t cls) const {
    return transitions_[q * num_classes_ + cls];
  }

  /* True when accepting runs witness strong satisfaction of the negation of
   * the source formula (the safe-only case). */
  bool accepts_negation() const { return accepts_negation_; }

  // Plain-text transition table for debugging.
  std::string dump(const StateSpace &space) const;

private:
  std::vector<uint8_t> symbol_class_;
  uint32_t num_classes_;
  std::vector<uint32_t> transitions_; // num_states x num_classes
  uint32_t initial_;
  std::vector<uint8_t> accepting_;
  bool accepts_negation_;
};

/* Builds the acceptor for a primitive template instance: a state formula p or
 * one of F_I(p), G_I(p), G(F[<=i](p)), F(G[<=i](p)) with p temporal-free.
 * Co-safe instances yield a DFA accepting strong satisfaction of f; safe-only
 * instances yield a DFA accepting strong satisfaction of !f. Throws
 * shape_error for anything else. */
Dfa build_dfa(const Formula &f, const StateSpace &space);

// True when the formula shape is accepted by build_dfa.
bool dfa_supported(const Formula &f);

// Acceptance of the run over s_1..s_L from the initial state.
bool dfa_run(const Dfa &a, const Trajectory &s);

// Satisfaction verdict through the automaton: acceptance, complemented for
// safe-only source formulas.
inline bool dfa_satisfies(const Dfa &a, const Trajectory &s) {
  return dfa_run(a, s) != a.accepts_negation();
}

} // namespace pltl
