#pragma once

#include "pltl/formula.hpp"
#include "pltl/trajectory.hpp"

namespace pltl {

/* Boolean semantics on finite trajectories, strong and weak view. In the
 * strong view an atom at a position past the end of the trajectory is false;
 * in the weak view it is true. Negation swaps the view. Positions beyond
 * L are collapsed onto one virtual position L+1, whose verdict does not
 * depend on the exact position. */
bool eval_strong(const Trajectory &s, int k, const Formula &f);
bool eval_weak(const Trajectory &s, int k, const Formula &f);

/* Satisfaction at k=1, dispatching on the fragment: strong view for co-safe
 * formulas, weak view for safe-only ones. Requires classify(f) != Neither
 * and length(s) >= horizon(f). */
bool satisfies(const Trajectory &s, const Formula &f);

/* Satisfaction decided by parts: a formula whose fragment is Neither only
 * because it combines co-safe and safe subformulas with And/Or is decided
 * by combining the per-part verdicts. Irreducibly undecidable formulas
 * still raise fragment_error. */
bool holds(const Trajectory &s, const Formula &f);

// Propositional evaluation of a temporal-free formula at one state.
bool eval_state(const Formula &f, const State &s);

} // namespace pltl
