#pragma once

#include "pltl/dfa.hpp"
#include "pltl/prior.hpp"

namespace pltl {

/* Synchronous product of a DTMC and a DFA over the same state set. Product
 * state (s, q) is indexed q * H + s. The first chain state is consumed at
 * initialization, so initial product states are (s, delta(q0, L(s))) for
 * initial chain states s, weighted by p_init. */
class ProductAutomaton {
public:
  ProductAutomaton(const Dtmc &m, const Dfa &a);

  size_t num_states() const { return H_ * K_; }
  size_t chain_states() const { return H_; }
  size_t dfa_states() const { return K_; }

  size_t index(size_t s, size_t q) const { return q * H_ + s; }
  size_t chain_of(size_t product_state) const { return product_state % H_; }
  size_t dfa_of(size_t product_state) const { return product_state / H_; }

  double prob(size_t from, size_t to) const;
  bool accepting(size_t product_state) const {
    return a_->accepting(static_cast<uint32_t>(dfa_of(product_state)));
  }

  // (product state, p_init weight) pairs for the initial chain states.
  const std::vector<std::pair<size_t, double>> &initial() const { return initial_; }

  const Dtmc &dtmc() const { return *m_; }
  const Dfa &dfa() const { return *a_; }

private:
  const Dtmc *m_;
  const Dfa *a_;
  size_t H_, K_;
  std::vector<std::pair<size_t, double>> initial_;
};

ProductAutomaton product(const Dtmc &m, const Dfa &a);

} // namespace pltl
