#include "pltl/product.hpp"

namespace pltl {

ProductAutomaton::ProductAutomaton(const Dtmc &m, const Dfa &a)
    : m_(&m), a_(&a), H_(m.num_states()), K_(a.num_states()) {
  if (m.num_states() != a.num_symbols())
    throw error("DFA alphabet does not match the chain state set");
  for (uint32_t s : m.initial_states()) {
    uint32_t q = a.next(a.initial(), s);
    initial_.emplace_back(index(s, q), m.p_init()[s]);
  }
}

double ProductAutomaton::prob(size_t from, size_t to) const {
  size_t s = chain_of(from), q = dfa_of(from);
  size_t s2 = chain_of(to), q2 = dfa_of(to);
  if (a_->next(static_cast<uint32_t>(q), static_cast<uint32_t>(s2)) != q2) return 0.0;
  return m_->transition(s, s2);
}

ProductAutomaton product(const Dtmc &m, const Dfa &a) { return ProductAutomaton(m, a); }

} // namespace pltl
