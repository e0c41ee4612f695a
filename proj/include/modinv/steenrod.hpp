#ifndef MODINV_STEENROD_HPP
#define MODINV_STEENROD_HPP

#include <vector>

#include "modinv/group.hpp"

namespace modinv {

// Coefficients of the total power: coeffs[i] = P^i(f). Truncated at deg f,
// beyond which every P^i vanishes.
struct TotalPower {
  Polynomial base;
  std::vector<Polynomial> coeffs;
  std::size_t truncation() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

TotalPower total_power(const Polynomial& f);

// P^i(f): substitute x_j -> x_j + x_j^q xi and take the xi^i coefficient.
Polynomial steenrod_p(unsigned i, const Polynomial& f);

// P^i(s) for an invariant s, re-verified to be invariant.
Polynomial check_invariant_closure(const MatrixGroup& group, const Polynomial& s, unsigned i);

}  // namespace modinv

#endif  // MODINV_STEENROD_HPP
