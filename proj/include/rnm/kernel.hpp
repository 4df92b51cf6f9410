#pragma once

#include "rnm/orthopoly.hpp"
#include "rnm/types.hpp"

namespace rnm {

// Weighted correlation kernel K_n(z,w) = e^{-n(Q(z)+Q(w))/2} sum_j p_j(z)
// conj(p_j(w)). Evaluation is pure and thread-safe; all magnitude handling
// lives in the basis, so terms arrive here already bounded.
class Kernel {
 public:
  explicit Kernel(OrthonormalBasis basis) : basis_(std::move(basis)) {}

  int n() const { return basis_.n(); }
  const OrthonormalBasis& basis() const { return basis_; }
  const Potential& potential() const { return basis_.potential(); }

  Complex eval(Complex z, Complex w) const;

  // One-point intensity over n: K_n(z,z)/n, the macroscopic density.
  double density(Complex z) const;

  // Probability density rooted at w: |K_n(z,w)|^2 / K_n(w,w).
  double berezin(Complex w, Complex z) const;

  // Two-point intensity K(z,z)K(w,w) - |K(z,w)|^2.
  double pair_intensity(Complex z, Complex w) const;

 private:
  OrthonormalBasis basis_;
};

// First-order Bergman approximation: (n B_0 + B_1) e^{n(Q(z,conj w) -
// Q(z)/2 - Q(w)/2)} with B_0, B_1 the polarized derivative coefficients.
// Requires the potential to carry a polarization.
Complex bergman_first_order(const Potential& P, int n, Complex z, Complex w);

}  // namespace rnm
