#include "rnm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rnm/quadrature.hpp"

namespace rnm {

namespace {

// Terms near the edge span hundreds of orders of magnitude; summing small to
// large under compensation keeps the cancellation error at the ulp level.
Complex sorted_sum(std::vector<Complex>& terms) {
  std::sort(terms.begin(), terms.end(), [](Complex a, Complex b) {
    return std::norm(a) < std::norm(b);
  });
  KahanSumC acc;
  for (const Complex& t : terms) acc.add(t);
  return acc.value();
}

}  // namespace

Complex Kernel::eval(Complex z, Complex w) const {
  VecXc a = basis_.weighted_values(z);
  if (w == z) {
    std::vector<Complex> terms(a.size());
    for (int j = 0; j < a.size(); ++j) terms[j] = std::norm(a[j]);
    return sorted_sum(terms);
  }
  VecXc b = basis_.weighted_values(w);
  std::vector<Complex> terms(a.size());
  for (int j = 0; j < a.size(); ++j) terms[j] = a[j] * std::conj(b[j]);
  return sorted_sum(terms);
}

double Kernel::density(Complex z) const {
  return eval(z, z).real() / n();
}

double Kernel::berezin(Complex w, Complex z) const {
  const double root = eval(w, w).real();
  if (!(root > 0.0))
    throw DomainError("berezin: kernel vanishes at the root point");
  return std::norm(eval(z, w)) / root;
}

double Kernel::pair_intensity(Complex z, Complex w) const {
  return eval(z, z).real() * eval(w, w).real() - std::norm(eval(z, w));
}

Complex bergman_first_order(const Potential& P, int n, Complex z, Complex w) {
  if (!P.has_polarization())
    throw UnsupportedError("bergman_first_order: potential lacks polarization");
  const Complex wbar = std::conj(w);
  const Complex expo =
      static_cast<double>(n) *
      (P.polarization(z, wbar) - 0.5 * P.value(z) - 0.5 * P.value(w));
  if (expo.real() > 709.0)
    throw NumericalError("bergman_first_order: exponent overflow");
  return (static_cast<double>(n) * P.polarization_dzdw(z, wbar) +
          P.polarization_dzdw_log(z, wbar)) *
         std::exp(expo);
}

}  // namespace rnm
