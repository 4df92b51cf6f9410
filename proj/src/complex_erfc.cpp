#include "rnm/complex_erfc.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace rnm {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrtPi = 1.0 / std::sqrt(kPi);

// Maclaurin form w(z) = e^{-z^2} + (2iz/sqrt(pi)) sum_m (-2z^2)^m/(2m+1)!!.
// The even part sums to e^{-z^2} exactly; only the odd part needs the loop.
Complex w_series(Complex z) {
  Complex y = -2.0 * z * z;
  Complex term(1.0, 0.0);
  Complex sum = term;
  for (int m = 0; m < 120; ++m) {
    term *= y / double(2 * m + 3);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return std::exp(-z * z) + Complex(0.0, 2.0 * kInvSqrtPi) * z * sum;
}

// Laplace continued fraction w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - ...)))
// evaluated with the modified Lentz scheme. Reliable for |z| >= 7.
Complex w_lentz(Complex z) {
  const double tiny = 1e-290;
  Complex f = z, C = z, D(0.0, 0.0);
  for (int k = 1; k <= 400; ++k) {
    double a = -0.5 * k;
    D = z + a * D;
    if (std::abs(D) < tiny) D = tiny;
    C = z + a / C;
    if (std::abs(C) < tiny) C = tiny;
    D = 1.0 / D;
    Complex delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return Complex(0.0, kInvSqrtPi) / f;
}

// Rational approximation on the upper half plane (Weideman 1994) covering the
// annulus between the series and continued-fraction regions.
constexpr int kWeidemanN = 64;

struct WeidemanTable {
  double L;
  std::array<double, kWeidemanN> c;
  WeidemanTable() {
    const int M = 2 * kWeidemanN, M2 = 2 * M;
    L = std::sqrt(kWeidemanN / std::sqrt(2.0));
    std::vector<double> v(M2, 0.0);
    for (int m = 1; m < M2; ++m) {
      double theta = (m - M) * kPi / M;
      double t = L * std::tan(0.5 * theta);
      v[m] = std::exp(-t * t) * (L * L + t * t);
    }
    std::vector<double> g(M2);
    for (int i = 0; i < M2; ++i) g[i] = v[(i + M) % M2];
    for (int j = 1; j <= kWeidemanN; ++j) {
      double s = 0.0;
      for (int m = 0; m < M2; ++m)
        s += g[m] * std::cos(2.0 * kPi * j * m / M2);
      c[j - 1] = s / M2;
    }
  }
};

Complex w_weideman(Complex z) {
  static const WeidemanTable tab;
  Complex iz(-z.imag(), z.real());
  Complex d = tab.L - iz;
  Complex Z = (tab.L + iz) / d;
  Complex p(tab.c[kWeidemanN - 1], 0.0);
  for (int k = kWeidemanN - 2; k >= 0; --k) p = p * Z + tab.c[k];
  return 2.0 * p / (d * d) + kInvSqrtPi / d;
}

}  // namespace

Complex faddeeva_w(Complex z) {
  if (!(z.imag() >= -1e-12))
    throw DomainError("faddeeva_w: argument must be in the upper half plane");
  double az = std::abs(z);
  if (az <= 2.5) return w_series(z);
  if (az < 7.0) return w_weideman(z);
  return w_lentz(z);
}

Complex LogPolar::value() const {
  return std::exp(log_abs) * Complex(std::cos(arg), std::sin(arg));
}

LogPolar erfc_c_log(Complex zeta) {
  if (zeta.real() >= 0.0) {
    // erfc(zeta) = e^{-zeta^2} w(i zeta), and i*zeta lies in the upper half
    // plane here, where w is bounded. The exponential is kept in log space.
    Complex w = faddeeva_w(Complex(-zeta.imag(), zeta.real()));
    Complex m2 = -zeta * zeta;
    return {m2.real() + std::log(std::abs(w)), m2.imag() + std::arg(w)};
  }
  LogPolar x = erfc_c_log(-zeta);
  if (x.log_abs <= 40.0) {
    Complex r = 2.0 - x.value();
    return {std::log(std::abs(r)), std::arg(r)};
  }
  // erfc(-zeta) is huge: 2 - V = -V (1 - 2/V) with |2/V| tiny.
  Complex inv2 =
      2.0 * std::exp(-x.log_abs) * Complex(std::cos(-x.arg), std::sin(-x.arg));
  Complex f = 1.0 - inv2;
  return {x.log_abs + std::log(std::abs(f)), x.arg + kPi + std::arg(f)};
}

Complex erfc_c(Complex zeta) {
  if (zeta.real() >= 0.0) {
    Complex w = faddeeva_w(Complex(-zeta.imag(), zeta.real()));
    Complex m2 = -zeta * zeta;
    if (m2.real() < 700.0) return std::exp(m2) * w;
    LogPolar lp{m2.real() + std::log(std::abs(w)), m2.imag() + std::arg(w)};
    return lp.value();  // overflows to inf deliberately
  }
  return 2.0 - erfc_c(-zeta);
}

}  // namespace rnm
