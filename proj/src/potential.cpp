#include "rnm/potential.hpp"

#include <cmath>
#include <sstream>

namespace rnm {

double Potential::radial_value(double) const {
  throw UnsupportedError(name() + ": no radial profile");
}

double Potential::radial_derivative(double) const {
  throw UnsupportedError(name() + ": no radial profile");
}

Complex Potential::polarization(Complex, Complex) const {
  throw UnsupportedError(name() + ": no polarization");
}

Complex Potential::polarization_dzdw(Complex, Complex) const {
  throw UnsupportedError(name() + ": no polarization");
}

Complex Potential::polarization_dzdw_log(Complex, Complex) const {
  throw UnsupportedError(name() + ": no polarization");
}

EllipticGinibre::EllipticGinibre(double tau) : tau_(tau) {
  if (!(std::abs(tau) < 1.0))
    throw DomainError("elliptic: need |tau| < 1");
}

std::string EllipticGinibre::name() const {
  std::ostringstream os;
  os << "elliptic(tau=" << tau_ << ")";
  return os.str();
}

double EllipticGinibre::radial_value(double r) const {
  if (tau_ != 0.0) throw UnsupportedError("elliptic: not radial for tau != 0");
  return r * r;
}

double EllipticGinibre::radial_derivative(double r) const {
  if (tau_ != 0.0) throw UnsupportedError("elliptic: not radial for tau != 0");
  return 2.0 * r;
}

RadialPower::RadialPower(double p, double c) : p_(p), c_(c) {
  if (!(p >= 1.0)) throw DomainError("radial_power: need p >= 1");
  if (!(c > 0.0)) throw DomainError("radial_power: need c > 0");
}

std::string RadialPower::name() const {
  std::ostringstream os;
  os << "radial_power(p=" << p_ << ",c=" << c_ << ")";
  return os.str();
}

bool RadialPower::has_polarization() const {
  return p_ == std::floor(p_);  // c (z wbar)^p is analytic only for integer p
}

Complex RadialPower::polarization(Complex z, Complex wbar) const {
  if (!has_polarization())
    throw UnsupportedError("radial_power: polarization needs integer p");
  return c_ * std::pow(z * wbar, p_);
}

Complex RadialPower::polarization_dzdw(Complex z, Complex wbar) const {
  if (!has_polarization())
    throw UnsupportedError("radial_power: polarization needs integer p");
  return c_ * p_ * p_ * std::pow(z * wbar, p_ - 1.0);
}

Complex RadialPower::polarization_dzdw_log(Complex z, Complex wbar) const {
  if (!has_polarization())
    throw UnsupportedError("radial_power: polarization needs integer p");
  // log B0 = const + (p-1)(log z + log wbar), so the mixed derivative is 0.
  (void)z;
  (void)wbar;
  return 0.0;
}

RadialTable::RadialTable(std::vector<double> r, std::vector<double> q)
    : r_(std::move(r)), q_(std::move(q)) {
  const int k = static_cast<int>(r_.size());
  if (k < 3 || q_.size() != r_.size())
    throw DomainError("radial_table: need >= 3 matching knots");
  if (r_.front() != 0.0)
    throw DomainError("radial_table: first knot must be r = 0");
  for (int i = 0; i + 1 < k; ++i)
    if (!(r_[i] < r_[i + 1]))
      throw DomainError("radial_table: knots must increase");

  // Natural cubic spline: tridiagonal solve for second derivatives.
  m_.assign(k, 0.0);
  std::vector<double> a(k, 0.0), b(k, 0.0), c(k, 0.0), d(k, 0.0);
  b[0] = b[k - 1] = 1.0;
  for (int i = 1; i + 1 < k; ++i) {
    const double hl = r_[i] - r_[i - 1], hr = r_[i + 1] - r_[i];
    a[i] = hl;
    b[i] = 2.0 * (hl + hr);
    c[i] = hr;
    d[i] = 6.0 * ((q_[i + 1] - q_[i]) / hr - (q_[i] - q_[i - 1]) / hl);
  }
  for (int i = 1; i < k; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  m_[k - 1] = d[k - 1] / b[k - 1];
  for (int i = k - 2; i >= 0; --i) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
}

int RadialTable::segment(double r) const {
  int lo = 0, hi = static_cast<int>(r_.size()) - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (r_[mid] <= r ? lo : hi) = mid;
  }
  return lo;
}

double RadialTable::radial_value(double r) const {
  const int k = static_cast<int>(r_.size());
  if (r >= r_[k - 1]) {
    // Linear continuation keeps growth super-logarithmic.
    return q_[k - 1] + radial_derivative(r_[k - 1]) * (r - r_[k - 1]);
  }
  const int i = segment(r);
  const double h = r_[i + 1] - r_[i];
  const double t = (r_[i + 1] - r) / h, u = (r - r_[i]) / h;
  return t * q_[i] + u * q_[i + 1] +
         ((t * t * t - t) * m_[i] + (u * u * u - u) * m_[i + 1]) * h * h / 6.0;
}

double RadialTable::radial_derivative(double r) const {
  const int k = static_cast<int>(r_.size());
  if (r >= r_[k - 1]) r = r_[k - 1] - 1e-12 * (r_[k - 1] - r_[0]);
  const int i = segment(r);
  const double h = r_[i + 1] - r_[i];
  const double t = (r_[i + 1] - r) / h, u = (r - r_[i]) / h;
  return (q_[i + 1] - q_[i]) / h +
         ((3.0 * u * u - 1.0) * m_[i + 1] - (3.0 * t * t - 1.0) * m_[i]) * h /
             6.0;
}

double RadialTable::radial_second_derivative(double r) const {
  const int k = static_cast<int>(r_.size());
  if (r >= r_[k - 1]) return 0.0;
  const int i = segment(r);
  const double h = r_[i + 1] - r_[i];
  const double t = (r_[i + 1] - r) / h, u = (r - r_[i]) / h;
  return t * m_[i] + u * m_[i + 1];
}

double RadialTable::quarter_laplacian(Complex z) const {
  const double r = std::abs(z);
  if (r < r_[1] * 0.5) {
    // At the axis Q'' + Q'/r degenerates; use the symmetric limit 2 Q''(0)/4.
    return 0.5 * radial_second_derivative(0.0);
  }
  return 0.25 * (radial_second_derivative(r) + radial_derivative(r) / r);
}

double quarter_laplacian_check(const Potential& P, Complex z, double h) {
  if (!(h >= 1e-6 && h <= 1e-3))
    throw DomainError("quarter_laplacian_check: h outside [1e-6, 1e-3]");
  const Complex dx(h, 0.0), dy(0.0, h);
  const double v[5] = {P.value(z + dx), P.value(z - dx), P.value(z + dy),
                       P.value(z - dy), P.value(z)};
  for (double x : v)
    if (!std::isfinite(x))
      throw DomainError("quarter_laplacian_check: non-finite Q");
  return 0.25 * (v[0] + v[1] + v[2] + v[3] - 4.0 * v[4]) / (h * h);
}

void validate(const Potential& P, double droplet_scale) {
  // Growth: Q must outpace log|z|^2 at large radii, otherwise the ensemble
  // normalization diverges.
  for (double r : {1e3, 1e6}) {
    const double ratio = P.value(Complex(r, 0.0)) / std::log(r * r);
    if (!(ratio > 1.1))
      throw HypothesisError(P.name() + ": insufficient growth at |z|=" +
                            std::to_string(r));
  }
  // Positive curvature of the field on a droplet-scale probe set.
  for (int i = 0; i < 16; ++i) {
    const double t = 2.0 * M_PI * i / 16.0;
    for (double s : {0.25, 0.6, 0.95}) {
      const Complex z = s * droplet_scale * Complex(std::cos(t), std::sin(t));
      if (!(P.quarter_laplacian(z) > 0.0))
        throw HypothesisError(P.name() + ": quarter Laplacian <= 0");
    }
  }
  if (P.has_polarization()) {
    for (int i = 0; i < 12; ++i) {
      const Complex z = droplet_scale *
                        Complex(std::cos(0.9 * i), std::sin(1.7 * i + 0.3)) *
                        (0.2 + 0.07 * i);
      const Complex d = P.polarization(z, std::conj(z)) - P.value(z);
      if (std::abs(d) > 1e-12 * (1.0 + std::abs(P.value(z))))
        throw HypothesisError(P.name() + ": polarization mismatch on diagonal");
    }
  }
}

}  // namespace rnm
