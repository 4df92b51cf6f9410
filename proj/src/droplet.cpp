#include "rnm/droplet.hpp"

#include <algorithm>
#include <cmath>

#include "rnm/quadrature.hpp"

namespace rnm {

Droplet Droplet::disc(double radius) {
  if (!(radius > 0.0)) throw DomainError("droplet: radius must be positive");
  return Droplet(Shape::Disc, radius, radius);
}

Droplet Droplet::ellipse(double a, double b) {
  if (!(a >= b && b > 0.0))
    throw DomainError("droplet: need semi-axes a >= b > 0");
  return Droplet(Shape::Ellipse, a, b);
}

double Droplet::radius() const {
  if (shape_ != Shape::Disc) throw UnsupportedError("droplet: not a disc");
  return a_;
}

namespace {

// sqrt(z^2 - c2) with the branch that behaves like z at infinity. Writing it
// as z sqrt(1 - c2/z^2) keeps the principal cut confined to the focal
// segment, which the exterior and the boundary never touch.
Complex focal_sqrt(Complex z, double c2) {
  if (std::abs(z) < 1e-300) return Complex(0.0, std::sqrt(c2));
  return z * std::sqrt(1.0 - c2 / (z * z));
}

}  // namespace

Complex Droplet::map_exterior(Complex z) const {
  if (shape_ == Shape::Disc) return z / a_;
  const double c2 = a_ * a_ - b_ * b_;
  return (z + focal_sqrt(z, c2)) / (a_ + b_);
}

Complex Droplet::map_derivative(Complex z) const {
  if (shape_ == Shape::Disc) return 1.0 / a_;
  const double c2 = a_ * a_ - b_ * b_;
  const Complex s = focal_sqrt(z, c2);
  if (std::abs(s) < 1e-12 * a_)
    throw PoleError("droplet: map derivative at a focal point");
  return map_exterior(z) / s;
}

Complex Droplet::map_inverse(Complex zeta) const {
  if (shape_ == Shape::Disc) return a_ * zeta;
  return 0.5 * ((a_ + b_) * zeta + (a_ - b_) / zeta);
}

double Droplet::map_derivative_at_infinity() const {
  return shape_ == Shape::Disc ? 1.0 / a_ : 2.0 / (a_ + b_);
}

Complex Droplet::boundary_point(double t) const {
  return Complex(a_ * std::cos(t), b_ * std::sin(t));
}

Complex Droplet::boundary_tangent(double t) const {
  return Complex(-a_ * std::sin(t), b_ * std::cos(t));
}

Complex Droplet::outward_normal(double t) const {
  const Complex n(b_ * std::cos(t), a_ * std::sin(t));
  return n / std::abs(n);
}

double Droplet::curvature(double t) const {
  const double s2 = a_ * a_ * std::sin(t) * std::sin(t) +
                    b_ * b_ * std::cos(t) * std::cos(t);
  return a_ * b_ / (s2 * std::sqrt(s2));
}

double Droplet::max_curvature() const { return a_ / (b_ * b_); }

double Droplet::nearest_boundary_param(Complex z) const {
  if (shape_ == Shape::Disc || std::abs(z) < 1e-300)
    return std::atan2(z.imag(), z.real());

  // Distance is stationary where (z - p(t)) . p'(t) = 0.
  auto g = [&](double t) {
    return ((z - boundary_point(t)) * std::conj(boundary_tangent(t))).real();
  };
  double t = std::atan2(a_ * z.imag(), b_ * z.real());
  for (int it = 0; it < 50; ++it) {
    const double h = 1e-6;
    const double gt = g(t);
    const double dg = (g(t + h) - g(t - h)) / (2.0 * h);
    if (std::abs(dg) < 1e-300) break;
    const double step = gt / dg;
    t -= std::clamp(step, -0.5, 0.5);
    if (std::abs(step) < 1e-13) break;
  }
  return t;
}

double Droplet::signed_distance(Complex z) const {
  if (shape_ == Shape::Disc) return std::abs(z) - a_;
  const double t = nearest_boundary_param(z);
  const Complex d = z - boundary_point(t);
  const double sign =
      (d * std::conj(outward_normal(t))).real() >= 0.0 ? 1.0 : -1.0;
  return sign * std::abs(d);
}

Droplet droplet_of(const Potential& P) {
  if (const auto* e = dynamic_cast<const EllipticGinibre*>(&P)) {
    const double tau = e->tau();
    if (tau == 0.0) return Droplet::disc(1.0);
    const double a = std::sqrt((1.0 + tau) / (1.0 - tau));
    return Droplet::ellipse(a, 1.0 / a);
  }
  if (!P.is_radial())
    throw UnsupportedError(P.name() + ": no droplet construction");

  // Unit equilibrium mass for a radial field: R q'(R) = 2.
  auto g = [&](double r) { return r * P.radial_derivative(r) - 2.0; };
  double lo = 1e-6, hi = 1e6;
  if (!(g(lo) < 0.0) || !(g(hi) > 0.0))
    throw UnsupportedError(P.name() + ": r q'(r) = 2 has no bracketed root");
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return Droplet::disc(0.5 * (lo + hi));
}

double equilibrium_mass(const Potential& P, const Droplet& D) {
  const auto& gl = gauss_legendre(32);
  const int n_ang = 64;
  KahanSum mass;
  // Stretched polar coordinates fill either shape exactly.
  const double a = D.semi_major(), b = D.semi_minor();
  for (int i = 0; i < gl.x.size(); ++i) {
    const double r = 0.5 * (gl.x[i] + 1.0);
    const double wr = 0.5 * gl.w[i];
    for (int k = 0; k < n_ang; ++k) {
      const double t = 2.0 * M_PI * (k + 0.5) / n_ang;
      const Complex z(a * r * std::cos(t), b * r * std::sin(t));
      mass.add(P.quarter_laplacian(z) * a * b * r * wr * (2.0 / n_ang));
    }
  }
  return mass.value();
}

}  // namespace rnm
