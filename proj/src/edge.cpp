#include "rnm/edge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rnm/quadrature.hpp"

namespace rnm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

}  // namespace

EdgeFrame make_edge_frame(const Droplet& D, const Potential& P, Complex z0,
                          Complex w0) {
  EdgeFrame F;
  F.z0 = z0;
  F.w0 = w0;
  F.phi_z0 = D.map_exterior(z0);
  F.phi_w0 = D.map_exterior(w0);
  if (std::abs(std::abs(F.phi_z0) - 1.0) > 1e-10 ||
      std::abs(std::abs(F.phi_w0) - 1.0) > 1e-10)
    throw DomainError("edge frame: points must lie on the droplet boundary");
  F.normal_z0 = D.outward_normal(D.nearest_boundary_param(z0));
  F.normal_w0 = D.outward_normal(D.nearest_boundary_param(w0));
  F.dq_z0 = P.quarter_laplacian(z0);
  F.dq_w0 = P.quarter_laplacian(w0);
  if (!(F.dq_z0 > 0.0 && F.dq_w0 > 0.0))
    throw HypothesisError("edge frame: quarter Laplacian must be positive");
  F.dphi_z0 = D.map_derivative(z0);
  F.L = std::log(F.phi_z0 * std::conj(F.phi_w0));
  return F;
}

Complex edge_probe_z(const EdgeFrame& F, Complex xi, int n) {
  return F.z0 + xi * F.normal_z0 / std::sqrt(n * F.dq_z0);
}

Complex edge_probe_w(const EdgeFrame& F, Complex eta, int n) {
  return F.w0 + eta * F.normal_w0 / std::sqrt(n * F.dq_w0);
}

double edge_kernel_modulus_prediction(const EdgeFrame& F, Complex xi,
                                      Complex eta, int n) {
  const Complex prod = F.phi_z0 * std::conj(F.phi_w0);
  if (std::abs(std::arg(prod)) > kPi - 1e-9)
    throw DomainError(
        "edge prediction: antipodal boundary points make the log branch "
        "ambiguous");
  const Complex u = std::sqrt(n * F.dq_z0) * F.L / std::abs(F.dphi_z0);
  const LogPolar lp = erfc_c_log((xi + std::conj(eta) + u) / kSqrt2);
  const double log_pred =
      std::log(0.5) - 0.5 * std::norm(xi - eta + u) + lp.log_abs;
  return log_pred > -745.0 ? std::exp(log_pred) : 0.0;
}

Complex szego(const Droplet& D, Complex z, Complex w) {
  const Complex pz = D.map_exterior(z);
  const Complex pw = D.map_exterior(w);
  const Complex den = pz * std::conj(pw) - 1.0;
  if (std::abs(den) < 1e-12)
    throw PoleError("szego: phi(z) conj(phi(w)) = 1 is a pole");
  return std::sqrt(D.map_derivative(z)) *
         std::conj(std::sqrt(D.map_derivative(w))) / (2.0 * kPi * den);
}

double edge_kernel_bound(const EdgeFrame& F, const Droplet& D, Complex xi,
                         Complex eta, int n, double C_Q) {
  const Complex z = edge_probe_z(F, xi, n);
  const Complex w = edge_probe_w(F, eta, n);
  const double xr = xi.real(), er = eta.real();
  return C_Q * std::abs(szego(D, z, w)) * std::exp(-xr * xr - er * er);
}

double fit_envelope_constant(const Kernel& K, const Droplet& D,
                             int grid_size) {
  const int m = std::max(grid_size, 4);
  const double sqrt_n = std::sqrt(static_cast<double>(K.n()));
  double best = 0.0;
  for (int i = 0; i < m; ++i) {
    const Complex z = D.boundary_point(2.0 * kPi * (i + 0.13) / m);
    for (int j = 0; j < m; ++j) {
      const Complex w = D.boundary_point(2.0 * kPi * (j + 0.61) / m);
      const double s = std::abs(szego(D, z, w));
      if (!(s > 0.0)) continue;
      best = std::max(best, std::abs(K.eval(z, w)) / (sqrt_n * s));
    }
  }
  if (!(best > 0.0))
    throw NumericalError("envelope fit: kernel vanished on the probe grid");
  return 1.25 * best;
}

double f_delta(double delta) {
  if (delta < 0.0) return 1.0 - f_delta(-delta);
  // erfc(t) erfc(-t) < 4 e^{-t^2}; fourteen units past delta is exhaustive.
  std::vector<double> edges;
  for (double step : {0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 9.0, 14.0})
    edges.push_back(delta + step);
  const Rule1D rule = composite_gauss(edges, 24);
  KahanSum acc;
  for (size_t i = 0; i < rule.x.size(); ++i) {
    const double t = rule.x[i];
    acc.add(rule.w[i] * std::erfc(t) * std::erfc(-t));
  }
  return std::sqrt(2.0 * kPi) * acc.value() / 4.0;
}

std::pair<double, double> gauss_erfc_identity(double xi, double eta) {
  const double s = xi + eta;
  auto integrand = [s](double theta) {
    const LogPolar lp = erfc_c_log(Complex(s, theta) / kSqrt2);
    const double e = -theta * theta + 2.0 * lp.log_abs;
    return e > -745.0 ? std::exp(e) : 0.0;
  };
  // Even in theta. Main range, then the slow 1/theta^2 tail compactified by
  // theta = T/v, which the asymptotics make smooth in v on (0, 1].
  const double T = 16.0;
  const Rule1D main_rule = composite_gauss(
      {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 11.0, T}, 24);
  KahanSum acc;
  for (size_t i = 0; i < main_rule.x.size(); ++i)
    acc.add(main_rule.w[i] * integrand(main_rule.x[i]));
  const auto& gl = gauss_legendre(32);
  for (int i = 0; i < gl.x.size(); ++i) {
    const double v = 0.5 + 0.5 * gl.x[i];
    acc.add(0.5 * gl.w[i] * integrand(T / v) * T / (v * v));
  }
  const double numeric = 2.0 * acc.value();
  const double closed = 2.0 * std::sqrt(kPi) * std::erfc(s);
  return {numeric, closed};
}

double harmonic_measure_integral(const Droplet& D, const Potential& P) {
  const int m = 4096;
  KahanSum direct, pullback;
  for (int k = 0; k < m; ++k) {
    const double t = 2.0 * kPi * (k + 0.5) / m;
    const Complex p = D.boundary_point(t);
    const double dq = P.quarter_laplacian(p);
    if (!(dq > 0.0))
      throw HypothesisError(
          "harmonic measure: quarter Laplacian not positive on the boundary");
    direct.add(std::sqrt(dq) * std::abs(D.map_derivative(p)) *
               std::abs(D.boundary_tangent(t)) * 2.0 * kPi / m);
    const Complex q = D.map_inverse(Complex(std::cos(t), std::sin(t)));
    pullback.add(std::sqrt(P.quarter_laplacian(q)) * 2.0 * kPi / m);
  }
  const double a = direct.value(), b = pullback.value();
  if (std::abs(a - b) > 1e-8 * std::max(1.0, std::abs(a)))
    throw NumericalError(
        "harmonic measure: direct and pullback routes disagree");
  return a;
}

}  // namespace rnm
