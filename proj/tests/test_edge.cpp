#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "doctest.h"
#include "oracle_tables.hpp"
#include "rnm/edge.hpp"
#include "rnm/orthopoly.hpp"
#include "rnm/types.hpp"

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("edge") {

using rnm::Complex;

TEST_CASE("interpolation profile matches the reference table") {
  for (const auto& row : oracle::kFDelta) {
    CHECK(rnm::f_delta(row.delta) ==
          doctest::Approx(row.f).epsilon(1e-11).scale(1e-11));
  }
  CHECK(rnm::f_delta(0.0) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("interpolation profile reflects and decays") {
  for (double d : {0.17, 0.9, 1.3, 2.6, 5.0}) {
    CHECK(rnm::f_delta(d) + rnm::f_delta(-d) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  double prev = 1.0;
  for (double d : {-3.0, -1.0, 0.0, 1.0, 3.0, 6.0}) {
    const double f = rnm::f_delta(d);
    CHECK(f < prev);
    CHECK(f >= 0.0);
    prev = f;
  }
}

TEST_CASE("Gaussian-erfc integral agrees with its closed form") {
  for (auto [xi, eta] : std::vector<std::pair<double, double>>{
           {-2.0, -2.0}, {-1.0, 0.0}, {0.0, 0.0}, {0.5, -0.3}, {2.0, 2.0}}) {
    const auto [numeric, closed] = rnm::gauss_erfc_identity(xi, eta);
    CHECK(numeric ==
          doctest::Approx(closed).epsilon(1e-8).scale(1e-8));
  }
}

TEST_CASE("edge frame collects boundary data") {
  const rnm::Ginibre gin;
  const rnm::Droplet D = rnm::droplet_of(gin);
  const Complex z0(1.0, 0.0);
  const Complex w0 = std::polar(1.0, 0.3);
  const rnm::EdgeFrame F = rnm::make_edge_frame(D, gin, z0, w0);
  CHECK(std::abs(F.normal_z0 - z0) < 1e-12);
  CHECK(std::abs(F.normal_w0 - w0) < 1e-12);
  CHECK(F.dq_z0 == doctest::Approx(1.0));
  CHECK(F.dq_w0 == doctest::Approx(1.0));
  CHECK(std::abs(F.phi_z0 - z0) < 1e-12);
  CHECK(std::abs(F.dphi_z0 - 1.0) < 1e-12);
  // The boundary log is purely imaginary: the angle between the points.
  CHECK(std::abs(F.L.real()) < 1e-13);
  CHECK(F.L.imag() == doctest::Approx(-0.3).epsilon(1e-13));

  CHECK_THROWS_AS(rnm::make_edge_frame(D, gin, Complex(0.5, 0.0), w0),
                  rnm::DomainError);
}

TEST_CASE("probe points step along normal and tangent") {
  const rnm::Ginibre gin;
  const rnm::Droplet D = rnm::droplet_of(gin);
  const Complex z0(1.0, 0.0);
  const rnm::EdgeFrame F = rnm::make_edge_frame(D, gin, z0, z0);
  const int n = 25;  // unit dQ: probe scale is 1/5
  CHECK(std::abs(rnm::edge_probe_z(F, Complex(0.7, 0.0), n) -
                 Complex(1.14, 0.0)) < 1e-14);
  CHECK(std::abs(rnm::edge_probe_w(F, Complex(0.0, 1.0), n) -
                 Complex(1.0, 0.2)) < 1e-14);
}

TEST_CASE("coincident-point prediction has the erfc profile") {
  const rnm::Ginibre gin;
  const rnm::Droplet D = rnm::droplet_of(gin);
  const Complex z0(1.0, 0.0);
  const rnm::EdgeFrame F = rnm::make_edge_frame(D, gin, z0, z0);
  const int n = 100;
  CHECK(rnm::edge_kernel_modulus_prediction(F, 0.0, 0.0, n) ==
        doctest::Approx(0.5).epsilon(1e-13));
  for (double xi : {-0.8, 0.0, 0.6}) {
    for (double eta : {-0.5, 0.3, 1.1}) {
      const double direct = 0.5 *
                            std::exp(-0.5 * (xi - eta) * (xi - eta)) *
                            std::erfc((xi + eta) / std::sqrt(2.0));
      const double pred = rnm::edge_kernel_modulus_prediction(
          F, Complex(xi, 0.0), Complex(eta, 0.0), n);
      CHECK(pred == doctest::Approx(direct).epsilon(1e-12));
      // Swapping the offsets is symmetric up to the rounding of the exterior
      // map, which leaves a ~1e-13 tangential residue in the frame.
      CHECK(pred ==
            doctest::Approx(rnm::edge_kernel_modulus_prediction(
                                F, Complex(eta, 0.0), Complex(xi, 0.0), n))
                .epsilon(1e-9));
    }
  }
  // Antipodal points leave the log branch undetermined.
  const rnm::EdgeFrame bad =
      rnm::make_edge_frame(D, gin, z0, Complex(-1.0, 0.0));
  CHECK_THROWS_AS(rnm::edge_kernel_modulus_prediction(bad, 0.0, 0.0, 100),
                  rnm::DomainError);
}

TEST_CASE("prediction tracks the finite-n kernel at the boundary") {
  const rnm::Ginibre gin;
  const rnm::Droplet D = rnm::droplet_of(gin);
  const int n = 200;
  const rnm::Kernel K(rnm::build_radial(gin, n));
  const Complex z0(1.0, 0.0);
  const rnm::EdgeFrame F = rnm::make_edge_frame(D, gin, z0, z0);
  for (double xi : {0.0, 0.5, -0.5}) {
    for (double eta : {0.0, 0.5}) {
      const Complex z = rnm::edge_probe_z(F, xi, n);
      const Complex w = rnm::edge_probe_w(F, eta, n);
      const double exact = std::abs(K.eval(z, w)) / n;
      const double pred = rnm::edge_kernel_modulus_prediction(F, xi, eta, n);
      CHECK(exact / pred > 0.9);
      CHECK(exact / pred < 1.1);
    }
  }
}

TEST_CASE("exterior Hardy kernel: closed form, symmetry, pole") {
  const rnm::Droplet D = rnm::Droplet::disc(1.0);
  const Complex z(1.3, 0.0);
  const Complex w = 1.1 * std::polar(1.0, 0.3);
  const Complex direct = 1.0 / (2.0 * kPi * (z * std::conj(w) - 1.0));
  CHECK(std::abs(rnm::szego(D, z, w) - direct) < 1e-13);
  CHECK(std::abs(rnm::szego(D, z, w) - std::conj(rnm::szego(D, w, z))) <
        1e-14);

  const Complex b = std::polar(1.0, 0.4);
  CHECK_THROWS_AS(rnm::szego(D, b, b), rnm::PoleError);

  const rnm::Droplet E = rnm::Droplet::ellipse(1.4, 0.6);
  const Complex p = E.boundary_point(0.2), q = E.boundary_point(2.1);
  CHECK(std::abs(rnm::szego(E, p, q) - std::conj(rnm::szego(E, q, p))) <
        1e-13);
}

TEST_CASE("fitted envelope dominates the kernel on the boundary") {
  const rnm::Ginibre gin;
  const rnm::Droplet D = rnm::droplet_of(gin);
  const int n = 100;
  const rnm::Kernel K(rnm::build_radial(gin, n));
  const double C = rnm::fit_envelope_constant(K, D, 12);
  CHECK(C > 0.0);
  const int m = 10;
  for (int i = 0; i < m; ++i) {
    const Complex z = D.boundary_point(2.0 * kPi * (i + 0.37) / m);
    for (int j = 0; j < m; ++j) {
      const Complex w = D.boundary_point(2.0 * kPi * (j + 0.82) / m);
      const double s = std::abs(rnm::szego(D, z, w));
      CHECK(std::abs(K.eval(z, w)) / std::sqrt(double(n)) <= C * s);
    }
  }
  // The bound is the Hardy factor at the probes times the Gaussian falloff.
  const rnm::EdgeFrame F =
      rnm::make_edge_frame(D, gin, Complex(1.0, 0.0), std::polar(1.0, 0.5));
  const Complex xi(0.4, 0.0), eta(-0.3, 0.0);
  const double direct =
      C *
      std::abs(rnm::szego(D, rnm::edge_probe_z(F, xi, n),
                          rnm::edge_probe_w(F, eta, n))) *
      std::exp(-0.16 - 0.09);
  CHECK(rnm::edge_kernel_bound(F, D, xi, eta, n, C) ==
        doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("boundary charge integrals of the stock families") {
  const rnm::Ginibre gin;
  CHECK(rnm::harmonic_measure_integral(rnm::droplet_of(gin), gin) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-9));

  const rnm::EllipticGinibre ell(0.5);
  CHECK(rnm::harmonic_measure_integral(rnm::droplet_of(ell), ell) ==
        doctest::Approx(2.0 * kPi).epsilon(1e-8));

  // Quartic field: sqrt(dQ) |phi'| = 2r / R on the circle r = R, so the
  // integral is 4 pi R.
  const rnm::RadialPower quartic(2.0, 1.0);
  const double R = std::pow(2.0, -0.25);
  CHECK(rnm::harmonic_measure_integral(rnm::droplet_of(quartic), quartic) ==
        doctest::Approx(4.0 * kPi * R).epsilon(1e-7));
}

}  // TEST_SUITE
