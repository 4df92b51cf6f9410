#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "rnm/quadrature.hpp"
#include "rnm/types.hpp"

using rnm::Complex;

namespace {

double monomial_integral(int k) {
  // int_{-1}^{1} x^k dx
  return (k % 2 == 0) ? 2.0 / (k + 1.0) : 0.0;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("gauss_legendre integrates polynomials to degree 2m-1") {
  for (int m : {1, 2, 3, 5, 8, 16, 32, 64}) {
    const auto& rule = rnm::gauss_legendre(m);
    REQUIRE(rule.x.size() == m);
    REQUIRE(rule.w.size() == m);
    for (int k = 0; k <= 2 * m - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += rule.w[i] * std::pow(rule.x[i], k);
      CHECK(std::abs(s - monomial_integral(k)) < 1e-13);
    }
    // Degree 2m must NOT be exact (sanity that the order is what it claims).
    // The defect shrinks like 4^-m, so only small orders can resolve it.
    if (m <= 16) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += rule.w[i] * std::pow(rule.x[i], 2 * m);
      CHECK(std::abs(s - monomial_integral(2 * m)) > 1e-12);
    }
  }
}

TEST_CASE("gauss_legendre nodes are symmetric with positive weights") {
  for (int m : {7, 20, 101}) {
    const auto& rule = rnm::gauss_legendre(m);
    double wsum = 0.0;
    for (int i = 0; i < m; ++i) {
      CHECK(rule.w[i] > 0.0);
      CHECK(rule.x[i] == doctest::Approx(-rule.x[m - 1 - i]).scale(1e-15));
      CHECK(rule.w[i] == doctest::Approx(rule.w[m - 1 - i]).epsilon(1e-14));
      wsum += rule.w[i];
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 0; i + 1 < m; ++i) CHECK(rule.x[i] < rule.x[i + 1]);
  }
}

TEST_CASE("gauss_legendre cache returns the same object") {
  const auto& a = rnm::gauss_legendre(24);
  const auto& b = rnm::gauss_legendre(24);
  CHECK(&a == &b);
}

TEST_CASE("composite_gauss matches analytic integrals") {
  const std::vector<double> edges{0.0, 0.7, 1.3, 2.5, 3.0};
  auto rule = rnm::composite_gauss(edges, 12);
  REQUIRE(rule.x.size() == rule.w.size());
  REQUIRE(rule.edges == edges);

  double se = 0.0, sc = 0.0;
  for (size_t i = 0; i < rule.x.size(); ++i) {
    se += rule.w[i] * std::exp(rule.x[i]);
    sc += rule.w[i] * std::cos(7.0 * rule.x[i]);
  }
  CHECK(se == doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-14));
  CHECK(std::abs(sc - std::sin(21.0) / 7.0) < 1e-12);

  // Nodes stay inside their panels and in order.
  for (size_t i = 0; i + 1 < rule.x.size(); ++i)
    CHECK(rule.x[i] < rule.x[i + 1]);
  CHECK(rule.x.front() > edges.front());
  CHECK(rule.x.back() < edges.back());
}

TEST_CASE("graded_edges covers the interval and refines near foci") {
  const double a = 0.0, b = 10.0, fine = 0.01, coarse = 1.0;
  auto edges = rnm::graded_edges(a, b, {3.0, 7.5}, fine, coarse);

  REQUIRE(edges.size() >= 4);
  CHECK(edges.front() == a);
  CHECK(edges.back() == b);
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    CHECK(edges[i] < edges[i + 1]);
    CHECK(edges[i + 1] - edges[i] <= coarse * (1.0 + 1e-9));
  }

  // Both foci appear as edges.
  for (double f : {3.0, 7.5}) {
    bool found = false;
    for (double e : edges) found = found || std::abs(e - f) < 1e-12;
    CHECK(found);
  }

  // The panel touching a focus has near-minimal width.
  for (double f : {3.0, 7.5}) {
    double wmin = coarse;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
      if (std::abs(edges[i] - f) < 1e-12 || std::abs(edges[i + 1] - f) < 1e-12)
        wmin = std::min(wmin, edges[i + 1] - edges[i]);
    CHECK(wmin <= 2.0 * fine);
  }

  // Foci outside [a,b] just mean no refinement inside.
  auto flat = rnm::graded_edges(0.0, 1.0, {5.0}, 1e-3, 0.5);
  CHECK(flat.front() == 0.0);
  CHECK(flat.back() == 1.0);
  CHECK(flat.size() <= 5);
}

TEST_CASE("polar_grid: disc area, radial moments, angular exactness") {
  const double R = 1.3;
  auto radial = rnm::composite_gauss({0.0, 0.5 * R, R}, 16);
  const int n_angles = 24;
  auto grid = rnm::polar_grid(Complex(0.0, 0.0), radial, n_angles);

  // total area / pi = R^2
  CHECK(grid.total_weight() == doctest::Approx(R * R).epsilon(1e-13));

  // int |z|^2 dA/pi over disc = R^4 / 2
  double m2 = 0.0;
  for (const auto& q : grid.nodes) m2 += q.w * std::norm(q.z);
  CHECK(m2 == doctest::Approx(0.5 * std::pow(R, 4)).epsilon(1e-13));

  // Pure angular harmonics vanish exactly for 0 < m < n_angles.
  for (int m : {1, 2, 11, n_angles - 1}) {
    Complex s = 0.0;
    for (const auto& q : grid.nodes)
      s += q.w * std::exp(Complex(0.0, m * std::arg(q.z)));
    CHECK(std::abs(s) < 1e-13);
  }

  // Off-center grid still integrates area correctly.
  auto shifted = rnm::polar_grid(Complex(2.0, -1.0), radial, 8);
  CHECK(shifted.total_weight() == doctest::Approx(R * R).epsilon(1e-13));
  Complex centroid = 0.0;
  for (const auto& q : shifted.nodes) centroid += q.w * q.z;
  centroid /= shifted.total_weight();
  CHECK(std::abs(centroid - Complex(2.0, -1.0)) < 1e-12);
}

TEST_CASE("box_grid: area and separable moments") {
  auto grid = rnm::box_grid(0.0, 1.0, -0.5, 1.5, 12, 14);
  const double pi = 3.14159265358979323846;
  CHECK(grid.total_weight() == doctest::Approx(2.0 / pi).epsilon(1e-13));

  // int x^2 y^3 over [0,1]x[-0.5,1.5], divided by pi
  double s = 0.0;
  for (const auto& q : grid.nodes)
    s += q.w * q.z.real() * q.z.real() * std::pow(q.z.imag(), 3);
  const double exact =
      (1.0 / 3.0) * ((std::pow(1.5, 4) - std::pow(-0.5, 4)) / 4.0) / pi;
  CHECK(s == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("polygon_grid: square matches box moments") {
  std::vector<Complex> square{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  auto poly = rnm::polygon_grid(square, 0.2);
  auto box = rnm::box_grid(0.0, 1.0, 0.0, 1.0, 20, 20);

  CHECK(poly.total_weight() ==
        doctest::Approx(box.total_weight()).epsilon(1e-12));

  auto moment = [](const rnm::QuadratureGrid& g, int a, int b) {
    double s = 0.0;
    for (const auto& q : g.nodes)
      s += q.w * std::pow(q.z.real(), a) * std::pow(q.z.imag(), b);
    return s;
  };
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {2, 3}, {4, 4}})
    CHECK(moment(poly, a, b) == doctest::Approx(moment(box, a, b))
                                    .epsilon(1e-11));
}

TEST_CASE("polygon_grid: non-convex region and orientation invariance") {
  // L-shape, area 3.
  std::vector<Complex> ell{{0.0, 0.0}, {2.0, 0.0}, {2.0, 1.0},
                           {1.0, 1.0}, {1.0, 2.0}, {0.0, 2.0}};
  const double pi = 3.14159265358979323846;
  auto g = rnm::polygon_grid(ell, 0.3);
  CHECK(g.total_weight() == doctest::Approx(3.0 / pi).epsilon(1e-12));

  std::vector<Complex> rev(ell.rbegin(), ell.rend());
  auto gr = rnm::polygon_grid(rev, 0.3);
  CHECK(gr.total_weight() == doctest::Approx(3.0 / pi).epsilon(1e-12));

  // Every node lies inside the L (not in the removed quadrant).
  for (const auto& q : g.nodes) {
    const double x = q.z.real(), y = q.z.imag();
    CHECK(x > -1e-12);
    CHECK(y > -1e-12);
    CHECK(!(x > 1.0 + 1e-12 && y > 1.0 + 1e-12));
    CHECK(q.w > 0.0);
  }
}

TEST_CASE("polygon_grid: smooth integrand converges with refinement") {
  std::vector<Complex> tri{{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}};
  auto f = [](Complex z) { return std::exp(-std::norm(z)); };
  auto integrate = [&](double max_edge) {
    auto g = rnm::polygon_grid(tri, max_edge);
    double s = 0.0;
    for (const auto& q : g.nodes) s += q.w * f(q.z);
    return s;
  };
  const double coarse = integrate(0.5);
  const double fine = integrate(0.12);
  const double finer = integrate(0.06);
  CHECK(std::abs(fine - finer) < 1e-10);
  CHECK(std::abs(coarse - finer) < 1e-6);
}

TEST_CASE("polygon_grid rejects degenerate input") {
  std::vector<Complex> bowtie{{0.0, 0.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(rnm::polygon_grid(bowtie, 0.3), rnm::DomainError);
  std::vector<Complex> line{{0.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(rnm::polygon_grid(line, 0.3), rnm::DomainError);
}

TEST_CASE("compensated sums survive cancellation") {
  rnm::KahanSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);

  rnm::KahanSum t;
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) t.add(0.1);
  CHECK(t.value() == doctest::Approx(0.1 * reps).epsilon(1e-15));

  rnm::KahanSumC c;
  c.add({1.0, -1.0});
  c.add({1e80, 1e80});
  c.add({-1e80, -1e80});
  CHECK(c.value().real() == 1.0);
  CHECK(c.value().imag() == -1.0);
}

}  // TEST_SUITE
