#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "rnm/geometry.hpp"
#include "rnm/types.hpp"

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("geometry") {

using rnm::Complex;
using rnm::Region;

TEST_CASE("region accessors and labels") {
  const Region d = Region::disc(Complex(0.1, -0.2), 0.3);
  CHECK(d.kind() == Region::Kind::Disc);
  CHECK(d.center() == Complex(0.1, -0.2));
  CHECK(d.radius() == 0.3);
  CHECK(d.label() == "disc(0.1,-0.2;r=0.3)");

  const Region p = Region::polygon(
      {Complex(0, 0), Complex(1, 0), Complex(1, 1), Complex(0, 1)});
  CHECK(p.kind() == Region::Kind::Polygon);
  CHECK(p.vertices().size() == 4);
  CHECK(p.label() == "polygon[4]");

  const Region dil = Region::droplet_dilation(-0.5);
  CHECK(dil.kind() == Region::Kind::DropletDilation);
  CHECK(dil.delta() == -0.5);
  CHECK(dil.label() == "dilation(delta=-0.5)");
}

TEST_CASE("membership tests") {
  const Region d = Region::disc(Complex(0.5, 0.0), 0.25);
  CHECK(d.contains(Complex(0.5, 0.1)));
  CHECK(d.contains(Complex(0.75, 0.0)));  // boundary counts as inside
  CHECK_FALSE(d.contains(Complex(0.0, 0.0)));

  const Region p = Region::polygon(
      {Complex(0, 0), Complex(1, 0), Complex(1, 1), Complex(0, 1)});
  CHECK(p.contains(Complex(0.5, 0.5)));
  CHECK(p.contains(Complex(0.99, 0.01)));
  CHECK_FALSE(p.contains(Complex(1.5, 0.5)));
  CHECK_FALSE(p.contains(Complex(-0.01, 0.5)));

  CHECK_THROWS_AS(Region::droplet_dilation(0.2).contains(Complex(0, 0)),
                  rnm::UnsupportedError);
}

TEST_CASE("degenerate regions are rejected") {
  CHECK_THROWS_AS(Region::disc(Complex(0, 0), 0.0), rnm::DomainError);
  CHECK_THROWS_AS(Region::disc(Complex(0, 0), -1.0), rnm::DomainError);
  CHECK_THROWS_AS(Region::polygon({Complex(0, 0), Complex(1, 0)}),
                  rnm::DomainError);
  // Clockwise winding.
  CHECK_THROWS_AS(Region::polygon({Complex(0, 0), Complex(0, 1), Complex(1, 1),
                                   Complex(1, 0)}),
                  rnm::DomainError);
  // Bowtie.
  CHECK_THROWS_AS(Region::polygon({Complex(0, 0), Complex(1, 1), Complex(1, 0),
                                   Complex(0, 1)}),
                  rnm::DomainError);
}

TEST_CASE("boundary rules integrate arc length exactly") {
  const Region d = Region::disc(Complex(0.2, 0.1), 0.7);
  double len = 0.0;
  for (const auto& s : rnm::boundary_samples(d)) {
    len += s.weight;
    CHECK(std::abs(s.normal) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(s.point - Complex(0.2, 0.1)) ==
          doctest::Approx(0.7).epsilon(1e-14));
    // Normal points away from the center.
    CHECK((s.normal * std::conj(s.point - Complex(0.2, 0.1))).real() > 0.0);
  }
  CHECK(len == doctest::Approx(2.0 * kPi * 0.7).epsilon(1e-12));

  const Region sq = Region::polygon(
      {Complex(0, 0), Complex(0.8, 0), Complex(0.8, 0.8), Complex(0, 0.8)});
  len = 0.0;
  const Complex centroid(0.4, 0.4);
  for (const auto& s : rnm::boundary_samples(sq)) {
    len += s.weight;
    CHECK(std::abs(s.normal) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((s.normal * std::conj(s.point - centroid)).real() > 0.0);
  }
  CHECK(len == doctest::Approx(4 * 0.8).epsilon(1e-12));

  CHECK(rnm::perimeter(d) == doctest::Approx(2.0 * kPi * 0.7).epsilon(1e-12));
  CHECK(rnm::perimeter(sq) == doctest::Approx(3.2).epsilon(1e-12));
  CHECK_THROWS_AS(rnm::boundary_samples(Region::droplet_dilation(0.1)),
                  rnm::UnsupportedError);
}

TEST_CASE("curvature-weighted perimeter") {
  // Unit quarter Laplacian: the weighted perimeter is the plain one.
  const rnm::Ginibre gin;
  const Region d = Region::disc(Complex(0.3, 0.0), 0.45);
  CHECK(rnm::weighted_perimeter(d, gin) ==
        doctest::Approx(2.0 * kPi * 0.45).epsilon(1e-9));

  // Quartic field: sqrt(dQ) = 2r on a centered circle of radius a gives
  // 2a * 2 pi a.
  const rnm::RadialPower quartic(2.0, 1.0);
  const Region c = Region::disc(Complex(0, 0), 0.4);
  CHECK(rnm::weighted_perimeter(c, quartic) ==
        doctest::Approx(4.0 * kPi * 0.16).epsilon(1e-8));

  const Region sq = Region::polygon(
      {Complex(-0.2, -0.2), Complex(0.2, -0.2), Complex(0.2, 0.2),
       Complex(-0.2, 0.2)});
  CHECK(rnm::weighted_perimeter(sq, gin) ==
        doctest::Approx(1.6).epsilon(1e-9));
}

TEST_CASE("droplet dilation resolves discs exactly") {
  const rnm::Ginibre gin;
  const rnm::Droplet D = rnm::droplet_of(gin);
  const int n = 50;
  // Offset = delta / sqrt(2 n dQ) = delta / 10.
  const Region grown = rnm::dilated_droplet(D, gin, 1.0, n);
  REQUIRE(grown.kind() == Region::Kind::Disc);
  CHECK(grown.radius() == doctest::Approx(1.1).epsilon(1e-14));
  const Region shrunk = rnm::dilated_droplet(D, gin, -1.0, n);
  CHECK(shrunk.radius() == doctest::Approx(0.9).epsilon(1e-14));
  const Region same = rnm::dilated_droplet(D, gin, 0.0, n);
  CHECK(same.radius() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(rnm::dilated_droplet(D, gin, -20.0, 4), rnm::DomainError);
}

TEST_CASE("droplet dilation resolves ellipses to offset polygons") {
  const rnm::EllipticGinibre ell(0.5);
  const rnm::Droplet D = rnm::droplet_of(ell);
  const int n = 100;
  const double offset = 1.0 / std::sqrt(2.0 * n);  // dQ = 1 everywhere
  for (double delta : {1.0, -1.0}) {
    const Region r = rnm::dilated_droplet(D, ell, delta, n);
    REQUIRE(r.kind() == Region::Kind::Polygon);
    CHECK(r.vertices().size() >= 64);
    for (size_t i = 0; i < r.vertices().size(); i += 127) {
      CHECK(D.signed_distance(r.vertices()[i]) ==
            doctest::Approx(delta * offset).epsilon(1e-6));
    }
    CHECK(r.contains(Complex(0.0, 0.0)));
  }
}

TEST_CASE("normal-coordinate area element") {
  const rnm::Ginibre gin;
  const rnm::Droplet D = rnm::droplet_of(gin);
  const int n = 100;
  const double s = std::sqrt(2.0 * n);  // dQ = 1
  CHECK(rnm::jacobian_h(D, gin, Complex(1.0, 0.0), 0.0, n) ==
        doctest::Approx(1.0 / s).epsilon(1e-12));
  // Curvature 1 shrinks the element on the inward side of the chart.
  CHECK(rnm::jacobian_h(D, gin, Complex(0.0, 1.0), 1.0, n) ==
        doctest::Approx((1.0 / s) * (1.0 - 1.0 / s)).epsilon(1e-12));
  CHECK_THROWS_AS(rnm::jacobian_h(D, gin, Complex(0.9, 0.0), 0.0, n),
                  rnm::DomainError);
}

}  // TEST_SUITE
