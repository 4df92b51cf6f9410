#pragma once

#include "rnm/potential.hpp"
#include "rnm/types.hpp"

namespace rnm {

// The compact set where the eigenvalues accumulate, restricted to the two
// families with closed-form exterior conformal maps: centered discs and
// centered axis-aligned ellipses.
class Droplet {
 public:
  enum class Shape { Disc, Ellipse };

  static Droplet disc(double radius);
  static Droplet ellipse(double a, double b);  // semi-axes, a >= b > 0

  Shape shape() const { return shape_; }
  double radius() const;          // Disc only
  double semi_major() const { return a_; }
  double semi_minor() const { return b_; }
  double in_radius() const { return b_; }

  // Exterior conformal map onto the exterior of the unit disc, normalized
  // with positive derivative at infinity. The same formula continues to the
  // interior, where |map| < 1, so |map| <-> 1 doubles as a membership test.
  Complex map_exterior(Complex z) const;
  Complex map_derivative(Complex z) const;
  Complex map_inverse(Complex zeta) const;
  double map_derivative_at_infinity() const;

  // Boundary parametrized by t in [0, 2pi).
  Complex boundary_point(double t) const;
  Complex boundary_tangent(double t) const;  // d/dt boundary_point
  Complex outward_normal(double t) const;
  double curvature(double t) const;
  double max_curvature() const;

  // Parameter of the boundary point nearest to z (damped Newton), and the
  // outward-signed distance to the boundary.
  double nearest_boundary_param(Complex z) const;
  double signed_distance(Complex z) const;
  bool contains(Complex z) const { return signed_distance(z) <= 0.0; }

 private:
  Droplet(Shape s, double a, double b) : shape_(s), a_(a), b_(b) {}
  Shape shape_;
  double a_, b_;  // disc stores a_ = b_ = R
};

// Droplet of a supported potential: solves r q'(r) = 2 for radial families,
// closed form for the elliptic family.
Droplet droplet_of(const Potential& P);

// Quadrature of the equilibrium density over the droplet; must return 1.
double equilibrium_mass(const Potential& P, const Droplet& D);

}  // namespace rnm
