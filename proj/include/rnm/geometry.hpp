#pragma once

#include <string>
#include <vector>

#include "rnm/droplet.hpp"
#include "rnm/potential.hpp"
#include "rnm/types.hpp"

namespace rnm {

// Counting regions. Discs and simple counterclockwise polygons are concrete;
// DropletDilation is a symbolic marker carrying only delta and must be
// resolved through dilated_droplet before any geometric query.
class Region {
 public:
  enum class Kind { Disc, Polygon, DropletDilation };

  static Region disc(Complex center, double radius);
  static Region polygon(std::vector<Complex> vertices);
  static Region droplet_dilation(double delta);

  Kind kind() const { return kind_; }
  Complex center() const { return center_; }
  double radius() const { return radius_; }
  const std::vector<Complex>& vertices() const { return vertices_; }
  double delta() const { return delta_; }

  bool contains(Complex z) const;
  std::string label() const;

 private:
  Region() = default;
  Kind kind_ = Kind::Disc;
  Complex center_;
  double radius_ = 0.0;
  std::vector<Complex> vertices_;
  double delta_ = 0.0;
};

// One boundary node of a line-integral rule: sum of weight * g(point)
// approximates the H^1 integral of g over the boundary.
struct BoundarySample {
  Complex point;
  Complex normal;  // outward unit normal
  double weight;
};

std::vector<BoundarySample> boundary_samples(const Region& A,
                                             int min_samples = 4096);

// H^1 length of the boundary.
double perimeter(const Region& A);

// Integral of sqrt(quarter Laplacian of Q) over the boundary, refined until
// stable to 1e-9 relative.
double weighted_perimeter(const Region& A, const Potential& P);

// The counting set whose boundary sits at signed offset delta/sqrt(2 n dQ)
// along the outward normal field of the droplet. Disc droplets resolve
// exactly to a disc; ellipses to a dense polygon of the offset curve.
Region dilated_droplet(const Droplet& D, const Potential& P, double delta,
                       int n);

// Area element of the normal-coordinate chart at offset xi from z0:
// (|phi'(z0)|/sqrt(2 n dQ))(1 - curvature * xi / sqrt(2 n dQ)).
double jacobian_h(const Droplet& D, const Potential& P, Complex z0, double xi,
                  int n);

}  // namespace rnm
