#pragma once

#include <cmath>
#include <vector>

#include "rnm/types.hpp"

namespace rnm {

// One planar quadrature node. Weights are taken against dA = dx dy / pi.
struct QuadNode {
  Complex z;
  double w;
};

struct QuadratureGrid {
  std::vector<QuadNode> nodes;
  double total_weight() const;
};

// Gauss-Legendre rule on [-1,1]; cached per order.
struct GaussLegendre {
  VecX x;
  VecX w;
};
const GaussLegendre& gauss_legendre(int order);

// 1D rule assembled from Gauss-Legendre panels between consecutive edges.
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> edges;
};
Rule1D composite_gauss(const std::vector<double>& edges, int order);

// Panel edges on [a,b]. Panels shrink geometrically toward each focus point,
// reaching width `fine` next to it; elsewhere width is capped at `coarse`.
// Foci falling inside (a,b) are forced to be edges, so running integrals can
// be split exactly at them.
std::vector<double> graded_edges(double a, double b, std::vector<double> focus,
                                 double fine, double coarse,
                                 double growth = 1.7);

// Polar product grid about `center`: radial rule x n_angles uniform angles.
// Node weight = r dr dtheta / pi. Uniform angles integrate e^{i m theta}
// exactly for 0 < |m| < n_angles, which the moment quadratures rely on.
QuadratureGrid polar_grid(Complex center, const Rule1D& radial, int n_angles);

// Tensor Gauss-Legendre grid on [x0,x1] x [y0,y1]; weight = dx dy / pi.
QuadratureGrid box_grid(double x0, double x1, double y0, double y1, int nx,
                        int ny);

// Quadrature over a simple polygon: ear-clipping triangulation, uniform
// subdivision until every triangle edge is shorter than max_edge, then a
// Duffy product rule of the given order on each triangle.
QuadratureGrid polygon_grid(const std::vector<Complex>& vertices,
                            double max_edge, int order = 8);

// Compensated (Kahan-Neumaier) accumulators for deterministic reductions.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      c_ += (sum_ - t) + x;
    else
      c_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

class KahanSumC {
 public:
  void add(Complex x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_;
  KahanSum im_;
};

}  // namespace rnm
