#pragma once

#include <memory>
#include <vector>

#include "rnm/droplet.hpp"
#include "rnm/potential.hpp"
#include "rnm/quadrature.hpp"
#include "rnm/types.hpp"

namespace rnm {

enum class BasisConstruction { RadialDiagonal, GramCholesky, HermiteClosedForm };

// Orthonormal polynomials p_0..p_{n-1} under the weight e^{-n Q} dA, with
// positive leading coefficients. Evaluation goes through the weighted frame
// psi_j(z) = p_j(z) e^{-n Q(z)/2}, the only form that stays bounded: all of
// the magnitude bookkeeping is done internally in log scale.
class OrthonormalBasis {
 public:
  int n() const { return n_; }
  BasisConstruction construction() const { return construction_; }
  const Potential& potential() const { return *potential_; }

  void weighted_values(Complex z, VecXc& out) const;
  VecXc weighted_values(Complex z) const;

  // log h_j, the squared monomial norms (diagonal constructions only).
  const VecX& log_norms() const;

  // p_j(z) = sum_k coeff(j,k) (z/scale)^k, lower triangular. Materialized on
  // demand; for diagonal constructions this overflows once h_j leaves the
  // double range, in which case it throws.
  MatXc coefficients() const;
  double scale() const { return scale_; }

  // log of the (positive) leading coefficient of p_j.
  double leading_log_magnitude(int j) const;

  // Radial constructions: mass of the j-th state on the centered disc of
  // radius a, as the log deficit delta_j = log h_j - log prefix_j >= 0 so
  // that p_j = e^{-delta_j} is exact near both 0 and 1. The radius must be
  // one of the probe radii the basis was built with.
  VecX disc_mass_logs(double a) const;
  VecX disc_masses(double a) const;
  const std::vector<double>& probe_radii() const { return probes_; }

 private:
  friend OrthonormalBasis build_radial(const Potential&, int,
                                       const std::vector<double>&);
  friend OrthonormalBasis build_gram(const Potential&, int,
                                     const QuadratureGrid&);
  friend OrthonormalBasis build_hermite_elliptic(const EllipticGinibre&, int);

  OrthonormalBasis() = default;

  int n_ = 0;
  BasisConstruction construction_ = BasisConstruction::RadialDiagonal;
  std::shared_ptr<const Potential> potential_;
  double scale_ = 1.0;

  VecX log_norms_;  // diagonal constructions

  // GramCholesky
  MatXc coeff_;

  // HermiteClosedForm
  double hermite_gamma_ = 0.0;

  // RadialDiagonal: per-segment partial integrals between probe radii,
  // seg_logs_(j, s) = log of the h_j contribution of segment s.
  std::vector<double> probes_;
  MatX seg_logs_;
};

// Diagonal basis for a radial potential: h_j by shared graded log-radius
// quadrature, with panel edges forced at every probe radius so prefix masses
// split exactly.
OrthonormalBasis build_radial(const Potential& P, int n,
                              const std::vector<double>& probe_radii = {});

// General construction: scaled monomial moment matrix on the given grid,
// diagonal-normalized, Cholesky-factorized. Throws ConditioningError with
// the failing pivot index when the moment matrix falls below working
// precision.
OrthonormalBasis build_gram(const Potential& P, int n,
                            const QuadratureGrid& grid);

// Closed-form basis for the elliptic family (0 < tau < 1): scaled Hermite
// polynomials, h_m = m! (2/tau)^m / (n sqrt(1 - tau^2)).
OrthonormalBasis build_hermite_elliptic(const EllipticGinibre& P, int n);

// Default moment-matrix grid: tensor box over the droplet inflated by
// 6/sqrt(n), plus a coarse polar annulus catching the exponential tail.
QuadratureGrid gram_default_grid(const Potential& P, const Droplet& D, int n,
                                 int nodes_per_axis = 0);

// Convenience dispatch: radial potentials -> RadialDiagonal, elliptic ->
// HermiteClosedForm, otherwise GramCholesky on the default grid.
OrthonormalBasis build_basis(const Potential& P, int n,
                             const std::vector<double>& probe_radii = {});

}  // namespace rnm
