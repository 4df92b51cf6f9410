#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rnm/geometry.hpp"
#include "rnm/kernel.hpp"
#include "rnm/types.hpp"

namespace rnm {

enum class VarianceMethod { QUAD, RADIAL_EXACT, MC };

std::string to_string(VarianceMethod m);

struct VarianceResult {
  int n = 0;
  std::string region;
  VarianceMethod method = VarianceMethod::QUAD;
  double value = 0.0;
  double normalized = 0.0;  // value / sqrt(n)
  // Asymptotic boundary-law values, when one applies; NaN otherwise.
  double prediction = std::numeric_limits<double>::quiet_NaN();
  double prediction_normalized = std::numeric_limits<double>::quiet_NaN();
  double gap_rel = std::numeric_limits<double>::quiet_NaN();
  double runtime_s = 0.0;
};

// Occupation probabilities of the n radial states on the centered disc of
// radius a. Ginibre goes through the regularized incomplete gamma closed
// form; other radial potentials through the shared-grid quadrature basis,
// which must have been built with a as a probe radius.
VecX occupation_masses(const Potential& P, int n, double a,
                       const OrthonormalBasis* basis = nullptr);

// Var N = sum p_j (1 - p_j) over the independent radial states.
VarianceResult variance_radial_exact(const Potential& P, int n, double a);

// The double integral of |K_n(z,w)|^2 over A x A^c on split polar grids.
// budget > 0 scales the grid density (1 = default); the result is checked
// against a coarser pass and must move by less than 1% on refinement.
VarianceResult variance_quadrature(const Kernel& K, const Region& A,
                                   double budget = 1.0);

// Same double integral on caller-supplied nodes, split by membership.
double variance_on_grid(const Kernel& K, const Region& A,
                        const QuadratureGrid& grid);

// Polar grid adapted to the kernel's microscopic scale, covering the droplet
// and the region with an exterior margin; panel edges aligned with disc
// boundaries so membership never straddles a panel.
QuadratureGrid variance_grid(const Kernel& K, const Region& A,
                             double budget = 1.0);

// sqrt(n)-scaled boundary laws.
double bulk_prediction(const Potential& P, const Region& A, int n);
double edge_prediction(const Potential& P, const Droplet& D, double delta,
                       int n);

// Var of sum f(z_i): (1/2) double integral of |f(z)-f(w)|^2 |K_n(z,w)|^2.
double linear_statistic_variance(const Kernel& K,
                                 const std::function<double(Complex)>& f,
                                 const QuadratureGrid& grid);

// Checks value - prediction residuals across an n-sweep: the last residual
// must stay under a cap fitted on the earlier ones.
struct BoundReport {
  std::vector<double> residuals;
  double cap = 0.0;
  bool bounded = false;
};
BoundReport upper_bound_check(const std::vector<VarianceResult>& results);

}  // namespace rnm
