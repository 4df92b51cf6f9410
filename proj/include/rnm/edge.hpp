#pragma once

#include <utility>

#include "rnm/complex_erfc.hpp"
#include "rnm/droplet.hpp"
#include "rnm/kernel.hpp"
#include "rnm/potential.hpp"
#include "rnm/types.hpp"

namespace rnm {

// Everything the microscopic edge formulas need at a pair of boundary
// points: normals, quarter Laplacians, exterior-map data, and the principal
// log L = Log(phi(z0) conj(phi(w0))), purely imaginary on the boundary.
struct EdgeFrame {
  Complex z0, w0;
  Complex normal_z0, normal_w0;
  double dq_z0 = 0.0, dq_w0 = 0.0;
  Complex phi_z0, phi_w0, dphi_z0;
  Complex L;
};

EdgeFrame make_edge_frame(const Droplet& D, const Potential& P, Complex z0,
                          Complex w0);

// Microscopic probe points: normal offset xi in units of 1/sqrt(n dQ).
Complex edge_probe_z(const EdgeFrame& F, Complex xi, int n);
Complex edge_probe_w(const EdgeFrame& F, Complex eta, int n);

// Predicted |K_n(z,w)| / (n sqrt(dQ(z0) dQ(w0))) at the probe points:
// (1/2) exp(-|xi - eta + u|^2 / 2) |erfc((xi + conj(eta) + u)/sqrt 2)| with
// u = sqrt(n dQ(z0)) L / |phi'(z0)|.
double edge_kernel_modulus_prediction(const EdgeFrame& F, Complex xi,
                                      Complex eta, int n);

// Hardy-space reproducing kernel of the droplet exterior:
// (1/2pi) sqrt(phi'(z)) conj(sqrt(phi'(w))) / (phi(z) conj(phi(w)) - 1).
Complex szego(const Droplet& D, Complex z, Complex w);

// Dominating envelope C_Q |S(probe(xi), probe(eta))| e^{-(Re xi)^2-(Re eta)^2}
// for |K_n| / sqrt(n) near the boundary.
double edge_kernel_bound(const EdgeFrame& F, const Droplet& D, Complex xi,
                         Complex eta, int n, double C_Q);

// Empirical envelope constant: maximizes the ratio of sqrt(n)-normalized
// |K_n| to the Szego factor over a grid of boundary pairs, with a safety
// margin.
double fit_envelope_constant(const Kernel& K, const Droplet& D,
                             int grid_size = 16);

// Edge interpolation profile sqrt(2 pi) int_delta^inf erfc(t) erfc(-t)/4 dt;
// decreasing from 1 to 0 with f(0) = 1/2.
double f_delta(double delta);

// Numeric and closed-form sides of the Gaussian-erfc integral
// int e^{-theta^2} |erfc((xi+eta+i theta)/sqrt 2)|^2 dtheta
//   = 2 sqrt(pi) erfc(xi+eta).
std::pair<double, double> gauss_erfc_identity(double xi, double eta);

// int over the droplet boundary of sqrt(dQ) |phi'| dH^1, cross-checked
// against the pullback to the unit circle.
double harmonic_measure_integral(const Droplet& D, const Potential& P);

}  // namespace rnm
