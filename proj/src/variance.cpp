#include "rnm/variance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>

#include "rnm/droplet.hpp"
#include "rnm/edge.hpp"
#include "rnm/orthopoly.hpp"
#include "rnm/quadrature.hpp"
#include "rnm/special_functions.hpp"

namespace rnm {

namespace {

constexpr double kPi = std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Largest quarter-Laplacian seen on the circle |z - c| = r; sets how fine the
// radial panels must be to resolve the kernel's microscopic scale there.
double ring_max_dq(const Potential& P, Complex c, double r) {
  double best = 0.0;
  for (int k = 0; k < 8; ++k) {
    double t = 2.0 * kPi * (k + 0.5) / 8.0;
    Complex z = c + Complex(r * std::cos(t), r * std::sin(t));
    best = std::max(best, P.quarter_laplacian(z));
  }
  return best;
}

// March panel edges from lo to hi with widths matched to the local kernel
// scale 1/sqrt(4 n dq); the last edge lands exactly on hi.
std::vector<double> march_edges(const Potential& P, Complex c, int n,
                                double lo, double hi, double density) {
  std::vector<double> edges = {lo};
  double r = lo;
  double span = hi - lo;
  while (r < hi) {
    double dq = ring_max_dq(P, c, r);
    double h = 0.55 / std::sqrt(4.0 * n * std::max(dq, 0.0) + 1.0);
    h = std::clamp(h, 1e-4 * span, 0.06 * std::max(span, 1.0));
    h /= density;
    r += h;
    edges.push_back(std::min(r, hi));
  }
  if (edges.back() != hi) edges.push_back(hi);
  return edges;
}

// Weighted basis vectors at the nodes, columns scaled by sqrt(w).
MatXc node_frame(const OrthonormalBasis& basis,
                 const std::vector<QuadNode>& nodes) {
  MatXc F(basis.n(), static_cast<Eigen::Index>(nodes.size()));
  for (size_t i = 0; i < nodes.size(); ++i)
    F.col(static_cast<Eigen::Index>(i)) =
        basis.weighted_values(nodes[i].z) * std::sqrt(nodes[i].w);
  return F;
}

// G_jk = sum_i w_i psi_j(z_i) conj(psi_k(z_i)), accumulated in node chunks.
// Double integrals of |K|^2 over region pairs collapse onto these Gram
// matrices: int_A int_B |K|^2 = tr(G_A G_B).
MatXc frame_gram(const OrthonormalBasis& basis,
                 const std::vector<QuadNode>& nodes) {
  const Eigen::Index n = basis.n();
  MatXc G = MatXc::Zero(n, n);
  const size_t chunk = 4096;
  std::vector<QuadNode> slab;
  for (size_t i0 = 0; i0 < nodes.size(); i0 += chunk) {
    size_t m = std::min(chunk, nodes.size() - i0);
    slab.assign(nodes.begin() + static_cast<std::ptrdiff_t>(i0),
                nodes.begin() + static_cast<std::ptrdiff_t>(i0 + m));
    MatXc F = node_frame(basis, slab);
    G.noalias() += F * F.adjoint();
  }
  return G;
}

double gram_pair_energy(const MatXc& GA, const MatXc& GB) {
  return GA.cwiseProduct(GB.conjugate()).sum().real();
}

double polygon_diameter(const std::vector<Complex>& v) {
  double best = 0.0;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      best = std::max(best, std::abs(v[i] - v[j]));
  return best;
}

double quadrature_pass(const Kernel& K, const Region& A, double density);

}  // namespace

std::string to_string(VarianceMethod m) {
  switch (m) {
    case VarianceMethod::QUAD:
      return "quad";
    case VarianceMethod::RADIAL_EXACT:
      return "radial-exact";
    case VarianceMethod::MC:
      return "mc";
  }
  return "unknown";
}

VecX occupation_masses(const Potential& P, int n, double a,
                       const OrthonormalBasis* basis) {
  if (!(a > 0.0)) throw DomainError("disc radius must be positive");
  if (P.name() == "ginibre") {
    VecX p(n);
    double x = n * a * a;
    for (int j = 0; j < n; ++j) p[j] = gamma_p(j + 1.0, x);
    return p;
  }
  if (!P.is_radial())
    throw UnsupportedError("occupation masses need a radial potential");
  std::optional<OrthonormalBasis> local;
  if (basis == nullptr) {
    local.emplace(build_radial(P, n, {a}));
    basis = &*local;
  }
  if (basis->n() != n) throw DomainError("basis size does not match n");
  VecX p = basis->disc_masses(a);
  for (int j = 0; j < n; ++j) {
    if (!(p[j] >= 0.0 && p[j] <= 1.0 + 1e-12))
      throw NumericalError("occupation mass escaped [0, 1]");
    p[j] = std::min(p[j], 1.0);
  }
  return p;
}

VarianceResult variance_radial_exact(const Potential& P, int n, double a) {
  auto t0 = std::chrono::steady_clock::now();
  VarianceResult out;
  out.n = n;
  out.method = VarianceMethod::RADIAL_EXACT;
  out.region = Region::disc(0.0, a).label();
  KahanSum acc;
  if (P.name() == "ginibre") {
    double x = n * a * a;
    for (int j = 0; j < n; ++j)
      acc.add(gamma_p(j + 1.0, x) * gamma_q(j + 1.0, x));
  } else {
    if (!P.is_radial())
      throw UnsupportedError("exact variance needs a radial potential");
    OrthonormalBasis basis = build_radial(P, n, {a});
    VecX dlog = basis.disc_mass_logs(a);
    for (int j = 0; j < n; ++j) {
      double p = std::exp(-dlog[j]);
      double q = -std::expm1(-dlog[j]);
      acc.add(p * q);
    }
  }
  out.value = acc.value();
  out.normalized = out.value / std::sqrt(static_cast<double>(n));
  out.runtime_s = seconds_since(t0);
  return out;
}

QuadratureGrid variance_grid(const Kernel& K, const Region& A, double budget) {
  if (!(budget > 0.0)) throw DomainError("budget must be positive");
  const Potential& P = K.potential();
  Droplet D = droplet_of(P);
  int n = K.n();

  double dq_edge = ring_max_dq(P, 0.0, D.in_radius());
  for (int k = 0; k < 64; ++k) {
    double t = 2.0 * kPi * k / 64.0;
    double dq = P.quarter_laplacian(D.boundary_point(t));
    if (!(dq > 0.0))
      throw HypothesisError("quarter-Laplacian must be positive on the edge");
    dq_edge = std::min(dq_edge, dq);
  }
  double margin = 8.0 / std::sqrt(2.0 * n * dq_edge);

  if (A.kind() == Region::Kind::Disc) {
    Complex c = A.center();
    double a = A.radius();
    double rmax = std::abs(c) + D.semi_major() + margin;
    if (!(a < rmax))
      throw DomainError("disc region swallows the whole droplet grid");
    std::vector<double> edges = march_edges(P, c, n, 0.0, a, budget);
    std::vector<double> outer = march_edges(P, c, n, a, rmax, budget);
    edges.insert(edges.end(), outer.begin() + 1, outer.end());
    Rule1D radial = composite_gauss(edges, 8);
    int m_angle = std::max(2 * n + 16, 64);
    return polar_grid(c, radial, m_angle);
  }
  if (A.kind() == Region::Kind::Polygon) {
    double dq_in = std::max(ring_max_dq(P, 0.0, 0.0),
                            ring_max_dq(P, 0.0, 0.5 * D.in_radius()));
    double scale = 0.9 / std::sqrt(4.0 * n * std::max({dq_in, dq_edge}) + 1.0);
    double diam = polygon_diameter(A.vertices());
    double max_edge = std::max(scale / budget, 1e-3 * diam);
    return polygon_grid(A.vertices(), max_edge, 8);
  }
  throw UnsupportedError("resolve a droplet dilation into a disc or polygon");
}

double variance_on_grid(const Kernel& K, const Region& A,
                        const QuadratureGrid& grid) {
  std::vector<QuadNode> in, out;
  in.reserve(grid.nodes.size());
  out.reserve(grid.nodes.size());
  for (const QuadNode& q : grid.nodes)
    (A.contains(q.z) ? in : out).push_back(q);
  if (in.empty() || out.empty())
    throw QuadratureError("grid does not straddle the region boundary");
  MatXc GA = frame_gram(K.basis(), in);
  MatXc GB = frame_gram(K.basis(), out);
  return gram_pair_energy(GA, GB);
}

namespace {

double quadrature_pass(const Kernel& K, const Region& A, double density) {
  QuadratureGrid grid = variance_grid(K, A, density);
  if (A.kind() == Region::Kind::Disc)
    return variance_on_grid(K, A, grid);
  // Boundary-conforming polygon grid: integrate the mean and the A x A
  // energy, Var N = E N - energy.
  MatXc G = frame_gram(K.basis(), grid.nodes);
  return G.trace().real() - G.squaredNorm();
}

}  // namespace

VarianceResult variance_quadrature(const Kernel& K, const Region& A,
                                   double budget) {
  auto t0 = std::chrono::steady_clock::now();
  double fine = quadrature_pass(K, A, budget);
  double coarse = quadrature_pass(K, A, budget / 1.5);
  double tol = 0.01 * std::max(std::abs(fine), 1e-12);
  if (!(std::abs(fine - coarse) <= tol))
    throw QuadratureError("variance quadrature did not settle on refinement");
  VarianceResult out;
  out.n = K.n();
  out.method = VarianceMethod::QUAD;
  out.region = A.label();
  out.value = fine;
  out.normalized = fine / std::sqrt(static_cast<double>(K.n()));
  out.runtime_s = seconds_since(t0);
  return out;
}

double bulk_prediction(const Potential& P, const Region& A, int n) {
  Droplet D = droplet_of(P);
  for (const BoundarySample& s : boundary_samples(A, 4096))
    if (!(D.signed_distance(s.point) < -1e-9))
      throw HypothesisError("region boundary must stay strictly inside the droplet");
  double w = weighted_perimeter(A, P);
  return std::sqrt(static_cast<double>(n)) * w / (2.0 * kPi * std::sqrt(kPi));
}

double edge_prediction(const Potential& P, const Droplet& D, double delta,
                       int n) {
  double h = harmonic_measure_integral(D, P);
  return std::sqrt(static_cast<double>(n)) * f_delta(delta) * h /
         (2.0 * kPi * std::sqrt(kPi));
}

double linear_statistic_variance(const Kernel& K,
                                 const std::function<double(Complex)>& f,
                                 const QuadratureGrid& grid) {
  const auto& nodes = grid.nodes;
  MatXc F = node_frame(K.basis(), nodes);
  VecX fv(static_cast<Eigen::Index>(nodes.size()));
  for (size_t i = 0; i < nodes.size(); ++i)
    fv[static_cast<Eigen::Index>(i)] = f(nodes[i].z);
  const Eigen::Index N = F.cols();
  const Eigen::Index chunk = 512;
  KahanSum acc;
  for (Eigen::Index i0 = 0; i0 < N; i0 += chunk) {
    Eigen::Index mi = std::min(chunk, N - i0);
    for (Eigen::Index j0 = 0; j0 < N; j0 += chunk) {
      Eigen::Index mj = std::min(chunk, N - j0);
      MatX e = (F.middleCols(i0, mi).adjoint() * F.middleCols(j0, mj))
                   .cwiseAbs2();
      MatX df = fv.segment(i0, mi).replicate(1, mj) -
                fv.segment(j0, mj).transpose().replicate(mi, 1);
      acc.add((e.array() * df.array().square()).sum());
    }
  }
  return 0.5 * acc.value();
}

BoundReport upper_bound_check(const std::vector<VarianceResult>& results) {
  if (results.size() < 2)
    throw DomainError("bound check needs at least two variance rows");
  BoundReport rep;
  for (const VarianceResult& r : results) {
    if (!std::isfinite(r.prediction_normalized))
      throw DomainError("bound check needs prediction values");
    rep.residuals.push_back(r.normalized - r.prediction_normalized);
  }
  double cap = 0.0;
  for (size_t i = 0; i + 1 < rep.residuals.size(); ++i)
    cap = std::max(cap, std::abs(rep.residuals[i]));
  rep.cap = 2.0 * cap;
  rep.bounded = std::abs(rep.residuals.back()) <= rep.cap;
  return rep;
}

}  // namespace rnm
