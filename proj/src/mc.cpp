#include "rnm/mc.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "rnm/droplet.hpp"
#include "rnm/orthopoly.hpp"
#include "rnm/quadrature.hpp"

namespace rnm {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double edge_min_dq(const Potential& P, const Droplet& D) {
  double dq = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 64; ++k) {
    double t = 2.0 * kPi * k / 64.0;
    double v = P.quarter_laplacian(D.boundary_point(t));
    if (!(v > 0.0))
      throw HypothesisError("quarter-Laplacian must be positive on the edge");
    dq = std::min(dq, v);
  }
  return dq;
}

template <typename F>
void write_pod(std::ofstream& f, const F& v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename F>
void read_pod(std::ifstream& f, F& v) {
  f.read(reinterpret_cast<char*>(&v), sizeof v);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : base_(splitmix64(seed ^ splitmix64(stream + 0x51'7c'c1'b7'27'22'0a'95ULL))) {}

std::uint64_t CounterRng::next_u64() {
  return splitmix64(base_ + 0x9e3779b97f4a7c15ULL * ++counter_);
}

double CounterRng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double r = std::sqrt(-2.0 * std::log(uniform()));
  double a = 2.0 * kPi * uniform();
  cached_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

SampleBatch sample_ginibre(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw DomainError("need n >= 1 and m >= 1");
  SampleBatch batch;
  batch.n = n;
  batch.m = m;
  batch.seed = seed;
  batch.potential = "ginibre";
  batch.points.resize(m, n);
  double scale = 1.0 / std::sqrt(2.0 * n);
  MatXc G(n, n);
  for (int rep = 0; rep < m; ++rep) {
    CounterRng rng(seed, static_cast<std::uint64_t>(rep));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) G(i, j) = scale * rng.standard_complex();
    Eigen::ComplexEigenSolver<MatXc> es(G, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
      throw NumericalError("eigenvalue iteration did not converge");
    batch.points.row(rep) = es.eigenvalues().transpose();
  }
  return batch;
}

SampleBatch sample_radial_rotation(const Potential& P, int n, int m,
                                   std::uint64_t seed) {
  if (n < 1 || m < 1) throw DomainError("need n >= 1 and m >= 1");
  if (!P.is_radial())
    throw UnsupportedError("moduli sampling needs a radial potential");
  Droplet D = droplet_of(P);
  // Table cutoff: walk out from the droplet until the top-degree radial
  // density has dropped by e^-60. Beyond that the overflow probability per
  // draw is ~1e-26, and the radial rule (which cuts at e^-90) still covers
  // every table radius.
  const double R = D.radius();
  auto top_log = [&](double r) {
    return (2.0 * n - 1.0) * std::log(r) - n * P.radial_value(r);
  };
  const double peak = top_log(R);
  const double step = 0.25 * R / std::sqrt(static_cast<double>(n));
  double rmax = R;
  while (top_log(rmax) > peak - 60.0) rmax += step;

  const int K = 384;
  std::vector<double> radii(K);
  for (int k = 0; k < K; ++k) radii[k] = rmax * (k + 1.0) / K;
  OrthonormalBasis basis = build_radial(P, n, radii);

  // cdf(k, j) = P(R_j <= radii[k]).
  MatX cdf(K, n);
  for (int k = 0; k < K; ++k) {
    VecX dlog = basis.disc_mass_logs(radii[k]);
    for (int j = 0; j < n; ++j) cdf(k, j) = std::exp(-dlog[j]);
  }

  SampleBatch batch;
  batch.n = n;
  batch.m = m;
  batch.seed = seed;
  batch.potential = P.name();
  batch.points.resize(m, n);
  batch.radial_angles_synthetic = true;
  for (int rep = 0; rep < m; ++rep) {
    CounterRng rng(seed, static_cast<std::uint64_t>(rep));
    for (int j = 0; j < n; ++j) {
      double u = rng.uniform();
      double r;
      if (u <= cdf(0, j)) {
        // Below the first table radius the weight is flat, so the law is a
        // pure power there.
        r = radii[0] * std::pow(u / cdf(0, j), 1.0 / (2.0 * j + 2.0));
      } else {
        int lo = 0, hi = K - 1;
        while (hi - lo > 1) {
          int mid = (lo + hi) / 2;
          (cdf(mid, j) < u ? lo : hi) = mid;
        }
        double span = cdf(hi, j) - cdf(lo, j);
        double t = span > 0.0 ? (u - cdf(lo, j)) / span : 0.0;
        r = radii[lo] + t * (radii[hi] - radii[lo]);
      }
      double theta = 2.0 * kPi * rng.uniform();
      batch.points(rep, j) = Complex(r * std::cos(theta), r * std::sin(theta));
    }
  }
  return batch;
}

SampleBatch sample_dpp(const Kernel& K, int m, std::uint64_t seed) {
  if (m < 1) throw DomainError("need m >= 1");
  const OrthonormalBasis& basis = K.basis();
  const Potential& P = K.potential();
  const int n = K.n();
  Droplet D = droplet_of(P);
  double margin = 10.0 / std::sqrt(2.0 * n * edge_min_dq(P, D));
  double rc = D.semi_major() + margin;

  // Envelope over the covering disc: the one-point function bounds the
  // thinned density at every rank.
  double env = 0.0;
  for (int i = 0; i < 96; ++i) {
    double r = rc * (i + 0.5) / 96.0;
    for (int a = 0; a < 96; ++a) {
      double t = 2.0 * kPi * a / 96.0;
      Complex z(r * std::cos(t), r * std::sin(t));
      env = std::max(env, basis.weighted_values(z).squaredNorm());
    }
  }
  if (!(env > 0.0)) throw NumericalError("envelope vanished on the grid");
  env *= 1.2;

  SampleBatch batch;
  batch.n = n;
  batch.m = m;
  batch.seed = seed;
  batch.potential = P.name();
  batch.points.resize(m, n);

  const long max_attempts = 500000;
  for (int rep = 0; rep < m; ++rep) {
    CounterRng rng(seed, static_cast<std::uint64_t>(rep));
    MatXc C = MatXc::Identity(n, n);
    for (int k = n - 1; k >= 0; --k) {
      Eigen::Index rank = C.rows();
      Complex z;
      VecXc u;
      long attempts = 0;
      while (true) {
        if (++attempts > max_attempts)
          throw NumericalError("acceptance collapsed; envelope too loose");
        double r = rc * std::sqrt(rng.uniform());
        double t = 2.0 * kPi * rng.uniform();
        z = Complex(r * std::cos(t), r * std::sin(t));
        u = C * basis.weighted_values(z);
        if (env * rng.uniform() < u.squaredNorm()) break;
      }
      batch.points(rep, k) = z;
      if (rank == 1) break;
      double nu = u.norm();
      if (nu < 1e-14)
        throw NumericalError("accepted point annihilates the frame");
      Complex s = std::abs(u[rank - 1]) > 0.0
                      ? u[rank - 1] / std::abs(u[rank - 1])
                      : Complex(1.0, 0.0);
      VecXc v = u;
      v[rank - 1] += s * nu;
      double vn2 = v.squaredNorm();
      if (vn2 > 0.0) {
        Eigen::RowVectorXcd t = v.adjoint() * C;
        C.noalias() -= (2.0 / vn2) * v * t;
      }
      C.conservativeResize(rank - 1, Eigen::NoChange);
    }
  }
  return batch;
}

void write_batch(const std::string& path, const SampleBatch& batch) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  f.write("RNMB", 4);
  std::uint32_t version = 1;
  write_pod(f, version);
  write_pod(f, batch.seed);
  std::uint32_t n = static_cast<std::uint32_t>(batch.n);
  std::uint32_t m = static_cast<std::uint32_t>(batch.m);
  write_pod(f, n);
  write_pod(f, m);
  std::uint8_t flags = batch.radial_angles_synthetic ? 1 : 0;
  write_pod(f, flags);
  std::uint16_t len = static_cast<std::uint16_t>(batch.potential.size());
  write_pod(f, len);
  f.write(batch.potential.data(), len);
  for (int i = 0; i < batch.m; ++i)
    for (int j = 0; j < batch.n; ++j) {
      double re = batch.points(i, j).real();
      double im = batch.points(i, j).imag();
      write_pod(f, re);
      write_pod(f, im);
    }
  if (!f) throw ConfigError("short write to " + path);
}

SampleBatch read_batch(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path);
  char magic[4] = {};
  f.read(magic, 4);
  if (!f || std::string(magic, 4) != "RNMB")
    throw ConfigError(path + " is not a sample batch");
  std::uint32_t version = 0;
  read_pod(f, version);
  if (version != 1)
    throw ConfigError("unsupported batch version in " + path);
  SampleBatch batch;
  std::uint32_t n = 0, m = 0;
  std::uint8_t flags = 0;
  std::uint16_t len = 0;
  read_pod(f, batch.seed);
  read_pod(f, n);
  read_pod(f, m);
  read_pod(f, flags);
  read_pod(f, len);
  if (!f || n == 0 || m == 0 || n > (1u << 20) || m > (1u << 24))
    throw ConfigError("implausible batch header in " + path);
  batch.n = static_cast<int>(n);
  batch.m = static_cast<int>(m);
  batch.radial_angles_synthetic = (flags & 1) != 0;
  batch.potential.resize(len);
  f.read(batch.potential.data(), len);
  batch.points.resize(batch.m, batch.n);
  for (int i = 0; i < batch.m; ++i)
    for (int j = 0; j < batch.n; ++j) {
      double re = 0.0, im = 0.0;
      read_pod(f, re);
      read_pod(f, im);
      batch.points(i, j) = Complex(re, im);
    }
  if (!f) throw ConfigError(path + " is truncated");
  return batch;
}

VecX counts_in_region(const SampleBatch& batch, const Region& A) {
  if (batch.radial_angles_synthetic) {
    bool centered_disc =
        A.kind() == Region::Kind::Disc && std::abs(A.center()) < 1e-12;
    if (!centered_disc)
      throw UnsupportedError(
          "synthetic-angle batches only support centered discs");
  }
  VecX counts(batch.m);
  for (int i = 0; i < batch.m; ++i) {
    int c = 0;
    for (int j = 0; j < batch.n; ++j)
      if (A.contains(batch.points(i, j))) ++c;
    counts[i] = c;
  }
  return counts;
}

MomentSummary count_moments(const VecX& counts) {
  const Eigen::Index m = counts.size();
  if (m < 2) throw DomainError("need at least two configurations");
  MomentSummary s;
  s.mean = counts.mean();
  VecX d = counts.array() - s.mean;
  double m2 = d.squaredNorm() / m;
  double m4 = d.array().square().square().sum() / m;
  s.var = m2 * m / (m - 1.0);
  s.se_mean = std::sqrt(s.var / m);
  s.se_var = std::sqrt(std::max(m4 - m2 * m2, 0.0) / m);
  return s;
}

PairCountStat product_count_moment(const SampleBatch& batch, const Region& A,
                                   const Region& B) {
  VecX na = counts_in_region(batch, A);
  VecX nb = counts_in_region(batch, B);
  VecX prod = na.cwiseProduct(nb);
  const Eigen::Index m = prod.size();
  if (m < 2) throw DomainError("need at least two configurations");
  PairCountStat out;
  out.mean = prod.mean();
  double var = (prod.array() - out.mean).square().sum() / (m - 1.0);
  out.se = std::sqrt(var / m);
  return out;
}

namespace {

QuadratureGrid probe_disc_grid(const Potential& P, int n, Complex c,
                               double a) {
  double dq = std::max(P.quarter_laplacian(c), 0.0);
  double fine = 0.4 / std::sqrt(4.0 * n * dq + 1.0);
  int panels = std::max(4, static_cast<int>(std::ceil(a / fine)));
  std::vector<double> edges(panels + 1);
  for (int k = 0; k <= panels; ++k) edges[k] = a * k / panels;
  Rule1D radial = composite_gauss(edges, 8);
  int angles = std::max(
      32, static_cast<int>(std::ceil(12.0 * a * std::sqrt(4.0 * n * dq + 1.0))));
  return polar_grid(c, radial, angles);
}

}  // namespace

double expected_pair_count(const Kernel& K, const Region& A,
                           const Region& B) {
  if (A.kind() != Region::Kind::Disc || B.kind() != Region::Kind::Disc)
    throw UnsupportedError("pair counts are integrated over discs");
  if (!(std::abs(A.center() - B.center()) > A.radius() + B.radius()))
    throw DomainError("probe discs must be disjoint");
  QuadratureGrid ga = probe_disc_grid(K.potential(), K.n(), A.center(), A.radius());
  QuadratureGrid gb = probe_disc_grid(K.potential(), K.n(), B.center(), B.radius());
  const OrthonormalBasis& basis = K.basis();
  auto frame = [&](const QuadratureGrid& g) {
    MatXc F(basis.n(), static_cast<Eigen::Index>(g.nodes.size()));
    for (size_t i = 0; i < g.nodes.size(); ++i)
      F.col(static_cast<Eigen::Index>(i)) =
          basis.weighted_values(g.nodes[i].z) * std::sqrt(g.nodes[i].w);
    return F;
  };
  MatXc Fa = frame(ga);
  MatXc Fb = frame(gb);
  double mass_a = Fa.squaredNorm();
  double mass_b = Fb.squaredNorm();
  return mass_a * mass_b - (Fa.adjoint() * Fb).squaredNorm();
}

}  // namespace rnm
