#include "rnm/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rnm {

namespace {

double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// Nodes of the shared radial rule in u = log r, with the j-independent part
// of the log integrand, segmented at the probe radii.
struct RadialRule {
  std::vector<double> u;
  std::vector<double> base;  // ln(2 w) - n q(e^u)
  std::vector<int> seg;
  int last_panel_begin = 0;
  double u_lo = 0.0;  // analytic stub: integrand treated as r^{2j+1} below
  double q_lo = 0.0;
  int n_segments = 1;
};

RadialRule radial_rule(const Potential& P, int n, double R,
                       const std::vector<double>& probes) {
  // Lowest peak: r q'(r) = 2/n locates the j = 0 mass.
  double lo = std::log(R) - 30.0, hi = std::log(R);
  for (int it = 0; it < 120; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = std::exp(mid);
    (r * P.radial_derivative(r) < 2.0 / n ? lo : hi) = mid;
  }
  const double u_lo = 0.5 * (lo + hi) - 10.0;

  // Upper cutoff: walk out from R until the top-degree integrand has dropped
  // by e^-90 from its peak.
  auto top_log = [&](double r) {
    return 2.0 * n * std::log(r) - n * P.radial_value(r);
  };
  const double peak = top_log(R);
  double r_hi = R;
  const double step = 0.25 * R / std::sqrt(static_cast<double>(n));
  while (top_log(r_hi) > peak - 90.0) r_hi += step;
  const double u_hi = std::log(r_hi);

  // Panel width matched to the local peak width 1/sqrt(4 n dq(r) r^2): every
  // monomial mass is a Gaussian of exactly that scale in u.
  std::vector<double> edges;
  double u = u_lo;
  while (u < u_hi) {
    edges.push_back(u);
    const double r = std::exp(u);
    const double curv = 4.0 * n * P.quarter_laplacian(Complex(r, 0.0)) * r * r;
    u += std::clamp(1.2 / std::sqrt(curv + 1.0), 0.02, 0.5);
  }
  edges.push_back(u_hi);
  for (double a : probes) {
    const double ua = std::log(a);
    if (!(ua > u_lo && ua < u_hi))
      throw DomainError("build_radial: probe radius outside the rule range");
    edges.push_back(ua);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double x, double y) { return y - x < 1e-13; }),
              edges.end());

  RadialRule rule;
  rule.u_lo = u_lo;
  rule.q_lo = P.radial_value(std::exp(u_lo));
  rule.n_segments = static_cast<int>(probes.size()) + 1;
  const auto& gl = gauss_legendre(16);
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    const double c = 0.5 * (edges[p] + edges[p + 1]);
    const double h = 0.5 * (edges[p + 1] - edges[p]);
    const double mid = std::exp(c);
    const int s = static_cast<int>(
        std::lower_bound(probes.begin(), probes.end(), mid) - probes.begin());
    if (p + 2 == edges.size())
      rule.last_panel_begin = static_cast<int>(rule.u.size());
    for (int i = 0; i < static_cast<int>(gl.x.size()); ++i) {
      const double ui = c + h * gl.x[i];
      rule.u.push_back(ui);
      rule.base.push_back(std::log(2.0 * h * gl.w[i]) -
                          n * P.radial_value(std::exp(ui)));
      rule.seg.push_back(s);
    }
  }
  return rule;
}

}  // namespace

OrthonormalBasis build_radial(const Potential& P, int n,
                              const std::vector<double>& probe_radii) {
  if (!P.is_radial())
    throw UnsupportedError("build_radial: potential is not radial");
  if (n < 1) throw DomainError("build_radial: n must be positive");
  std::vector<double> probes = probe_radii;
  std::sort(probes.begin(), probes.end());
  for (size_t i = 0; i + 1 < probes.size(); ++i)
    if (!(probes[i] < probes[i + 1]))
      throw DomainError("build_radial: duplicate probe radius");

  const double R = droplet_of(P).radius();
  const RadialRule rule = radial_rule(P, n, R, probes);
  const int N = static_cast<int>(rule.u.size());
  const int S = rule.n_segments;
  const double neg_inf = -std::numeric_limits<double>::infinity();

  OrthonormalBasis basis;
  basis.n_ = n;
  basis.construction_ = BasisConstruction::RadialDiagonal;
  basis.potential_ = std::shared_ptr<const Potential>(P.clone());
  basis.probes_ = probes;
  basis.seg_logs_ = MatX::Constant(n, S, neg_inf);
  basis.log_norms_ = VecX::Zero(n);

  std::vector<double> f(N), smax(S), ssum(S);
  for (int j = 0; j < n; ++j) {
    const double deg = 2.0 * j + 2.0;
    std::fill(smax.begin(), smax.end(), neg_inf);
    for (int i = 0; i < N; ++i) {
      f[i] = rule.base[i] + deg * rule.u[i];
      smax[rule.seg[i]] = std::max(smax[rule.seg[i]], f[i]);
    }
    std::fill(ssum.begin(), ssum.end(), 0.0);
    for (int i = 0; i < N; ++i) {
      const double d = f[i] - smax[rule.seg[i]];
      if (d > -45.0) ssum[rule.seg[i]] += std::exp(d);
    }
    double lh = neg_inf;
    for (int s = 0; s < S; ++s) {
      const double v = ssum[s] > 0.0 ? smax[s] + std::log(ssum[s]) : neg_inf;
      basis.seg_logs_(j, s) = v;
      lh = logaddexp(lh, v);
    }
    // Exact lower tail: below the first node the weight is constant to
    // machine accuracy, so the integral of r^(2j+1) closes in closed form.
    const double stub =
        std::log(2.0 / deg) + deg * rule.u_lo - n * rule.q_lo;
    basis.seg_logs_(j, 0) = logaddexp(basis.seg_logs_(j, 0), stub);
    lh = logaddexp(lh, stub);
    basis.log_norms_[j] = lh;

    if (j == n - 1) {
      double tmax = neg_inf;
      for (int i = rule.last_panel_begin; i < N; ++i)
        tmax = std::max(tmax, f[i]);
      double tsum = 0.0;
      for (int i = rule.last_panel_begin; i < N; ++i)
        if (f[i] - tmax > -45.0) tsum += std::exp(f[i] - tmax);
      if (tmax + std::log(tsum) > lh - 37.0)
        throw QuadratureError(
            "build_radial: top-degree mass reaches the radial cutoff");
    }
  }
  return basis;
}

OrthonormalBasis build_gram(const Potential& P, int n,
                            const QuadratureGrid& grid) {
  if (n < 1) throw DomainError("build_gram: n must be positive");
  const int N = static_cast<int>(grid.nodes.size());
  if (N < n) throw DomainError("build_gram: grid smaller than basis");
  const double rho = droplet_of(P).semi_major();

  MatXc V(N, n);
  for (int i = 0; i < N; ++i) {
    const auto& q = grid.nodes[i];
    const double sw = std::sqrt(q.w) * std::exp(-0.5 * n * P.value(q.z));
    const Complex s = q.z / rho;
    Complex pw = 1.0;
    for (int k = 0; k < n; ++k) {
      V(i, k) = pw * sw;
      pw *= s;
    }
  }
  MatXc M(n, n);
  M.noalias() = V.adjoint() * V;

  VecX d(n);
  for (int k = 0; k < n; ++k) {
    d[k] = M(k, k).real();
    if (!(d[k] > 0.0))
      throw ConditioningError("build_gram: vanishing diagonal moment", k);
  }
  MatXc Mt(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      Mt(j, k) = M(j, k) / std::sqrt(d[j] * d[k]);

  // Cholesky of the unit-diagonal moment matrix. With this normalization a
  // pivot is directly the squared residual norm left after projecting onto
  // the lower degrees, so the working-precision cutoff is absolute.
  MatXc L = MatXc::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double piv = Mt(k, k).real();
    for (int i = 0; i < k; ++i) piv -= std::norm(L(k, i));
    if (!(piv > 1e-13))
      throw ConditioningError("build_gram: pivot below working precision", k);
    L(k, k) = std::sqrt(piv);
    for (int r = k + 1; r < n; ++r) {
      Complex s = Mt(r, k);
      for (int i = 0; i < k; ++i) s -= L(r, i) * std::conj(L(k, i));
      L(r, k) = s / L(k, k).real();
    }
  }
  // Forward-substitute L X = I, then undo the diagonal normalization.
  MatXc C = MatXc::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    C(j, j) = 1.0 / L(j, j).real();
    for (int r = j + 1; r < n; ++r) {
      Complex s = 0.0;
      for (int i = j; i < r; ++i) s += L(r, i) * C(i, j);
      C(r, j) = -s / L(r, r).real();
    }
  }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k <= j; ++k) C(j, k) /= std::sqrt(d[k]);

  // Orthonormality under the construction quadrature is the contract;
  // verify it before handing the basis out.
  MatXc G = MatXc::Identity(n, n);
  {
    MatXc Cn = C;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k <= j; ++k) Cn(j, k) *= std::sqrt(d[k]);
    G = Cn * Mt * Cn.adjoint();
  }
  double res = 0.0;
  int arg = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double e = std::abs(G(j, k) - (j == k ? 1.0 : 0.0));
      if (e > res) {
        res = e;
        arg = j;
      }
    }
  if (res > 1e-8)
    throw ConditioningError("build_gram: orthonormality residual too large",
                            arg);

  OrthonormalBasis basis;
  basis.n_ = n;
  basis.construction_ = BasisConstruction::GramCholesky;
  basis.potential_ = std::shared_ptr<const Potential>(P.clone());
  basis.scale_ = rho;
  basis.coeff_ = std::move(C);
  return basis;
}

OrthonormalBasis build_hermite_elliptic(const EllipticGinibre& P, int n) {
  const double tau = P.tau();
  if (!(tau > 0.0 && tau < 1.0))
    throw DomainError("build_hermite_elliptic: need 0 < tau < 1");
  if (n < 1) throw DomainError("build_hermite_elliptic: n must be positive");

  OrthonormalBasis basis;
  basis.n_ = n;
  basis.construction_ = BasisConstruction::HermiteClosedForm;
  basis.potential_ = std::shared_ptr<const Potential>(P.clone());
  basis.hermite_gamma_ = std::sqrt(n * (1.0 - tau * tau) / (2.0 * tau));
  basis.log_norms_ = VecX::Zero(n);
  for (int m = 0; m < n; ++m)
    basis.log_norms_[m] = std::lgamma(m + 1.0) + m * std::log(2.0 / tau) -
                          std::log(static_cast<double>(n)) -
                          0.5 * std::log(1.0 - tau * tau);
  return basis;
}

QuadratureGrid gram_default_grid(const Potential& P, const Droplet& D, int n,
                                 int nodes_per_axis) {
  const double L = D.semi_major() + 6.0 / std::sqrt(static_cast<double>(n));
  const int m = nodes_per_axis > 0 ? nodes_per_axis : std::max(64, 4 * n);
  QuadratureGrid g = box_grid(-L, L, -L, L, m, m);

  // Coarse polar annulus beyond the box corners; the weight is already
  // exponentially small there, this just certifies the truncation.
  (void)P;
  const double rin = std::sqrt(2.0) * L;
  const double rout = 1.6 * rin + 1.0;
  auto radial = composite_gauss({rin, 0.5 * (rin + rout), rout}, 8);
  QuadratureGrid ring = polar_grid(Complex(0, 0), radial, 64);
  g.nodes.insert(g.nodes.end(), ring.nodes.begin(), ring.nodes.end());
  return g;
}

OrthonormalBasis build_basis(const Potential& P, int n,
                             const std::vector<double>& probe_radii) {
  if (const auto* e = dynamic_cast<const EllipticGinibre*>(&P))
    if (e->tau() > 0.0) return build_hermite_elliptic(*e, n);
  if (P.is_radial()) return build_radial(P, n, probe_radii);
  return build_gram(P, n, gram_default_grid(P, droplet_of(P), n));
}

void OrthonormalBasis::weighted_values(Complex z, VecXc& out) const {
  out.resize(n_);
  const double expo_w = -0.5 * n_ * potential_->value(z);
  switch (construction_) {
    case BasisConstruction::RadialDiagonal: {
      if (std::abs(z) == 0.0) {
        out.setZero();
        out[0] = std::exp(-0.5 * log_norms_[0] + expo_w);
        return;
      }
      const Complex lz = std::log(z);
      for (int j = 0; j < n_; ++j) {
        const double re = j * lz.real() - 0.5 * log_norms_[j] + expo_w;
        const double im = j * lz.imag();
        const double mag = re > -745.0 ? std::exp(re) : 0.0;
        out[j] = mag * Complex(std::cos(im), std::sin(im));
      }
      return;
    }
    case BasisConstruction::GramCholesky: {
      if (expo_w < -745.0) {
        out.setZero();
        return;
      }
      const double w = std::exp(expo_w);
      const Complex s = z / scale_;
      VecXc pw(n_);
      Complex v = 1.0;
      for (int k = 0; k < n_; ++k) {
        pw[k] = v;
        v *= s;
      }
      out.noalias() = coeff_ * pw;
      out *= w;
      return;
    }
    case BasisConstruction::HermiteClosedForm: {
      const Complex x = hermite_gamma_ * z;
      Complex hm1 = 0.0, h = 1.0;  // H_{-1}, H_0 (scaled)
      double scale_log = 0.0;
      for (int m = 0; m < n_; ++m) {
        const double e = scale_log - 0.5 * log_norms_[m] + expo_w;
        out[m] = e > -745.0 ? h * std::exp(e) : Complex(0.0, 0.0);
        const Complex hp = 2.0 * x * h - 2.0 * static_cast<double>(m) * hm1;
        hm1 = h;
        h = hp;
        const double mag = std::max(std::abs(h.real()), std::abs(h.imag()));
        if (mag > 1e150) {
          h *= 1e-150;
          hm1 *= 1e-150;
          scale_log += std::log(1e150);
        }
      }
      return;
    }
  }
  throw Error("weighted_values: unknown construction");
}

VecXc OrthonormalBasis::weighted_values(Complex z) const {
  VecXc out;
  weighted_values(z, out);
  return out;
}

const VecX& OrthonormalBasis::log_norms() const {
  if (construction_ == BasisConstruction::GramCholesky)
    throw UnsupportedError("log_norms: not a diagonal construction");
  return log_norms_;
}

MatXc OrthonormalBasis::coefficients() const {
  switch (construction_) {
    case BasisConstruction::GramCholesky:
      return coeff_;
    case BasisConstruction::RadialDiagonal: {
      MatXc C = MatXc::Zero(n_, n_);
      for (int j = 0; j < n_; ++j) {
        const double e = -0.5 * log_norms_[j];
        if (std::abs(e) > 700.0)
          throw NumericalError("coefficients: norms exceed double range");
        C(j, j) = std::exp(e);
      }
      return C;
    }
    case BasisConstruction::HermiteClosedForm: {
      // Monomial expansion of H_m(gamma z) / sqrt(h_m), small n only.
      MatXc C = MatXc::Zero(n_, n_);
      MatX H = MatX::Zero(n_, n_);
      H(0, 0) = 1.0;
      if (n_ > 1) H(1, 1) = 2.0 * hermite_gamma_;
      for (int m = 2; m < n_; ++m)
        for (int k = 0; k <= m; ++k) {
          double v = -2.0 * (m - 1) * H(m - 2, k);
          if (k > 0) v += 2.0 * hermite_gamma_ * H(m - 1, k - 1);
          H(m, k) = v;
          if (!std::isfinite(v))
            throw NumericalError("coefficients: overflow in expansion");
        }
      for (int m = 0; m < n_; ++m)
        for (int k = 0; k <= m; ++k)
          C(m, k) = H(m, k) * std::exp(-0.5 * log_norms_[m]);
      return C;
    }
  }
  throw Error("coefficients: unknown construction");
}

double OrthonormalBasis::leading_log_magnitude(int j) const {
  switch (construction_) {
    case BasisConstruction::RadialDiagonal:
      return -0.5 * log_norms_[j];
    case BasisConstruction::GramCholesky:
      return std::log(coeff_(j, j).real()) - j * std::log(scale_);
    case BasisConstruction::HermiteClosedForm:
      return j * std::log(2.0 * hermite_gamma_) - 0.5 * log_norms_[j];
  }
  throw Error("leading_log_magnitude: unknown construction");
}

VecX OrthonormalBasis::disc_mass_logs(double a) const {
  if (construction_ != BasisConstruction::RadialDiagonal)
    throw UnsupportedError("disc_mass_logs: radial construction only");
  int k = -1;
  for (size_t i = 0; i < probes_.size(); ++i)
    if (std::abs(probes_[i] - a) <= 1e-12 * std::max(1.0, a)) k = static_cast<int>(i);
  if (k < 0)
    throw DomainError("disc_mass_logs: radius was not a build-time probe");

  VecX deficit(n_);
  for (int j = 0; j < n_; ++j) {
    double pre = -std::numeric_limits<double>::infinity();
    for (int s = 0; s <= k; ++s) pre = logaddexp(pre, seg_logs_(j, s));
    double d = log_norms_[j] - pre;
    if (d < -2e-12)
      throw NumericalError("disc_mass_logs: prefix mass exceeds the norm");
    deficit[j] = std::max(d, 0.0);
  }
  return deficit;
}

VecX OrthonormalBasis::disc_masses(double a) const {
  VecX d = disc_mass_logs(a);
  for (int j = 0; j < n_; ++j) d[j] = std::exp(-d[j]);
  return d;
}

}  // namespace rnm
