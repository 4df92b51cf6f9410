#include "rnm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rnm/quadrature.hpp"

namespace rnm {

namespace {

constexpr double kPi = std::numbers::pi;

double polygon_area(const std::vector<Complex>& v) {
  double a = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Complex& p = v[i];
    const Complex& q = v[(i + 1) % v.size()];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

bool segments_cross(Complex a, Complex b, Complex c, Complex d) {
  auto side = [](Complex p, Complex q, Complex r) {
    const double s = (q.real() - p.real()) * (r.imag() - p.imag()) -
                     (q.imag() - p.imag()) * (r.real() - p.real());
    return s > 0.0 ? 1 : (s < 0.0 ? -1 : 0);
  };
  const int s1 = side(a, b, c), s2 = side(a, b, d);
  const int s3 = side(c, d, a), s4 = side(c, d, b);
  return s1 * s2 < 0 && s3 * s4 < 0;
}

}  // namespace

Region Region::disc(Complex center, double radius) {
  if (!(radius > 0.0)) throw DomainError("disc region: radius must be positive");
  Region r;
  r.kind_ = Kind::Disc;
  r.center_ = center;
  r.radius_ = radius;
  return r;
}

Region Region::polygon(std::vector<Complex> vertices) {
  if (vertices.size() < 3)
    throw DomainError("polygon region: need at least 3 vertices");
  const double area = polygon_area(vertices);
  if (!(area > 0.0))
    throw DomainError(
        "polygon region: vertices must wind counterclockwise with positive "
        "area");
  const size_t m = vertices.size();
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j + 1 == m) continue;  // shared vertex with closing edge
      if (segments_cross(vertices[i], vertices[(i + 1) % m], vertices[j],
                         vertices[(j + 1) % m]))
        throw DomainError("polygon region: edges self-intersect");
    }
  Region r;
  r.kind_ = Kind::Polygon;
  r.vertices_ = std::move(vertices);
  return r;
}

Region Region::droplet_dilation(double delta) {
  Region r;
  r.kind_ = Kind::DropletDilation;
  r.delta_ = delta;
  return r;
}

bool Region::contains(Complex z) const {
  switch (kind_) {
    case Kind::Disc:
      return std::abs(z - center_) <= radius_;
    case Kind::Polygon: {
      bool in = false;
      const size_t m = vertices_.size();
      for (size_t i = 0, j = m - 1; i < m; j = i++) {
        const Complex& a = vertices_[i];
        const Complex& b = vertices_[j];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
          const double x = a.real() + (z.imag() - a.imag()) *
                                          (b.real() - a.real()) /
                                          (b.imag() - a.imag());
          if (z.real() < x) in = !in;
        }
      }
      return in;
    }
    case Kind::DropletDilation:
      throw UnsupportedError(
          "droplet dilation is symbolic; resolve it with dilated_droplet");
  }
  return false;
}

std::string Region::label() const {
  std::ostringstream os;
  os.precision(12);
  switch (kind_) {
    case Kind::Disc:
      os << "disc(" << center_.real() << "," << center_.imag() << ";r="
         << radius_ << ")";
      break;
    case Kind::Polygon:
      os << "polygon[" << vertices_.size() << "]";
      break;
    case Kind::DropletDilation:
      os << "dilation(delta=" << delta_ << ")";
      break;
  }
  return os.str();
}

std::vector<BoundarySample> boundary_samples(const Region& A,
                                             int min_samples) {
  std::vector<BoundarySample> out;
  switch (A.kind()) {
    case Region::Kind::Disc: {
      const int m = std::max(min_samples, 16);
      out.reserve(m);
      for (int k = 0; k < m; ++k) {
        const double t = 2.0 * kPi * (k + 0.5) / m;
        const Complex nu(std::cos(t), std::sin(t));
        out.push_back({A.center() + A.radius() * nu, nu,
                       2.0 * kPi * A.radius() / m});
      }
      return out;
    }
    case Region::Kind::Polygon: {
      const auto& v = A.vertices();
      double total = 0.0;
      for (size_t i = 0; i < v.size(); ++i)
        total += std::abs(v[(i + 1) % v.size()] - v[i]);
      const auto& gl = gauss_legendre(16);
      for (size_t i = 0; i < v.size(); ++i) {
        const Complex a = v[i];
        const Complex b = v[(i + 1) % v.size()];
        const double len = std::abs(b - a);
        const Complex tangent = (b - a) / len;
        const Complex nu = Complex(0, -1) * tangent;  // outward for ccw
        const int panels = std::max<int>(
            1, static_cast<int>(std::ceil(len / total * min_samples / 16.0)));
        for (int p = 0; p < panels; ++p) {
          const double lo = static_cast<double>(p) / panels;
          const double hi = static_cast<double>(p + 1) / panels;
          const double h = 0.5 * (hi - lo) * len;
          for (int q = 0; q < gl.x.size(); ++q) {
            const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.x[q];
            out.push_back({a + s * (b - a), nu, h * gl.w[q]});
          }
        }
      }
      return out;
    }
    case Region::Kind::DropletDilation:
      throw UnsupportedError("boundary samples: resolve the dilation first");
  }
  return out;
}

double perimeter(const Region& A) {
  switch (A.kind()) {
    case Region::Kind::Disc:
      return 2.0 * kPi * A.radius();
    case Region::Kind::Polygon: {
      KahanSum s;
      const auto& v = A.vertices();
      for (size_t i = 0; i < v.size(); ++i)
        s.add(std::abs(v[(i + 1) % v.size()] - v[i]));
      return s.value();
    }
    case Region::Kind::DropletDilation:
      throw UnsupportedError(
          "perimeter of a droplet dilation: use the edge machinery");
  }
  return 0.0;
}

double weighted_perimeter(const Region& A, const Potential& P) {
  double prev = 0.0;
  for (int m = 4096;; m *= 2) {
    KahanSum acc;
    for (const BoundarySample& s : boundary_samples(A, m)) {
      const double dq = P.quarter_laplacian(s.point);
      if (!(dq > 0.0))
        throw HypothesisError(
            "weighted perimeter: quarter Laplacian not positive on the "
            "boundary");
      acc.add(std::sqrt(dq) * s.weight);
    }
    const double val = acc.value();
    if (m > 4096 && std::abs(val - prev) <= 1e-9 * std::abs(val)) return val;
    if (m > (1 << 20))
      throw QuadratureError("weighted perimeter did not stabilize");
    prev = val;
  }
}

Region dilated_droplet(const Droplet& D, const Potential& P, double delta,
                       int n) {
  // Injectivity of the normal offset: curvature * |offset| must stay < 1.
  double dq_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 64; ++k) {
    const double dq = P.quarter_laplacian(D.boundary_point(2.0 * kPi * k / 64));
    if (!(dq > 0.0))
      throw HypothesisError(
          "dilated droplet: quarter Laplacian not positive on the boundary");
    dq_min = std::min(dq_min, dq);
  }
  if (D.max_curvature() * std::abs(delta) / std::sqrt(2.0 * n * dq_min) >= 1.0)
    throw DomainError("dilated droplet: n too small for this delta");

  if (D.shape() == Droplet::Shape::Disc) {
    const double R = D.radius();
    const double r =
        R + delta / std::sqrt(2.0 * n * P.quarter_laplacian(Complex(R, 0.0)));
    if (!(r > 0.0))
      throw DomainError("dilated droplet: offset exceeds the radius");
    return Region::disc(Complex(0, 0), r);
  }

  const int m = 8192;
  std::vector<Complex> pts;
  pts.reserve(m);
  for (int k = 0; k < m; ++k) {
    const double t = 2.0 * kPi * k / m;
    const Complex p = D.boundary_point(t);
    const double dq = P.quarter_laplacian(p);
    pts.push_back(p + delta / std::sqrt(2.0 * n * dq) * D.outward_normal(t));
  }
  return Region::polygon(std::move(pts));
}

double jacobian_h(const Droplet& D, const Potential& P, Complex z0, double xi,
                  int n) {
  const double t = D.nearest_boundary_param(z0);
  if (std::abs(D.boundary_point(t) - z0) > 1e-8)
    throw DomainError("jacobian: point is not on the droplet boundary");
  const double s = std::sqrt(2.0 * n * P.quarter_laplacian(z0));
  return std::abs(D.map_derivative(z0)) / s * (1.0 - D.curvature(t) * xi / s);
}

}  // namespace rnm
