#include "rnm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace rnm {

namespace {
constexpr double kPi = std::numbers::pi;
}

double QuadratureGrid::total_weight() const {
  KahanSum s;
  for (const auto& n : nodes) s.add(n.w);
  return s.value();
}

static GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre rule;
  rule.x.resize(n);
  rule.w.resize(n);
  // Newton iteration on P_n, nodes symmetric about 0.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.x[i] = -x;
    rule.w[i] = w;
    rule.x[n - 1 - i] = x;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

const GaussLegendre& gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be positive");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

Rule1D composite_gauss(const std::vector<double>& edges, int order) {
  if (edges.size() < 2)
    throw DomainError("composite_gauss: need at least two edges");
  const GaussLegendre& gl = gauss_legendre(order);
  Rule1D rule;
  rule.edges = edges;
  rule.x.reserve((edges.size() - 1) * order);
  rule.w.reserve((edges.size() - 1) * order);
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    double a = edges[p], b = edges[p + 1];
    if (!(b > a)) throw DomainError("composite_gauss: edges must increase");
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) {
      rule.x.push_back(mid + half * gl.x[i]);
      rule.w.push_back(half * gl.w[i]);
    }
  }
  return rule;
}

std::vector<double> graded_edges(double a, double b, std::vector<double> focus,
                                 double fine, double coarse, double growth) {
  if (!(b > a)) throw DomainError("graded_edges: need b > a");
  if (!(fine > 0.0) || !(coarse >= fine) || !(growth > 1.0))
    throw DomainError("graded_edges: bad width parameters");

  auto width = [&](double x) {
    double h = coarse;
    for (double f : focus)
      h = std::min(h, std::max(fine, (growth - 1.0) * std::abs(x - f)));
    return h;
  };

  // Hard points split [a,b]; each sub-segment is marched left to right with
  // the local width, which shrinks automatically when approaching a focus.
  std::vector<double> hard{a, b};
  for (double f : focus)
    if (f > a + 0.25 * fine && f < b - 0.25 * fine) hard.push_back(f);
  std::sort(hard.begin(), hard.end());
  hard.erase(std::unique(hard.begin(), hard.end(),
                         [&](double u, double v) {
                           return std::abs(u - v) < 0.25 * fine;
                         }),
             hard.end());

  std::vector<double> edges;
  for (size_t s = 0; s + 1 < hard.size(); ++s) {
    double p = hard[s], q = hard[s + 1];
    edges.push_back(p);
    double x = p;
    while (true) {
      double step = width(x);
      if (x + 1.5 * step >= q) break;
      x += step;
      edges.push_back(x);
    }
    // Split the closing gap evenly so no panel exceeds the local width.
    double gap = q - x;
    int parts = std::max(1, (int)std::ceil(gap / width(q) - 1e-9));
    for (int i = 1; i < parts; ++i) edges.push_back(x + gap * i / parts);
  }
  edges.push_back(hard.back());
  return edges;
}

QuadratureGrid polar_grid(Complex center, const Rule1D& radial, int n_angles) {
  if (n_angles < 1) throw DomainError("polar_grid: need n_angles >= 1");
  QuadratureGrid grid;
  grid.nodes.reserve(radial.x.size() * n_angles);
  double dtheta = 2.0 * kPi / n_angles;
  for (size_t i = 0; i < radial.x.size(); ++i) {
    double r = radial.x[i];
    double wr = radial.w[i] * r * dtheta / kPi;
    for (int k = 0; k < n_angles; ++k) {
      double th = dtheta * k;
      grid.nodes.push_back({center + Complex(r * std::cos(th), r * std::sin(th)), wr});
    }
  }
  return grid;
}

QuadratureGrid box_grid(double x0, double x1, double y0, double y1, int nx,
                        int ny) {
  if (!(x1 > x0) || !(y1 > y0)) throw DomainError("box_grid: empty box");
  const GaussLegendre& gx = gauss_legendre(nx);
  const GaussLegendre& gy = gauss_legendre(ny);
  double mx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
  double my = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);
  QuadratureGrid grid;
  grid.nodes.reserve((size_t)nx * ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      grid.nodes.push_back({Complex(mx + hx * gx.x[i], my + hy * gy.x[j]),
                            hx * gx.w[i] * hy * gy.w[j] / kPi});
  return grid;
}

namespace {

double cross2(Complex u, Complex v) {
  return u.real() * v.imag() - u.imag() * v.real();
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  double d1 = cross2(b - a, c - a);
  double d2 = cross2(b - a, d - a);
  double d3 = cross2(d - c, a - c);
  double d4 = cross2(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

bool point_in_triangle(Complex p, Complex a, Complex b, Complex c) {
  double d1 = cross2(b - a, p - a);
  double d2 = cross2(c - b, p - b);
  double d3 = cross2(a - c, p - c);
  return (d1 >= 0 && d2 >= 0 && d3 >= 0) || (d1 <= 0 && d2 <= 0 && d3 <= 0);
}

struct Tri {
  Complex a, b, c;
};

std::vector<Tri> ear_clip(std::vector<Complex> poly) {
  std::vector<Tri> tris;
  while (poly.size() > 3) {
    size_t n = poly.size();
    bool clipped = false;
    for (size_t i = 0; i < n; ++i) {
      Complex prev = poly[(i + n - 1) % n];
      Complex cur = poly[i];
      Complex next = poly[(i + 1) % n];
      if (cross2(cur - prev, next - cur) <= 0) continue;  // reflex corner
      bool ear = true;
      for (size_t j = 0; j < n; ++j) {
        if (j == i || j == (i + n - 1) % n || j == (i + 1) % n) continue;
        if (point_in_triangle(poly[j], prev, cur, next)) {
          ear = false;
          break;
        }
      }
      if (!ear) continue;
      tris.push_back({prev, cur, next});
      poly.erase(poly.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped)
      throw DomainError("polygon_grid: ear clipping failed (degenerate polygon)");
  }
  tris.push_back({poly[0], poly[1], poly[2]});
  return tris;
}

}  // namespace

QuadratureGrid polygon_grid(const std::vector<Complex>& vertices,
                            double max_edge, int order) {
  if (vertices.size() < 3)
    throw DomainError("polygon_grid: need at least three vertices");
  if (!(max_edge > 0)) throw DomainError("polygon_grid: max_edge must be > 0");

  std::vector<Complex> poly = vertices;
  double area2 = 0.0;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) area2 += cross2(poly[i], poly[(i + 1) % n]);
  if (std::abs(area2) < 1e-300)
    throw DomainError("polygon_grid: polygon has zero area");
  if (area2 < 0) std::reverse(poly.begin(), poly.end());

  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j],
                             poly[(j + 1) % n]))
        throw DomainError("polygon_grid: polygon is self-intersecting");
    }
  }

  std::vector<Tri> queue = ear_clip(poly);
  std::vector<Tri> tris;
  while (!queue.empty()) {
    Tri t = queue.back();
    queue.pop_back();
    double longest = std::max({std::abs(t.b - t.a), std::abs(t.c - t.b),
                               std::abs(t.a - t.c)});
    if (longest <= max_edge) {
      tris.push_back(t);
      continue;
    }
    Complex ab = 0.5 * (t.a + t.b), bc = 0.5 * (t.b + t.c),
            ca = 0.5 * (t.c + t.a);
    queue.push_back({t.a, ab, ca});
    queue.push_back({ab, t.b, bc});
    queue.push_back({ca, bc, t.c});
    queue.push_back({ab, bc, ca});
  }

  const GaussLegendre& gl = gauss_legendre(order);
  QuadratureGrid grid;
  grid.nodes.reserve(tris.size() * order * order);
  for (const Tri& t : tris) {
    double area = 0.5 * std::abs(cross2(t.b - t.a, t.c - t.a));
    for (int i = 0; i < order; ++i) {
      double u = 0.5 * (1.0 + gl.x[i]), wu = 0.5 * gl.w[i];
      for (int j = 0; j < order; ++j) {
        double v = 0.5 * (1.0 + gl.x[j]), wv = 0.5 * gl.w[j];
        Complex z = t.a + u * (t.b - t.a) + u * v * (t.c - t.b);
        grid.nodes.push_back({z, wu * wv * u * 2.0 * area / kPi});
      }
    }
  }
  return grid;
}

}  // namespace rnm
