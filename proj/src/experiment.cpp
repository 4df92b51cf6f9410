#include "rnm/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rnm/droplet.hpp"
#include "rnm/edge.hpp"
#include "rnm/geometry.hpp"
#include "rnm/kernel.hpp"
#include "rnm/mc.hpp"
#include "rnm/orthopoly.hpp"
#include "rnm/variance.hpp"
#include "rnm/version.hpp"

namespace rnm {

namespace {

using nlohmann::json;

const char* kCsvHeader =
    "n,mode,region,method,value,normalized,prediction_normalized,gap,"
    "runtime_s";

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void expect_keys(const json& j, const std::set<std::string>& allowed,
                 const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown field \"" + it.key() + "\" in " + where);
}

Complex parse_point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(where + " must be an [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Region make_region(const ExperimentConfig& cfg) {
  if (cfg.region_type == "disc") return Region::disc(cfg.center, cfg.radius);
  if (cfg.region_type == "polygon") return Region::polygon(cfg.vertices);
  throw ConfigError("mode \"" + cfg.mode + "\" needs a region");
}

SampleBatch draw_batch(const Potential& P, int n, int m, std::uint64_t seed) {
  if (P.name() == "ginibre") return sample_ginibre(n, m, seed);
  if (P.is_radial()) return sample_radial_rotation(P, n, m, seed);
  return sample_dpp(Kernel(build_basis(P, n)), m, seed);
}

double exact_variance(const Potential& P, const Region& A, int n) {
  if (P.is_radial() && A.kind() == Region::Kind::Disc &&
      std::abs(A.center()) < 1e-12)
    return variance_radial_exact(P, n, A.radius()).value;
  return variance_quadrature(Kernel(build_basis(P, n)), A).value;
}

std::string fmt_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
  return buf;
}

ResultRow base_row(const ExperimentConfig& cfg, int n) {
  ResultRow row;
  row.n = n;
  row.mode = cfg.mode;
  return row;
}

std::vector<ResultRow> run_bulk(const ExperimentConfig& cfg) {
  auto P = make_potential(cfg);
  Region A = make_region(cfg);
  bool centered_disc =
      A.kind() == Region::Kind::Disc && std::abs(A.center()) < 1e-12;
  std::vector<ResultRow> rows;
  for (int n : cfg.ns) {
    std::string method = cfg.method;
    if (method == "auto")
      method = (P->is_radial() && centered_disc) ? "radial-exact" : "quad";
    ResultRow row = base_row(cfg, n);
    row.region = A.label();
    row.method = method;
    if (method == "radial-exact") {
      if (!P->is_radial() || !centered_disc)
        throw ConfigError(
            "radial-exact needs a radial potential and a centered disc");
      VarianceResult r = variance_radial_exact(*P, n, A.radius());
      row.value = r.value;
      row.normalized = r.normalized;
      row.runtime_s = r.runtime_s;
    } else if (method == "quad") {
      Kernel K(build_basis(*P, n));
      VarianceResult r = variance_quadrature(K, A);
      row.value = r.value;
      row.normalized = r.normalized;
      row.runtime_s = r.runtime_s;
    } else if (method == "mc") {
      auto t0 = std::chrono::steady_clock::now();
      SampleBatch batch = draw_batch(*P, n, cfg.samples, cfg.seed);
      MomentSummary s = count_moments(counts_in_region(batch, A));
      row.value = s.var;
      row.normalized = s.var / std::sqrt(static_cast<double>(n));
      row.runtime_s = since(t0);
    } else {
      throw ConfigError("method \"" + method + "\" does not apply to bulk");
    }
    row.prediction_normalized =
        bulk_prediction(*P, A, n) / std::sqrt(static_cast<double>(n));
    row.gap = row.normalized - row.prediction_normalized;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ResultRow> run_edge(const ExperimentConfig& cfg) {
  auto P = make_potential(cfg);
  Droplet D = droplet_of(*P);
  std::vector<ResultRow> rows;
  for (int n : cfg.ns) {
    for (double delta : cfg.deltas) {
      Region resolved = dilated_droplet(D, *P, delta, n);
      bool disc = resolved.kind() == Region::Kind::Disc;
      std::string method = cfg.method;
      if (method == "auto")
        method = (P->is_radial() && disc) ? "radial-exact" : "mc";
      ResultRow row = base_row(cfg, n);
      row.region = Region::droplet_dilation(delta).label();
      row.method = method;
      if (method == "radial-exact") {
        if (!P->is_radial() || !disc)
          throw ConfigError("radial-exact needs a radial dilated droplet");
        VarianceResult r = variance_radial_exact(*P, n, resolved.radius());
        row.value = r.value;
        row.normalized = r.normalized;
        row.runtime_s = r.runtime_s;
      } else if (method == "quad") {
        Kernel K(build_basis(*P, n));
        VarianceResult r = variance_quadrature(K, resolved);
        row.value = r.value;
        row.normalized = r.normalized;
        row.runtime_s = r.runtime_s;
      } else if (method == "mc") {
        auto t0 = std::chrono::steady_clock::now();
        SampleBatch batch = draw_batch(*P, n, cfg.samples, cfg.seed);
        MomentSummary s = count_moments(counts_in_region(batch, resolved));
        row.value = s.var;
        row.normalized = s.var / std::sqrt(static_cast<double>(n));
        row.runtime_s = since(t0);
      } else {
        throw ConfigError("method \"" + method + "\" does not apply to edge");
      }
      row.prediction_normalized = edge_prediction(*P, D, delta, n) /
                                  std::sqrt(static_cast<double>(n));
      row.gap = row.normalized - row.prediction_normalized;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<ResultRow> run_kernel_asymptotics(const ExperimentConfig& cfg) {
  auto P = make_potential(cfg);
  Droplet D = droplet_of(*P);
  const std::vector<Complex> offsets = {{0, 0},  {0.5, 0}, {-0.5, 0}, {1, 0},
                                        {-1, 0}, {0, 1},   {0, -1}};
  std::vector<ResultRow> rows;
  for (int n : cfg.ns) {
    Kernel K(build_basis(*P, n));
    Complex z0 = D.boundary_point(0.0);
    double sep = 0.5 * std::sqrt(std::log(static_cast<double>(n)) / n);
    for (double s : {0.0, sep}) {
      Complex w0 = D.boundary_point(s);
      EdgeFrame F = make_edge_frame(D, *P, z0, w0);
      for (Complex xi : offsets) {
        for (Complex eta : offsets) {
          auto t0 = std::chrono::steady_clock::now();
          Complex z = edge_probe_z(F, xi, n);
          Complex w = edge_probe_w(F, eta, n);
          double exact =
              std::abs(K.eval(z, w)) / (n * std::sqrt(F.dq_z0 * F.dq_w0));
          double pred = edge_kernel_modulus_prediction(F, xi, eta, n);
          ResultRow row = base_row(cfg, n);
          std::ostringstream os;
          os.precision(6);
          os << "s=" << s << ";xi=" << fmt_complex(xi)
             << ";eta=" << fmt_complex(eta);
          row.region = os.str();
          row.method = "kernel";
          row.value = exact;
          row.normalized = exact;
          row.prediction_normalized = pred;
          row.gap = exact - pred;
          row.runtime_s = since(t0);
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

std::vector<ResultRow> run_identities(const ExperimentConfig& cfg) {
  std::vector<ResultRow> rows;
  auto push = [&](int n, const std::string& name, double residual,
                  double runtime) {
    ResultRow row = base_row(cfg, n);
    row.region = name;
    row.method = "identity";
    row.value = residual;
    row.normalized = residual;
    row.prediction_normalized = 0.0;
    row.gap = residual;
    row.runtime_s = runtime;
    rows.push_back(row);
  };

  auto t0 = std::chrono::steady_clock::now();
  push(0, "f(0)-1/2", f_delta(0.0) - 0.5, since(t0));
  for (double d : {0.4, 1.0, 2.0, 8.0}) {
    t0 = std::chrono::steady_clock::now();
    std::ostringstream os;
    os << "f(" << d << ")+f(-" << d << ")-1";
    push(0, os.str(), f_delta(d) + f_delta(-d) - 1.0, since(t0));
  }
  for (double s : {-4.0, -2.0, 0.0, 2.0, 4.0}) {
    t0 = std::chrono::steady_clock::now();
    auto [numeric, closed] = gauss_erfc_identity(s, 0.0);
    std::ostringstream os;
    os << "gauss-erfc(" << s << ")";
    push(0, os.str(), numeric - closed, since(t0));
  }

  auto P = make_potential(cfg);
  Droplet D = droplet_of(*P);
  int n = cfg.ns.front();
  Kernel K(build_basis(*P, n));

  CounterRng rng(cfg.seed, 0);
  std::vector<Complex> pts;
  for (int i = 0; i < 128; ++i) {
    double r = 0.95 * D.in_radius() * std::sqrt(rng.uniform());
    double t = 2.0 * std::numbers::pi * rng.uniform();
    pts.emplace_back(r * std::cos(t), r * std::sin(t));
  }
  t0 = std::chrono::steady_clock::now();
  double herm = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); i += 2)
    herm = std::max(herm, std::abs(K.eval(pts[i], pts[i + 1]) -
                                   std::conj(K.eval(pts[i + 1], pts[i]))));
  push(n, "hermiticity", herm, since(t0));

  t0 = std::chrono::steady_clock::now();
  int violations = 0;
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    Complex z = pts[i], w = pts[i + 1];
    double floor = -1e-10 * K.eval(z, z).real() * K.eval(w, w).real();
    if (K.pair_intensity(z, w) < floor) ++violations;
  }
  push(n, "cauchy-schwarz-violations", violations, since(t0));

  t0 = std::chrono::steady_clock::now();
  QuadratureGrid grid = gram_default_grid(*P, D, n);
  double trace = 0.0;
  for (const QuadNode& q : grid.nodes) trace += q.w * K.eval(q.z, q.z).real();
  push(n, "trace-minus-n", trace - n, since(t0));

  t0 = std::chrono::steady_clock::now();
  Complex w0 = 0.4 * D.in_radius() * Complex(1.0, 0.5);
  double mass = 0.0;
  for (const QuadNode& q : grid.nodes) mass += q.w * K.berezin(w0, q.z);
  push(n, "berezin-mass-minus-1", mass - 1.0, since(t0));

  return rows;
}

std::vector<ResultRow> run_mc_crosscheck(const ExperimentConfig& cfg) {
  auto P = make_potential(cfg);
  Region A = make_region(cfg);
  std::vector<ResultRow> rows;
  for (int n : cfg.ns) {
    auto t0 = std::chrono::steady_clock::now();
    SampleBatch batch = draw_batch(*P, n, cfg.samples, cfg.seed);
    MomentSummary s = count_moments(counts_in_region(batch, A));
    ResultRow row = base_row(cfg, n);
    row.region = A.label();
    row.method = "mc";
    row.value = s.var;
    row.normalized = s.var / std::sqrt(static_cast<double>(n));
    row.prediction_normalized =
        exact_variance(*P, A, n) / std::sqrt(static_cast<double>(n));
    row.gap = row.normalized - row.prediction_normalized;
    row.runtime_s = since(t0);
    rows.push_back(row);
  }
  return rows;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ConfigError("bad number \"" + s + "\" in " + where);
  return v;
}

const char* law_id(const std::string& mode) {
  if (mode == "bulk") return "boundary-variance-sqrt-n";
  if (mode == "edge") return "dilated-boundary-variance-sqrt-n";
  if (mode == "kernel-asymptotics") return "edge-kernel-erfc-profile";
  if (mode == "identities") return "profile-function-identities";
  return "sampling-crosscheck";
}

}  // namespace

std::unique_ptr<Potential> make_potential(const ExperimentConfig& cfg) {
  if (cfg.family == "ginibre") return std::make_unique<Ginibre>();
  if (cfg.family == "elliptic-ginibre")
    return std::make_unique<EllipticGinibre>(cfg.tau);
  if (cfg.family == "radial-power")
    return std::make_unique<RadialPower>(cfg.power, cfg.coeff);
  throw ConfigError("unknown potential family \"" + cfg.family + "\"");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  expect_keys(j,
              {"mode", "potential", "n", "region", "deltas", "method", "seed",
               "samples", "out", "jobs"},
              "config");

  ExperimentConfig cfg;
  if (!j.contains("mode") || !j["mode"].is_string())
    throw ConfigError("\"mode\" must be a string");
  cfg.mode = j["mode"].get<std::string>();
  static const std::set<std::string> kModes = {
      "bulk", "edge", "kernel-asymptotics", "identities", "mc-crosscheck"};
  if (!kModes.count(cfg.mode))
    throw ConfigError("unknown mode \"" + cfg.mode + "\"");

  if (!j.contains("potential") || !j["potential"].is_object())
    throw ConfigError("\"potential\" must be an object");
  const json& p = j["potential"];
  expect_keys(p, {"family", "tau", "power", "coeff"}, "potential");
  if (!p.contains("family") || !p["family"].is_string())
    throw ConfigError("potential needs a \"family\" string");
  cfg.family = p["family"].get<std::string>();
  if (cfg.family == "ginibre") {
    if (p.size() != 1) throw ConfigError("ginibre takes no parameters");
  } else if (cfg.family == "elliptic-ginibre") {
    if (!p.contains("tau") || !p["tau"].is_number())
      throw ConfigError("elliptic-ginibre needs a numeric \"tau\"");
    cfg.tau = p["tau"].get<double>();
    if (!(cfg.tau > -1.0 && cfg.tau < 1.0))
      throw ConfigError("\"tau\" must lie in (-1, 1)");
    if (p.contains("power") || p.contains("coeff"))
      throw ConfigError("\"tau\" is the only elliptic-ginibre parameter");
  } else if (cfg.family == "radial-power") {
    if (!p.contains("power") || !p["power"].is_number())
      throw ConfigError("radial-power needs a numeric \"power\"");
    cfg.power = p["power"].get<double>();
    if (!(cfg.power > 0.0)) throw ConfigError("\"power\" must be positive");
    if (p.contains("coeff")) {
      if (!p["coeff"].is_number())
        throw ConfigError("\"coeff\" must be a number");
      cfg.coeff = p["coeff"].get<double>();
      if (!(cfg.coeff > 0.0)) throw ConfigError("\"coeff\" must be positive");
    }
    if (p.contains("tau"))
      throw ConfigError("\"tau\" does not apply to radial-power");
  } else {
    throw ConfigError("unknown potential family \"" + cfg.family + "\"");
  }

  if (!j.contains("n")) throw ConfigError("config needs \"n\"");
  auto push_n = [&cfg](const json& v) {
    if (!v.is_number_integer() || v.get<long long>() < 1)
      throw ConfigError("\"n\" entries must be positive integers");
    long long val = v.get<long long>();
    if (val > 100000) throw ConfigError("\"n\" is implausibly large");
    cfg.ns.push_back(static_cast<int>(val));
  };
  if (j["n"].is_array()) {
    if (j["n"].empty()) throw ConfigError("\"n\" must not be empty");
    for (const json& v : j["n"]) push_n(v);
  } else {
    push_n(j["n"]);
  }

  bool needs_region = cfg.mode == "bulk" || cfg.mode == "mc-crosscheck";
  if (j.contains("region")) {
    if (!needs_region)
      throw ConfigError("mode \"" + cfg.mode + "\" does not take a region");
    const json& r = j["region"];
    if (!r.is_object()) throw ConfigError("\"region\" must be an object");
    expect_keys(r, {"type", "center", "radius", "vertices"}, "region");
    if (!r.contains("type") || !r["type"].is_string())
      throw ConfigError("region needs a \"type\"");
    cfg.region_type = r["type"].get<std::string>();
    if (cfg.region_type == "disc") {
      if (!r.contains("radius") || !r["radius"].is_number())
        throw ConfigError("disc region needs a numeric \"radius\"");
      cfg.radius = r["radius"].get<double>();
      if (!(cfg.radius > 0.0))
        throw ConfigError("\"radius\" must be positive");
      if (r.contains("center"))
        cfg.center = parse_point(r["center"], "region center");
      if (r.contains("vertices"))
        throw ConfigError("disc region takes no \"vertices\"");
    } else if (cfg.region_type == "polygon") {
      if (!r.contains("vertices") || !r["vertices"].is_array() ||
          r["vertices"].size() < 3)
        throw ConfigError("polygon region needs at least 3 \"vertices\"");
      for (const json& v : r["vertices"])
        cfg.vertices.push_back(parse_point(v, "polygon vertex"));
      if (r.contains("center") || r.contains("radius"))
        throw ConfigError("polygon region takes only \"vertices\"");
    } else {
      throw ConfigError("unknown region type \"" + cfg.region_type + "\"");
    }
  } else if (needs_region) {
    throw ConfigError("mode \"" + cfg.mode + "\" needs a \"region\"");
  }

  if (j.contains("deltas")) {
    if (cfg.mode != "edge")
      throw ConfigError("\"deltas\" only applies to edge mode");
    if (!j["deltas"].is_array() || j["deltas"].empty())
      throw ConfigError("\"deltas\" must be a non-empty array");
    for (const json& v : j["deltas"]) {
      if (!v.is_number())
        throw ConfigError("\"deltas\" entries must be numbers");
      cfg.deltas.push_back(v.get<double>());
    }
  } else if (cfg.mode == "edge") {
    throw ConfigError("edge mode needs \"deltas\"");
  }

  if (j.contains("method")) {
    if (!j["method"].is_string())
      throw ConfigError("\"method\" must be a string");
    cfg.method = j["method"].get<std::string>();
    static const std::set<std::string> kMethods = {"auto", "quad",
                                                   "radial-exact", "mc"};
    if (!kMethods.count(cfg.method))
      throw ConfigError("unknown method \"" + cfg.method + "\"");
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
      throw ConfigError("\"seed\" must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("samples")) {
    if (!j["samples"].is_number_integer())
      throw ConfigError("\"samples\" must be an integer");
    long long s = j["samples"].get<long long>();
    if (s < 2 || s > 10000000)
      throw ConfigError("\"samples\" must be between 2 and 1e7");
    cfg.samples = static_cast<int>(s);
  }
  if (j.contains("out")) {
    if (!j["out"].is_string() || j["out"].get<std::string>().empty())
      throw ConfigError("\"out\" must be a non-empty string");
    cfg.out = j["out"].get<std::string>();
  }
  if (j.contains("jobs")) {
    if (!j["jobs"].is_number_integer() || j["jobs"].get<int>() < 1)
      throw ConfigError("\"jobs\" must be a positive integer");
    cfg.jobs = j["jobs"].get<int>();
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.mode == "bulk") return run_bulk(cfg);
  if (cfg.mode == "edge") return run_edge(cfg);
  if (cfg.mode == "kernel-asymptotics") return run_kernel_asymptotics(cfg);
  if (cfg.mode == "identities") return run_identities(cfg);
  if (cfg.mode == "mc-crosscheck") return run_mc_crosscheck(cfg);
  throw ConfigError("unknown mode \"" + cfg.mode + "\"");
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  f << kCsvHeader << "\n";
  for (const ResultRow& r : rows) {
    f << r.n << ',' << csv_escape(r.mode) << ',' << csv_escape(r.region)
      << ',' << csv_escape(r.method) << ',' << fmt_double(r.value) << ','
      << fmt_double(r.normalized) << ','
      << fmt_double(r.prediction_normalized) << ',' << fmt_double(r.gap)
      << ',' << fmt_double(r.runtime_s) << "\n";
  }
  if (!f) throw ConfigError("short write to " + path);
}

std::vector<ResultRow> read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw ConfigError(path + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw ConfigError(path + " does not have the expected header");
  std::vector<ResultRow> rows;
  size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> parts = split_csv_line(line);
    std::string where = path + ":" + std::to_string(lineno);
    if (parts.size() != 9)
      throw ConfigError("expected 9 fields in " + where);
    ResultRow r;
    r.n = static_cast<int>(parse_double(parts[0], where));
    r.mode = parts[1];
    r.region = parts[2];
    r.method = parts[3];
    r.value = parse_double(parts[4], where);
    r.normalized = parse_double(parts[5], where);
    r.prediction_normalized = parse_double(parts[6], where);
    r.gap = parse_double(parts[7], where);
    r.runtime_s = parse_double(parts[8], where);
    rows.push_back(r);
  }
  return rows;
}

void write_sidecar(const std::string& path, const ExperimentConfig& cfg) {
  json j;
  j["version"] = kVersion;
  j["git"] = kGitHash;
  j["mode"] = cfg.mode;
  j["law"] = law_id(cfg.mode);
  j["seed"] = cfg.seed;
  j["n"] = cfg.ns;
  json p;
  p["family"] = cfg.family;
  if (cfg.family == "elliptic-ginibre") p["tau"] = cfg.tau;
  if (cfg.family == "radial-power") {
    p["power"] = cfg.power;
    p["coeff"] = cfg.coeff;
  }
  j["potential"] = p;
  if (cfg.mode == "mc-crosscheck" || cfg.method == "mc")
    j["samples"] = cfg.samples;
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  f << j.dump(2) << "\n";
  if (!f) throw ConfigError("short write to " + path);
}

int compare_results(const std::vector<ResultRow>& a,
                    const std::vector<ResultRow>& b, double rel_tol,
                    std::string* report) {
  std::ostringstream os;
  if (a.size() != b.size()) {
    os << "row count mismatch: " << a.size() << " vs " << b.size() << "\n";
    if (report) *report += os.str();
    return 2;
  }
  auto close = [rel_tol](double x, double y) {
    if (std::isnan(x) && std::isnan(y)) return true;
    return std::abs(x - y) <= rel_tol * std::max({1.0, std::abs(x),
                                                  std::abs(y)});
  };
  int rc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const ResultRow& ra = a[i];
    const ResultRow& rb = b[i];
    if (ra.n != rb.n || ra.mode != rb.mode || ra.region != rb.region ||
        ra.method != rb.method) {
      os << "row " << i << ": key mismatch (" << ra.mode << "," << ra.region
         << "," << ra.method << ",n=" << ra.n << ") vs (" << rb.mode << ","
         << rb.region << "," << rb.method << ",n=" << rb.n << ")\n";
      if (report) *report += os.str();
      return 2;
    }
    if (!close(ra.value, rb.value) || !close(ra.normalized, rb.normalized) ||
        !close(ra.prediction_normalized, rb.prediction_normalized)) {
      os << "row " << i << " (" << ra.region << ", n=" << ra.n
         << "): value " << fmt_double(ra.value) << " vs "
         << fmt_double(rb.value) << "\n";
      rc = 1;
    }
  }
  if (report) *report += os.str();
  return rc;
}

}  // namespace rnm
