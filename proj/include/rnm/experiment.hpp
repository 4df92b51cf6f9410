#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rnm/potential.hpp"
#include "rnm/types.hpp"

namespace rnm {

// One validated run request. Field meanings depend on mode:
//   bulk               variance of counts in `region`, n sweep
//   edge               variance in dilated droplets, one row per (n, delta)
//   kernel-asymptotics edge kernel modulus against its erfc profile
//   identities         closed-form and structural residuals
//   mc-crosscheck      sampled count variance against the exact value
struct ExperimentConfig {
  std::string mode;
  std::string family;  // ginibre | elliptic-ginibre | radial-power
  double tau = 0.5;
  double power = 2.0;
  double coeff = 1.0;
  std::vector<int> ns;
  std::string region_type;  // disc | polygon
  Complex center = 0.0;
  double radius = 0.0;
  std::vector<Complex> vertices;
  std::vector<double> deltas;
  std::string method = "auto";  // auto | quad | radial-exact | mc
  std::uint64_t seed = 20260814;
  int samples = 2000;
  std::string out = "results";
  int jobs = 1;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

std::unique_ptr<Potential> make_potential(const ExperimentConfig& cfg);

struct ResultRow {
  int n = 0;
  std::string mode;
  std::string region;
  std::string method;
  double value = 0.0;
  double normalized = 0.0;
  double prediction_normalized = 0.0;
  double gap = 0.0;
  double runtime_s = 0.0;
};

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

void write_csv(const std::string& path, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(const std::string& path);

// Reproducibility sidecar: versions, seed, and a descriptive id of the law
// the mode exercises.
void write_sidecar(const std::string& path, const ExperimentConfig& cfg);

// 0 = match, 1 = tolerance exceeded, 2 = rows or columns do not line up.
// Appends human-readable detail to `report` when non-zero.
int compare_results(const std::vector<ResultRow>& a,
                    const std::vector<ResultRow>& b, double rel_tol,
                    std::string* report);

}  // namespace rnm
