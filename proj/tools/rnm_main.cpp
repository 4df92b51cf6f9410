#include <Eigen/Core>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rnm/experiment.hpp"
#include "rnm/types.hpp"
#include "rnm/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"counting statistics of random normal matrix ensembles"};
  app.set_version_flag("--version", std::string(rnm::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  long long seed_override = -1;
  int jobs = 0;
  CLI::App* run = app.add_subcommand("run", "run a JSON experiment config");
  run->add_option("config", config_path, "path to the config")->required();
  run->add_option("--out", out_override, "output prefix (overrides config)");
  run->add_option("--seed", seed_override, "RNG seed (overrides config)");
  run->add_option("--jobs", jobs, "threads for dense algebra");

  std::string csv_a, csv_b;
  double rel_tol = 1e-9;
  CLI::App* cmp = app.add_subcommand("compare", "compare two result CSVs");
  cmp->add_option("a", csv_a, "first CSV")->required();
  cmp->add_option("b", csv_b, "second CSV")->required();
  cmp->add_option("--rel-tol", rel_tol, "relative tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      rnm::ExperimentConfig cfg = rnm::load_config(config_path);
      if (!out_override.empty()) cfg.out = out_override;
      if (seed_override >= 0)
        cfg.seed = static_cast<std::uint64_t>(seed_override);
      if (jobs > 0) {
        cfg.jobs = jobs;
      } else if (const char* env = std::getenv("RNM_JOBS")) {
        cfg.jobs = std::max(1, std::atoi(env));
      }
      Eigen::setNbThreads(cfg.jobs);
      std::vector<rnm::ResultRow> rows = rnm::run_experiment(cfg);
      rnm::write_csv(cfg.out + ".csv", rows);
      rnm::write_sidecar(cfg.out + ".json", cfg);
      std::cout << "wrote " << rows.size() << " rows to " << cfg.out
                << ".csv\n";
      return 0;
    }
    std::vector<rnm::ResultRow> ra = rnm::read_csv(csv_a);
    std::vector<rnm::ResultRow> rb = rnm::read_csv(csv_b);
    std::string report;
    int rc = rnm::compare_results(ra, rb, rel_tol, &report);
    if (rc == 0)
      std::cout << "match: " << ra.size() << " rows within " << rel_tol
                << "\n";
    else
      std::cerr << report;
    return rc;
  } catch (const rnm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rnm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
