// faberpade <config-path> [--out DIR] [--nodes N] [--rho R] [--seed-check]
//
// Exit status: 0 success, 1 config or expression error, 2 numerical failure
// or violated hypothesis.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "CLI11.hpp"
#include "faberpade/errors.hpp"
#include "faberpade/runner.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int execute(const std::string& config_path, const std::string& out_dir, int nodes, double rho,
            bool seed_check) {
  faberpade::ExperimentConfig cfg;
  try {
    cfg = faberpade::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (nodes > 0) {
      if (!faberpade::is_power_of_two(nodes) || nodes < 8)
        throw faberpade::ConfigError("--nodes must be a power of two >= 8", 0, "nodes");
      cfg.quad.node_count = nodes;
    }
    if (rho > 0.0) {
      if (!(rho > 1.0)) throw faberpade::ConfigError("--rho must exceed 1", 0, "rho");
      cfg.quad.rho = rho;
    }
  } catch (const faberpade::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    const faberpade::RunArtifacts art = faberpade::run(cfg);
    for (const auto& line : art.summary) std::cout << line << "\n";
    if (seed_check) {
      faberpade::ExperimentConfig again = cfg;
      again.output_dir = cfg.output_dir / ".seed-check";
      const faberpade::RunArtifacts second = faberpade::run(again);
      bool identical = true;
      for (const fs::path& p : art.files) {
        if (p.extension() != ".csv") continue;
        if (slurp(p) != slurp(again.output_dir / p.filename())) {
          std::cerr << "seed-check: " << p.filename().string() << " differs between runs\n";
          identical = false;
        }
      }
      fs::remove_all(again.output_dir);
      if (!identical) return 2;
      std::cout << "seed-check: identical\n";
    }
  } catch (const faberpade::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const faberpade::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simultaneous Pade-Faber approximants: solves and convergence experiments"};
  std::string config_path;
  std::string out_dir;
  int nodes = 0;
  double rho = 0.0;
  bool seed_check = false;
  app.add_option("config", config_path, "experiment config file")->required();
  app.add_option("--out", out_dir, "output directory (overrides [output] dir)");
  app.add_option("--nodes", nodes, "quadrature node count (power of two)");
  app.add_option("--rho", rho, "quadrature contour index (> 1)");
  app.add_flag("--seed-check", seed_check, "run twice and compare the CSV outputs byte for byte");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  return execute(config_path, out_dir, nodes, rho, seed_check);
}
