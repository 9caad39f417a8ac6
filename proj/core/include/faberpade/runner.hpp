#pragma once

// Config-driven experiment runs. Every run writes four files into the output
// directory:
//
//   denominators.csv  n,unique,c0_re,c0_im,...,root1_re,root1_im,...
//   rates.csv         n,error rows, then fitted_rate,<v> and predicted_rate,<v>
//   roots_paths.csv   label,n,re,im
//   summary.txt       settings, defaults applied and verdicts
//
// Numbers use 17 significant digits; output depends only on the config.

#include <filesystem>
#include <string>
#include <vector>

#include "faberpade/config.hpp"

namespace faberpade {

struct RunArtifacts {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> summary;
  int exit_status = 0;
};

/// Throws the library errors of the underlying computations.
RunArtifacts run(const ExperimentConfig& config);

/// "%.16e" rendering used in every CSV.
std::string format_number(double x);

}  // namespace faberpade
