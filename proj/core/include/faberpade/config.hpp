#pragma once

// Experiment configuration: a line-based `key = value` format with
// `[section]` headers. '#' starts a comment; values may be double-quoted.
//
//   mode = solve | direct | inverse | incomplete      (default solve)
//   domain = disk <c> <r> | ellipse <c> <a> <b> | segment <a> <b>
//          | laurent <cap> <c0> [<c1> ...]
//   m = 1,1                                           (commas or spaces)
//   n = 5            or   n_min = 10 / n_max = 80 / n_step = 1
//   m_star = 1                                        (incomplete mode)
//   tol = 0.1                                         (inverse verdict margin)
//   f1 = 1/(z-2)                                      (also under [functions])
//
//   [quadrature]  rho = <real>, nodes = <power of two>, route = hybrid | quadrature
//   [declare]     pole = <complex> tau=<int> rho=<r1>[,<r2>...]   ("inf" allowed)
//   [compact]     circle = <center> <radius> <count>  (sup-error sample points)
//   [output]      dir = <path>                        (default "out")
//
// Complex literals: 2, -1.5, 3i, 2+0.5i, 1e-3-2i.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "faberpade/analysis.hpp"
#include "faberpade/conformal.hpp"
#include "faberpade/funcsys.hpp"

namespace faberpade {

enum class Mode { Solve, Direct, Inverse, Incomplete };

struct CompactCircle {
  cplx center;
  double radius = 0.0;
  int count = 0;

  std::vector<cplx> points() const;
};

struct ExperimentConfig {
  Mode mode = Mode::Solve;
  std::string domain_text;
  Domain domain = Domain::disk(0.0, 1.0);
  std::vector<std::string> function_names;
  std::vector<MeromorphicFunction> functions;
  MultiIndex m;
  int n_min = 1;
  int n_max = 1;
  int n_step = 1;
  std::optional<int> m_star;
  double tol = 0.1;
  QuadratureSettings quad;
  std::vector<PoleDeclaration> declarations;
  std::optional<CompactCircle> compact;
  std::filesystem::path output_dir = "out";
  /// "key = value (default)" lines for every default that was filled in.
  std::vector<std::string> defaults_applied;

  FunctionSystem system() const { return FunctionSystem(functions, function_names); }
  std::vector<int> n_values() const { return n_range(n_min, n_max, n_step); }
};

/// Throws ConfigError carrying the 1-based line and the key.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Parses 2, -1.5, 3i, 2+0.5i, 1e-3-2i. Throws PreconditionError.
cplx parse_complex(std::string_view text);

std::string mode_name(Mode mode);

}  // namespace faberpade
