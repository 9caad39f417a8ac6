#pragma once

// Downstream of the solves: roots, system poles and their characteristic
// radii, predicted rates, and the direct and inverse experiment harnesses.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faberpade/approximant.hpp"
#include "faberpade/rate_fit.hpp"

namespace faberpade {

/// All roots with multiplicity: companion-matrix eigenvalues plus one guarded
/// Newton step. Sorted by real part, then imaginary part. Throws ZeroPolynomial
/// for degree < 1.
std::vector<cplx> poly_roots(const ComplexPoly& p);

struct SystemPole {
  cplx xi;
  int tau = 0;
  /// rho_{xi,t} for t = 1..tau; +inf when nothing limits the combination.
  std::vector<double> rho;
  /// Running minima of rho: bold rho_{xi,t}.
  std::vector<double> bold_rho;

  double bold() const { return bold_rho.back(); }
};

enum class Provenance { ComputedRational, DeclaredCatalog };

struct SystemMetadata {
  std::vector<SystemPole> system_poles;
  /// Per function: index of the largest canonical domain where every pole is a
  /// system pole of sufficient order and nothing else is singular.
  std::vector<double> rho_alpha;
  std::vector<double> rho_star;
  /// Monic, zeros = system poles with multiplicity tau.
  ComplexPoly predicted_Q;
  /// Same polynomial with exact roots, for pole cancellation in the harness.
  FactoredPoly predicted_factored;
  /// max |Phi(xi)| / bold rho_xi; 0 when every radius is infinite.
  double predicted_rate = 0.0;
  Provenance provenance = Provenance::ComputedRational;

  int total_order() const;
};

/// Exact (xi, tau, rho_{xi,t}) of a rational system by linear algebra on the
/// principal parts of the combinations sum v_alpha F_alpha, deg v_alpha < m_alpha.
/// Throws NonRationalSystem.
SystemMetadata system_poles_rational(const Domain& domain, const FunctionSystem& system,
                                     const MultiIndex& m);

struct PoleDeclaration {
  cplx xi;
  int tau = 1;
  std::vector<double> rho;  ///< rho_{xi,t}, t = 1..tau; +inf allowed
};

/// Validates hand-derived declarations and derives the remaining values.
/// Declared locations are snapped to the matching pole of the system.
/// Throws InconsistentDeclaration.
SystemMetadata declared_metadata(const Domain& domain, const FunctionSystem& system,
                                 const MultiIndex& m, std::span<const PoleDeclaration> declarations);

struct IndependenceResult {
  bool independent = true;
  /// When dependent: v_alpha with sum v_alpha F_alpha a polynomial; the first
  /// nonzero coefficient is 1.
  std::vector<ComplexPoly> witness;
};

/// Throws NonRationalSystem.
IndependenceResult polynomial_independence(const FunctionSystem& system, const MultiIndex& m);

/// n_min, n_min + n_step, ... <= n_max
std::vector<int> n_range(int n_min, int n_max, int n_step = 1);

struct DenominatorRecord {
  int n = 0;
  bool unique = false;
  Normalization normalization = Normalization::Monic;
  ComplexPoly q;
  std::vector<cplx> roots;
};

struct RootPath {
  std::string label;
  cplx target;
  std::vector<std::pair<int, cplx>> points;
};

/// Follows each start position across the per-n root lists. Equal sizes up to
/// eight use a minimum-cost assignment; otherwise greedy nearest neighbours.
std::vector<RootPath> track_roots(std::span<const cplx> starts, std::span<const std::string> labels,
                                  std::span<const DenominatorRecord> records);

struct DirectOptions {
  QuadratureSettings quad;
  /// Points of a compact K for the sup-error rate; empty skips it.
  std::vector<cplx> compact_points;
  int alpha = 0;
  int k = 0;
  /// Extra coefficients used by the remainder series of the sup error.
  int remainder_terms = 96;
};

struct RateReport {
  std::vector<int> n_values;
  /// ||Q_n - Q^F|| from the deflated solve.
  std::vector<double> errors;
  /// Same quantity from the plain nullspace solve; limited by roundoff.
  std::vector<double> plain_errors;
  RateFit fit;
  double fitted_rate = 0.0;
  double theta_estimate = 0.0;
  double predicted_rate = 0.0;
  std::vector<RootPath> root_paths;
  std::vector<DenominatorRecord> denominators;
  std::vector<double> sup_errors;
  std::optional<RateFit> sup_fit;
  /// ||Phi||_K / rho*_alpha
  double sup_bound = 0.0;
  bool converged = false;
};

/// Requires sum tau = |m| (HypothesisViolation otherwise).
RateReport run_direct_experiment(const Domain& domain, const FunctionSystem& system,
                                 const MultiIndex& m, const SystemMetadata& metadata,
                                 std::span<const int> n_values, const DirectOptions& options = {});

struct InverseVerdict {
  int pole_count = 0;
  ComplexPoly limit_Q;
  std::vector<cplx> limit_roots;
  double theta = 1.0;
  bool converged = false;
  /// Start of the final run of unique solves; empty when shorter than five.
  std::optional<int> n0;
  std::vector<int> fit_n;
  std::vector<double> fit_errors;
  std::vector<DenominatorRecord> denominators;
  std::vector<RootPath> root_paths;
  std::string reason;
};

/// Uses only the computed denominators. theta is the fitted rate of
/// ||Q_n - limit|| over the first three quarters of the stable run; the limit
/// is the last quarter's mean. converged = theta < 1 - tol and deg limit = |m|.
InverseVerdict run_inverse_experiment(const Domain& domain, const FunctionSystem& system,
                                      const MultiIndex& m, std::span<const int> n_values,
                                      const QuadratureSettings& quad = {}, double tol = 0.1);

struct IncompleteReport {
  std::vector<DenominatorRecord> denominators;
  ComplexPoly limit_Q;
  std::vector<cplx> limit_roots;
  std::vector<double> errors;  ///< ||Q_n - Q_last||
  std::optional<RateFit> fit;
  double rho_m_star = 0.0;
  /// Poles of F inside D_{rho_{m*}(F)} and the distance to the nearest limit root.
  std::vector<std::pair<cplx, double>> pole_matches;
};

/// Index of the largest canonical domain in which f has at most count poles
/// (with multiplicity) and no other singularity.
double meromorphy_index(const Domain& domain, const MeromorphicFunction& f, int count);

IncompleteReport run_incomplete_experiment(const Domain& domain, const MeromorphicFunction& f,
                                           int m, int m_star, std::span<const int> n_values,
                                           const QuadratureSettings& quad = {});

/// max over points of |P_{n,k,alpha}/Q_n - z^k f|, evaluated directly.
/// Throws DenominatorZero.
double sup_error_on_compact(const PadeFaberResult& result, int alpha, int k,
                            std::span<const cplx> points, const std::function<cplx(cplx)>& f);

/// Runs body(i) for i in [0, count) on worker threads; rethrows the first exception.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace faberpade
