#pragma once

// Simultaneous Pade-Faber approximants.
//
// For a system F and multi-index m, Q_n (deg <= |m|, not identically zero)
// solves the |m| conditions [Q z^k F_alpha]_n = 0, k < m_alpha. The numerators
// are the truncated Faber expansions
//
//   P_{n,k,alpha} = sum_{l<n} [z^k Q F_alpha]_l Phi_l.

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "faberpade/conformal.hpp"
#include "faberpade/expansion.hpp"
#include "faberpade/funcsys.hpp"
#include "faberpade/poly.hpp"

namespace faberpade {

using QuadratureSettings = ExpansionSettings;

struct RowLabel {
  int alpha;  ///< 0-based function index
  int k;
  friend bool operator==(const RowLabel&, const RowLabel&) = default;
};

/// Row (alpha, k), column j holds [z^{j+k} F_alpha]_n, stored row-scaled:
/// true value = entries(r, c) * exp(row_log_scale[r]).
struct DenominatorMatrix {
  Eigen::MatrixXcd entries;
  std::vector<double> row_log_scale;
  std::vector<RowLabel> row_labels;
  int n = 0;

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
  /// Unscaled entry; may underflow for large n.
  cplx value(int r, int c) const;
};

DenominatorMatrix denominator_matrix(const SystemExpansion& expansion, int n);
DenominatorMatrix denominator_matrix(const Domain& domain, const FunctionSystem& system,
                                     const MultiIndex& m, int n,
                                     const QuadratureSettings& quad = {});
/// m_star x (m + 1) system [z^{j+k} F]_n, k < m_star, of the incomplete variant.
DenominatorMatrix incomplete_matrix(const FunctionExpansion& expansion, int m, int m_star, int n);

enum class Normalization { Monic, UnitSum };

struct DenominatorSolution {
  ComplexPoly q;
  Normalization normalization = Normalization::Monic;
  bool unique = false;
  /// Descending, padded with zeros to the column count.
  std::vector<double> singular_values;
  int nullity = 0;
  /// max |M v| / max |M| for the unit-norm null vector v.
  double residual = 0.0;
};

/// SVD nullspace of the matrix. unique: nullity one at relative rank
/// tolerance 1e-9. The representative is the minimum-norm vector with
/// top coefficient one inside the nullspace (falling back to lower
/// coefficients when the nullspace forces the top one to vanish). Monic when
/// |leading| > 1e-8 max|coeff|, otherwise scaled to unit coefficient sum.
DenominatorSolution solve_denominator(const DenominatorMatrix& matrix);

struct PadeFaberResult {
  Domain domain;
  int n = 0;
  MultiIndex m;
  std::optional<int> m_star;
  ComplexPoly denominator;
  Normalization normalization = Normalization::Monic;
  /// (alpha, k) -> P_{n,k,alpha} in monomial form.
  std::map<std::pair<int, int>, ComplexPoly> numerators;
  /// (alpha, k) -> Faber coefficients of P_{n,k,alpha}; evaluation goes through these.
  std::map<std::pair<int, int>, std::vector<cplx>> numerator_faber;
  bool unique = false;
  std::vector<double> singular_values;
  int nullity = 0;
  double residual = 0.0;
};

struct NumeratorForms {
  ComplexPoly monomial;
  std::vector<cplx> faber;
};

/// P = sum_{l<n} [z^k Q F]_l Phi_l. basis must reach degree n - 1.
NumeratorForms numerator(const FunctionExpansion& expansion, const FaberBasis& basis,
                         const FactoredPoly& q, int n, int k);
ComplexPoly numerator(const Domain& domain, const FunctionSystem& system, const ComplexPoly& q,
                      int n, int alpha, int k, const QuadratureSettings& quad = {});

PadeFaberResult simultaneous_pade_faber(const SystemExpansion& expansion, int n,
                                        bool with_numerators = true);
PadeFaberResult simultaneous_pade_faber(const Domain& domain, const FunctionSystem& system,
                                        const MultiIndex& m, int n,
                                        const QuadratureSettings& quad = {});

/// Requires m >= m_star >= 1.
PadeFaberResult incomplete_pade_faber(const Domain& domain, const MeromorphicFunction& f, int m,
                                      int m_star, int n, const QuadratureSettings& quad = {});
PadeFaberResult incomplete_pade_faber(const FunctionExpansion& expansion, const Domain& domain,
                                      int m, int m_star, int n, bool with_numerators = true);

/// P_{n,k,alpha}(z) / Q(z); k = 0 gives R_{n,alpha}. Throws DenominatorZero.
cplx evaluate_approximant(const PadeFaberResult& result, int alpha, cplx z, int k = 0);

/// Q_n written as base + delta with deg delta < deg base, delta solved from
/// the defining system. When base already satisfies the conditions up to a
/// small defect, the defect is computed directly and delta carries full
/// relative accuracy, far below the accuracy of the plain nullspace solve.
struct DeflatedSolution {
  ComplexPoly denominator;
  std::vector<cplx> delta;
  double delta_norm = 0.0;
};

/// Requires a single-function or simultaneous system with deg base = |m|.
DeflatedSolution deflated_denominator(const SystemExpansion& expansion, int n,
                                      const FactoredPoly& base);

/// sup over points of |P/Q - z^k F_alpha| from the Faber remainder
/// -(1/Q) sum_{l>=n} [z^k Q F_alpha]_l Phi_l, with Q = base + delta and
/// l running to the end of the table. Throws DenominatorZero.
double remainder_sup_error(const SystemExpansion& expansion, int n, const FactoredPoly& base,
                           std::span<const cplx> delta, int alpha, int k,
                           std::span<const cplx> points);

}  // namespace faberpade
