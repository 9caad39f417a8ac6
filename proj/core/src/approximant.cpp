#include "faberpade/approximant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "faberpade/errors.hpp"

namespace faberpade {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kMonicTol = 1e-8;

DenominatorMatrix scaled_matrix(const std::vector<std::vector<Scaled>>& rows,
                                std::vector<RowLabel> labels, int n) {
  DenominatorMatrix out;
  out.n = n;
  out.row_labels = std::move(labels);
  const Eigen::Index r_count = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c_count = rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size());
  out.entries = Eigen::MatrixXcd::Zero(r_count, c_count);
  out.row_log_scale.assign(rows.size(), 0.0);
  for (Eigen::Index r = 0; r < r_count; ++r) {
    double top = -std::numeric_limits<double>::infinity();
    for (const Scaled& s : rows[static_cast<size_t>(r)]) top = std::max(top, s.log_abs());
    if (!std::isfinite(top)) top = 0.0;
    out.row_log_scale[static_cast<size_t>(r)] = top;
    for (Eigen::Index c = 0; c < c_count; ++c)
      out.entries(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)].value_shifted(top);
  }
  return out;
}

cplx faber_sum(const Domain& domain, const std::vector<cplx>& coeffs, cplx z) {
  if (coeffs.empty()) return {};
  const std::vector<cplx> phi = faber_values(domain, z, static_cast<int>(coeffs.size()) - 1);
  cplx acc{};
  for (size_t l = coeffs.size(); l-- > 0;) acc += coeffs[l] * phi[l];
  return acc;
}

void check_denominator(const ComplexPoly& q, cplx z) {
  const cplx v = q(z);
  double scale = 0.0;
  double zp = 1.0;
  for (const cplx c : q.coeffs()) {
    scale += std::abs(c) * zp;
    zp *= std::abs(z);
  }
  if (v == cplx{} || std::abs(v) <= 1e-14 * scale)
    throw DenominatorZero("denominator vanishes at the evaluation point");
}

}  // namespace

cplx DenominatorMatrix::value(int r, int c) const {
  return entries(r, c) * std::exp(row_log_scale.at(static_cast<size_t>(r)));
}

DenominatorMatrix denominator_matrix(const SystemExpansion& expansion, int n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  const MultiIndex& m = expansion.multi_index();
  std::vector<std::vector<Scaled>> rows;
  std::vector<RowLabel> labels;
  for (int alpha = 0; alpha < m.size(); ++alpha) {
    const FunctionExpansion& fe = expansion[alpha];
    for (int k = 0; k < m[alpha]; ++k) {
      std::vector<Scaled> row;
      for (int j = 0; j <= m.total(); ++j) row.push_back(fe.coefficient(j + k, n));
      rows.push_back(std::move(row));
      labels.push_back({alpha, k});
    }
  }
  return scaled_matrix(rows, std::move(labels), n);
}

DenominatorMatrix denominator_matrix(const Domain& domain, const FunctionSystem& system,
                                     const MultiIndex& m, int n, const QuadratureSettings& quad) {
  return denominator_matrix(SystemExpansion(domain, system, m, n + 1, quad), n);
}

DenominatorMatrix incomplete_matrix(const FunctionExpansion& expansion, int m, int m_star, int n) {
  if (m_star < 1 || m_star > m) throw PreconditionError("incomplete approximant needs m >= m_star >= 1");
  if (n < 1) throw PreconditionError("n must be >= 1");
  std::vector<std::vector<Scaled>> rows;
  std::vector<RowLabel> labels;
  for (int k = 0; k < m_star; ++k) {
    std::vector<Scaled> row;
    for (int j = 0; j <= m; ++j) row.push_back(expansion.coefficient(j + k, n));
    rows.push_back(std::move(row));
    labels.push_back({0, k});
  }
  return scaled_matrix(rows, std::move(labels), n);
}

DenominatorSolution solve_denominator(const DenominatorMatrix& matrix) {
  const Eigen::MatrixXcd& a = matrix.entries;
  const Eigen::Index cols = a.cols();
  DenominatorSolution out;
  if (cols < 1) throw PreconditionError("empty denominator matrix");

  Eigen::MatrixXcd v;
  Eigen::VectorXd sv;
  if (a.rows() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    v = svd.matrixV();
    sv = svd.singularValues();
  } else {
    v = Eigen::MatrixXcd::Identity(cols, cols);
  }
  out.singular_values.assign(static_cast<size_t>(cols), 0.0);
  for (Eigen::Index i = 0; i < sv.size() && i < cols; ++i) out.singular_values[static_cast<size_t>(i)] = sv(i);
  const double top = out.singular_values.empty() ? 0.0 : out.singular_values[0];
  int rank = 0;
  for (const double s : out.singular_values)
    if (top > 0.0 && s > kRankTol * top) ++rank;
  out.nullity = static_cast<int>(cols) - rank;
  out.unique = out.nullity == 1;

  const Eigen::MatrixXcd null = v.rightCols(out.nullity);
  Eigen::VectorXcd vec;
  Eigen::Index pivot = cols - 1;
  for (; pivot >= 0; --pivot) {
    vec = null * null.row(pivot).adjoint();
    if (vec.norm() > kMonicTol) break;
  }
  if (pivot < 0) {
    pivot = cols - 1;
    vec = null.col(0);
  }
  vec.normalize();
  out.residual = a.rows() > 0 && a.cwiseAbs().maxCoeff() > 0.0
                     ? (a * vec).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff()
                     : 0.0;

  const double vmax = vec.cwiseAbs().maxCoeff();
  const cplx lead = vec(cols - 1);
  if (std::abs(lead) > kMonicTol * vmax) {
    vec /= lead;
    out.normalization = Normalization::Monic;
  } else {
    const cplx p = vec(pivot);
    vec *= std::conj(p) / std::abs(p);
    vec /= vec.cwiseAbs().sum();
    out.normalization = Normalization::UnitSum;
  }
  out.q = ComplexPoly(std::vector<cplx>(vec.data(), vec.data() + vec.size()));
  return out;
}

NumeratorForms numerator(const FunctionExpansion& expansion, const FaberBasis& basis,
                         const FactoredPoly& q, int n, int k) {
  NumeratorForms out;
  if (q.degree() < 0 || n < 1) return out;
  if (basis.max_degree() < n - 1) throw PreconditionError("Faber basis too short for the numerator");
  const FactoredPoly s = q.times_power(k);
  out.faber.resize(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    const cplx c = expansion.product_coefficient(s, l).value();
    out.faber[static_cast<size_t>(l)] = c;
    if (c != cplx{}) out.monomial += c * basis[l];
  }
  return out;
}

ComplexPoly numerator(const Domain& domain, const FunctionSystem& system, const ComplexPoly& q,
                      int n, int alpha, int k, const QuadratureSettings& quad) {
  if (q.is_zero() || n < 1) return {};
  const FunctionExpansion fe(domain, system[alpha], std::max(q.degree(), 0) + k, n + 1, quad);
  const FaberBasis basis(domain, n - 1);
  return numerator(fe, basis, FactoredPoly::plain(q), n, k).monomial;
}

PadeFaberResult simultaneous_pade_faber(const SystemExpansion& expansion, int n,
                                        bool with_numerators) {
  const DenominatorMatrix mat = denominator_matrix(expansion, n);
  const DenominatorSolution sol = solve_denominator(mat);
  PadeFaberResult out{.domain = expansion.domain(),
                      .n = n,
                      .m = expansion.multi_index(),
                      .m_star = std::nullopt,
                      .denominator = sol.q,
                      .normalization = sol.normalization,
                      .numerators = {},
                      .numerator_faber = {},
                      .unique = sol.unique,
                      .singular_values = sol.singular_values,
                      .nullity = sol.nullity,
                      .residual = sol.residual};
  if (with_numerators) {
    const FaberBasis basis(expansion.domain(), n - 1);
    const FactoredPoly q = FactoredPoly::plain(sol.q);
    for (int alpha = 0; alpha < out.m.size(); ++alpha) {
      for (int k = 0; k < out.m[alpha]; ++k) {
        NumeratorForms p = numerator(expansion[alpha], basis, q, n, k);
        out.numerators[{alpha, k}] = std::move(p.monomial);
        out.numerator_faber[{alpha, k}] = std::move(p.faber);
      }
    }
  }
  return out;
}

PadeFaberResult simultaneous_pade_faber(const Domain& domain, const FunctionSystem& system,
                                        const MultiIndex& m, int n,
                                        const QuadratureSettings& quad) {
  return simultaneous_pade_faber(SystemExpansion(domain, system, m, n + 1, quad), n);
}

PadeFaberResult incomplete_pade_faber(const FunctionExpansion& expansion, const Domain& domain,
                                      int m, int m_star, int n, bool with_numerators) {
  const DenominatorMatrix mat = incomplete_matrix(expansion, m, m_star, n);
  const DenominatorSolution sol = solve_denominator(mat);
  PadeFaberResult out{.domain = domain,
                      .n = n,
                      .m = MultiIndex{m},
                      .m_star = m_star,
                      .denominator = sol.q,
                      .normalization = sol.normalization,
                      .numerators = {},
                      .numerator_faber = {},
                      .unique = sol.unique,
                      .singular_values = sol.singular_values,
                      .nullity = sol.nullity,
                      .residual = sol.residual};
  if (with_numerators) {
    const FaberBasis basis(domain, n - 1);
    NumeratorForms p = numerator(expansion, basis, FactoredPoly::plain(sol.q), n, 0);
    out.numerators[{0, 0}] = std::move(p.monomial);
    out.numerator_faber[{0, 0}] = std::move(p.faber);
  }
  return out;
}

PadeFaberResult incomplete_pade_faber(const Domain& domain, const MeromorphicFunction& f, int m,
                                      int m_star, int n, const QuadratureSettings& quad) {
  if (m_star < 1 || m_star > m) throw PreconditionError("incomplete approximant needs m >= m_star >= 1");
  const FunctionExpansion fe(domain, f, m + m_star - 1, n + 1, quad);
  return incomplete_pade_faber(fe, domain, m, m_star, n);
}

cplx evaluate_approximant(const PadeFaberResult& result, int alpha, cplx z, int k) {
  const auto it = result.numerator_faber.find({alpha, k});
  if (it == result.numerator_faber.end())
    throw PreconditionError("no numerator stored for the requested (alpha, k)");
  check_denominator(result.denominator, z);
  return faber_sum(result.domain, it->second, z) / result.denominator(z);
}

DeflatedSolution deflated_denominator(const SystemExpansion& expansion, int n,
                                      const FactoredPoly& base) {
  const MultiIndex& m = expansion.multi_index();
  const int total = m.total();
  if (base.degree() != total) throw PreconditionError("deflation base must have degree |m|");
  const DenominatorMatrix mat = denominator_matrix(expansion, n);
  Eigen::VectorXcd rhs(total);
  int row = 0;
  for (int alpha = 0; alpha < m.size(); ++alpha) {
    for (int k = 0; k < m[alpha]; ++k, ++row) {
      const Scaled r = expansion[alpha].product_coefficient(base.times_power(k), n);
      rhs(row) = -r.value_shifted(mat.row_log_scale[static_cast<size_t>(row)]);
    }
  }
  const Eigen::MatrixXcd lhs = mat.entries.leftCols(total);
  const Eigen::VectorXcd delta = lhs.colPivHouseholderQr().solve(rhs);

  DeflatedSolution out;
  out.delta.assign(delta.data(), delta.data() + delta.size());
  out.delta_norm = delta.size() ? delta.cwiseAbs().maxCoeff() : 0.0;
  out.denominator = base.expanded() + ComplexPoly(out.delta);
  return out;
}

double remainder_sup_error(const SystemExpansion& expansion, int n, const FactoredPoly& base,
                           std::span<const cplx> delta, int alpha, int k,
                           std::span<const cplx> points) {
  const FunctionExpansion& fe = expansion[alpha];
  const int last = expansion.count() - 1;
  if (n > last) throw PreconditionError("expansion table too short for the remainder");
  const FactoredPoly s = base.times_power(k);
  std::vector<Scaled> coeff;
  coeff.reserve(static_cast<size_t>(last - n + 1));
  for (int l = n; l <= last; ++l) {
    Scaled c = fe.product_coefficient(s, l);
    for (size_t j = 0; j < delta.size(); ++j)
      if (delta[j] != cplx{}) c += fe.coefficient(static_cast<int>(j) + k, l) * delta[j];
    coeff.push_back(c);
  }
  const ComplexPoly q = base.expanded() + ComplexPoly(std::vector<cplx>(delta.begin(), delta.end()));
  double worst = 0.0;
  for (const cplx z : points) {
    check_denominator(q, z);
    const std::vector<cplx> phi = faber_values(expansion.domain(), z, last);
    Scaled acc;
    for (int l = last; l >= n; --l) acc += coeff[static_cast<size_t>(l - n)] * phi[static_cast<size_t>(l)];
    acc *= 1.0 / q(z);
    worst = std::max(worst, std::abs(acc.value()));
  }
  return worst;
}

}  // namespace faberpade
