#include "faberpade/faber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/FFT>

#include "faberpade/errors.hpp"
#include "faberpade/rate_fit.hpp"

namespace faberpade {

namespace {

constexpr double kResolvedFloor = 1e-13;
constexpr double kDivergenceFloor = 1e-10;

cplx tail_coeff(const LaurentMap& l, int k) {
  if (k < 1 || k > static_cast<int>(l.tail.size())) return {};
  return l.tail[static_cast<size_t>(k - 1)];
}

}  // namespace

FaberBasis::FaberBasis(Domain domain, int max_degree) : domain_(std::move(domain)) {
  if (max_degree < 0) throw PreconditionError("max_degree must be non-negative");
  const LaurentMap& l = domain_.laurent_form();
  const ComplexPoly shift{-l.c0, 1.0};
  polys_.reserve(static_cast<size_t>(max_degree) + 1);
  polys_.push_back(ComplexPoly::constant(1.0));
  for (int n = 1; n <= max_degree; ++n) {
    ComplexPoly next = shift * polys_[static_cast<size_t>(n - 1)];
    for (int k = 1; k <= n - 1; ++k) {
      const cplx c = tail_coeff(l, k);
      if (c != cplx{}) next -= c * polys_[static_cast<size_t>(n - 1 - k)];
    }
    next -= ComplexPoly::constant(static_cast<double>(n - 1) * tail_coeff(l, n - 1));
    polys_.push_back(next * (1.0 / l.cap));
  }
}

std::vector<cplx> FaberBasis::expand(const ComplexPoly& p) const {
  if (p.degree() > max_degree())
    throw PreconditionError("polynomial degree exceeds the Faber basis size");
  std::vector<cplx> out(static_cast<size_t>(std::max(p.degree(), 0)) + 1);
  std::vector<cplx> rest = p.coeffs();
  for (int d = p.degree(); d >= 0; --d) {
    const ComplexPoly& phi = polys_[static_cast<size_t>(d)];
    const cplx beta = rest[static_cast<size_t>(d)] / phi.leading();
    out[static_cast<size_t>(d)] = beta;
    for (int j = 0; j <= d; ++j) rest[static_cast<size_t>(j)] -= beta * phi[j];
  }
  return out;
}

FaberBasis faber_polynomials(const Domain& domain, int max_degree) {
  return FaberBasis(domain, max_degree);
}

std::vector<cplx> faber_values(const Domain& domain, cplx z, int max_degree) {
  const LaurentMap& l = domain.laurent_form();
  std::vector<cplx> v(static_cast<size_t>(std::max(max_degree, 0)) + 1);
  v[0] = 1.0;
  for (int n = 1; n <= max_degree; ++n) {
    cplx acc = (z - l.c0) * v[static_cast<size_t>(n - 1)];
    const int kmax = std::min<int>(n - 1, static_cast<int>(l.tail.size()));
    for (int k = 1; k <= kmax; ++k) acc -= tail_coeff(l, k) * v[static_cast<size_t>(n - 1 - k)];
    acc -= static_cast<double>(n - 1) * tail_coeff(l, n - 1);
    v[static_cast<size_t>(n)] = acc / l.cap;
  }
  return v;
}

std::vector<cplx> FaberCoefficients::values() const {
  std::vector<cplx> out(raw_.size());
  for (int n = 0; n < count(); ++n) out[static_cast<size_t>(n)] = (*this)[n];
  return out;
}

bool FaberCoefficients::resolved(int n) const {
  double peak = 0.0;
  for (const cplx c : raw_) peak = std::max(peak, std::abs(c));
  return std::abs(raw_.at(static_cast<size_t>(n))) > kResolvedFloor * peak;
}

int default_node_count(int count) {
  const int want = std::max(512, 8 * (count + 16));
  int n = 1;
  while (n < want) n <<= 1;
  return n;
}

double default_rho(const Domain& domain, std::span<const cplx> singularities) {
  double nearest = std::numeric_limits<double>::infinity();
  for (const cplx s : singularities) nearest = std::min(nearest, domain.level(s));
  if (!std::isfinite(nearest)) return 2.0;
  return std::sqrt(nearest);
}

std::vector<cplx> fourier_coefficients(std::span<const cplx> samples) {
  Eigen::FFT<double> fft;
  std::vector<cplx> in(samples.begin(), samples.end());
  std::vector<cplx> out;
  fft.fwd(out, in);
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (cplx& c : out) c *= inv;
  return out;
}

FaberCoefficients faber_coefficients(const Domain& domain, const std::function<cplx(cplx)>& g,
                                     double rho, int count, int node_count) {
  if (count < 1) throw PreconditionError("coefficient count must be positive");
  const int nodes = node_count > 0 ? node_count : default_node_count(count);
  if (!is_power_of_two(nodes) || nodes < 8)
    throw PreconditionError("node_count must be a power of two >= 8");
  if (count >= nodes / 2) throw PreconditionError("count must be below node_count/2");

  const ContourSample contour = sample_level_curve(domain, rho, nodes);
  std::vector<cplx> samples;
  samples.reserve(static_cast<size_t>(nodes));
  for (const ContourNode& node : contour.nodes) {
    const cplx v = g(node.t);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw QuadratureDivergence("non-finite sample on the level curve");
    samples.push_back(v);
  }
  std::vector<cplx> raw = fourier_coefficients(samples);

  double peak = 0.0;
  for (const cplx c : raw) peak = std::max(peak, std::abs(c));
  double nyquist_band = 0.0;
  for (int k = nodes / 2 - nodes / 8; k < nodes / 2 + nodes / 8; ++k)
    nyquist_band = std::max(nyquist_band, std::abs(raw[static_cast<size_t>(k)]));
  if (peak > 0.0 && nyquist_band > kDivergenceFloor * peak)
    throw QuadratureDivergence(
        "Fourier coefficients do not decay on the level curve; rho is too close to or beyond "
        "the nearest singularity, or the grid is too coarse");

  raw.resize(static_cast<size_t>(count));
  return FaberCoefficients(std::move(raw), rho, nodes);
}

cplx faber_partial_sum(const FaberBasis& basis, const FaberCoefficients& coeffs, int degree,
                       cplx z) {
  if (degree < 0) return {};
  if (degree > basis.max_degree() || degree >= coeffs.count())
    throw PreconditionError("partial-sum degree exceeds the available basis or coefficients");
  const std::vector<cplx> phi = faber_values(basis.domain(), z, degree);
  cplx acc{};
  for (int n = degree; n >= 0; --n) acc += coeffs[n] * phi[static_cast<size_t>(n)];
  return acc;
}

double estimate_rho0(const FaberCoefficients& coeffs) {
  if (coeffs.count() < 32) throw TooFewCoefficients("estimate_rho0 needs at least 32 coefficients");
  std::vector<double> ns;
  std::vector<double> mags;
  for (int n = 1; n < coeffs.count(); ++n) {
    if (!coeffs.resolved(n)) continue;
    ns.push_back(n);
    mags.push_back(std::exp(coeffs.scaled(n).log_abs()));
  }
  if (ns.size() < 8) return std::numeric_limits<double>::infinity();
  const RateFit fit = fit_geometric_rate(ns, mags);
  if (fit.all_zero || fit.rate <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / fit.rate;
}

}  // namespace faberpade
