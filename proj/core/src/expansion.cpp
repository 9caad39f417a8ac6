#include "faberpade/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "faberpade/errors.hpp"

namespace faberpade {

namespace {

constexpr int kExpBlock = 8;

std::vector<cplx> series_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, size_t len) {
  std::vector<cplx> out(len);
  for (size_t i = 0; i < std::min(len, a.size()); ++i)
    for (size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<cplx> series_inverse(const std::vector<cplx>& s, size_t len) {
  std::vector<cplx> inv(len);
  inv[0] = 1.0 / s[0];
  for (size_t k = 1; k < len; ++k) {
    cplx acc{};
    for (size_t j = 1; j <= k && j < s.size(); ++j) acc += s[j] * inv[k - j];
    inv[k] = -acc / s[0];
  }
  return inv;
}

int tail_poly_degree(const MeromorphicFunction& f) {
  if (const auto* p = std::get_if<PolynomialTail>(&f.tail())) return std::max(p->poly.degree(), 0);
  return 0;
}

double nearest_level(const Domain& domain, const std::vector<cplx>& points) {
  double out = std::numeric_limits<double>::infinity();
  for (const cplx s : points) out = std::min(out, domain.level(s));
  return out;
}

}  // namespace

ComplexPoly FactoredPoly::expanded() const {
  return cofactor * ComplexPoly::from_roots(roots);
}

int FactoredPoly::degree() const {
  if (cofactor.is_zero()) return -1;
  return cofactor.degree() + static_cast<int>(roots.size());
}

FactoredPoly FactoredPoly::times_power(int k) const {
  return {roots, ComplexPoly::monomial(k) * cofactor};
}

FunctionExpansion::FunctionExpansion(const Domain& domain, const MeromorphicFunction& f,
                                     int max_power, int count, const ExpansionSettings& settings)
    : max_power_(max_power),
      count_(count),
      route_(settings.route),
      basis_(domain, settings.route == CoefficientRoute::Hybrid
                         ? max_power + tail_poly_degree(f)
                         : 0) {
  if (max_power < 0 || count < 1) throw PreconditionError("expansion needs max_power >= 0, count >= 1");
  f.check_holomorphic_on(domain);

  if (route_ == CoefficientRoute::Quadrature) {
    const double limit = nearest_level(domain, f.singularities());
    const double rho = settings.rho.value_or(default_rho(domain, f.singularities()));
    if (rho >= limit) throw BadRho("contour must stay inside the nearest singularity level");
    contour_rho_ = rho;
    const int nodes = settings.node_count > 0 ? settings.node_count : default_node_count(count);
    table_.resize(static_cast<size_t>(max_power) + 1);
    for (int j = 0; j <= max_power; ++j) {
      const auto g = [&f, j](cplx z) { return std::pow(z, j) * f.evaluate(z); };
      const FaberCoefficients fc = faber_coefficients(domain, g, rho, count, nodes);
      auto& row = table_[static_cast<size_t>(j)];
      row.reserve(static_cast<size_t>(count));
      for (int n = 0; n < count; ++n) row.push_back(fc.scaled(n));
    }
    return;
  }

  const LaurentMap& l = domain.laurent_form();
  for (const PoleTerm& term : f.poles()) {
    PoleData p;
    p.location = term.location;
    p.laurent = term.laurent;
    p.w = domain.phi(term.location);
    const int tau = term.order();
    // Taylor coefficients psi_k of Psi at w, k = 1..tau
    std::vector<cplx> psi(static_cast<size_t>(tau) + 1);
    for (int k = 1; k <= tau; ++k) {
      cplx acc = k == 1 ? cplx{l.cap} : cplx{};
      for (size_t jj = 0; jj < l.tail.size(); ++jj) {
        const int j = static_cast<int>(jj) + 1;
        double binom = 1.0;  // binom(j + k - 1, k)
        for (int i = 1; i <= k; ++i) binom = binom * (j + i - 1) / i;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc += l.tail[jj] * sign * binom * std::pow(p.w, -(j + k));
      }
      psi[static_cast<size_t>(k)] = acc;
    }
    p.psi1 = psi[1];
    std::vector<cplx> s(static_cast<size_t>(tau));
    s[0] = 1.0;
    for (int k = 1; k < tau; ++k) s[static_cast<size_t>(k)] = psi[static_cast<size_t>(k + 1)] / p.psi1;
    const std::vector<cplx> inv = series_inverse(s, static_cast<size_t>(tau));
    std::vector<cplx> power(static_cast<size_t>(tau), cplx{});
    power[0] = 1.0;
    for (int q = 1; q <= tau; ++q) {
      power = series_mul(power, inv, static_cast<size_t>(tau));
      p.sigma.emplace_back(power.begin(), power.begin() + q);
    }
    poles_.push_back(std::move(p));
  }
  build_tail_tables(domain, f, settings);
}

void FunctionExpansion::build_tail_tables(const Domain& domain, const MeromorphicFunction& f,
                                          const ExpansionSettings& settings) {
  const int nodes = settings.node_count > 0 ? settings.node_count : default_node_count(count_);
  auto fill = [&](double rho, int n_lo, int n_hi) {
    if (table_.empty()) {
      table_.assign(static_cast<size_t>(max_power_) + 1,
                    std::vector<Scaled>(static_cast<size_t>(count_)));
    }
    for (int j = 0; j <= max_power_; ++j) {
      const auto g = [&f, j](cplx z) { return std::pow(z, j) * f.tail_value(z); };
      const FaberCoefficients fc = faber_coefficients(domain, g, rho, n_hi + 1, nodes);
      for (int n = n_lo; n <= n_hi; ++n)
        table_[static_cast<size_t>(j)][static_cast<size_t>(n)] = fc.scaled(n);
    }
  };

  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, PolynomialTail>) {
          poly_tail_ = t.poly;
        } else if constexpr (std::is_same_v<T, ExpTail>) {
          if (t.scale == cplx{}) {
            poly_tail_ = ComplexPoly::constant(1.0);
            return;
          }
          const double rate = std::abs(t.scale) * domain.capacity();
          const double rho_cap = std::max(1.5, 600.0 / rate);
          for (int lo = 0; lo < count_; lo += kExpBlock) {
            const int hi = std::min(lo + kExpBlock, count_) - 1;
            const double centre = 0.5 * (lo + hi) + 1.0;
            const double rho = settings.rho.value_or(std::min(std::max(1.5, centre / rate), rho_cap));
            contour_rho_ = std::max(contour_rho_, rho);
            fill(rho, lo, hi);
          }
        } else if constexpr (std::is_same_v<T, LogBranch> || std::is_same_v<T, PowBranch>) {
          if (t.coefficient == cplx{}) return;
          const double rho_b = domain.level(t.branch_point);
          const double rho = settings.rho.value_or(
              std::max(std::sqrt(rho_b), rho_b * std::pow(10.0, -4.0 / (count_ + 1))));
          if (rho >= rho_b) throw BadRho("contour must stay inside the branch-point level");
          contour_rho_ = rho;
          fill(rho, 0, count_ - 1);
        }
      },
      f.tail());
}

Scaled FunctionExpansion::pole_power(const PoleData& p, int q, int n) const {
  const std::vector<cplx>& sigma = p.sigma[static_cast<size_t>(q - 1)];
  cplx sum{};
  double binom = 1.0;  // binom(n + i, i)
  cplx w_inv_pow = 1.0;
  for (int i = 0; i < q; ++i) {
    if (i > 0) {
      binom = binom * (n + i) / i;
      w_inv_pow /= p.w;
    }
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * w_inv_pow * sigma[static_cast<size_t>(q - 1 - i)];
  }
  const cplx phase = std::polar(1.0, -static_cast<double>(n + 1) * std::arg(p.w));
  const cplx mant = -std::pow(p.psi1, -q) * sum * phase;
  return Scaled::geometric(mant, std::abs(p.w), n + 1);
}

cplx FunctionExpansion::polynomial_coefficient(const ComplexPoly& p, int n) const {
  if (n > p.degree()) return {};
  return basis_.expand(p)[static_cast<size_t>(n)];
}

Scaled FunctionExpansion::coefficient(int power, int n) const {
  return product_coefficient(FactoredPoly::plain(ComplexPoly::monomial(power)), n);
}

Scaled FunctionExpansion::product_coefficient(const FactoredPoly& s, int n) const {
  if (n < 0 || n >= count_) throw PreconditionError("coefficient index outside the table");
  if (s.degree() > max_power_) throw PreconditionError("multiplier degree exceeds the table");
  if (s.degree() < 0) return {};
  const ComplexPoly full = s.expanded();

  Scaled acc;
  auto add_tail = [&] {
    if (table_.empty()) return;
    for (int j = 0; j <= full.degree(); ++j) {
      const cplx c = full[j];
      if (c != cplx{}) acc += table_[static_cast<size_t>(j)][static_cast<size_t>(n)] * c;
    }
  };
  if (route_ == CoefficientRoute::Quadrature) {
    add_tail();
    return acc;
  }

  ComplexPoly polynomial_part;
  for (const PoleData& p : poles_) {
    int mu = 0;
    std::vector<cplx> others;
    for (const cplx r : s.roots) {
      if (r == p.location) ++mu;
      else others.push_back(r);
    }
    const ComplexPoly reduced = s.cofactor * ComplexPoly::from_roots(others);
    const std::vector<cplx> t = reduced.taylor_shift(p.location);
    auto t_at = [&](int i) { return (i >= 0 && i < static_cast<int>(t.size())) ? t[static_cast<size_t>(i)] : cplx{}; };
    const int tau = static_cast<int>(p.laurent.size());
    // S (z-a)^-r = sum_i t_i (z-a)^(i + mu - r)
    for (int q = 1; q <= tau; ++q) {
      cplx coef{};
      for (int r = q; r <= tau; ++r) coef += p.laurent[static_cast<size_t>(r - 1)] * t_at(r - q - mu);
      if (coef != cplx{}) acc += pole_power(p, q, n) * coef;
    }
    if (n <= full.degree() - 1) {
      std::vector<cplx> e(static_cast<size_t>(std::max(full.degree(), 1)));
      for (int d = 0; d < static_cast<int>(e.size()); ++d)
        for (int r = 1; r <= tau; ++r)
          e[static_cast<size_t>(d)] += p.laurent[static_cast<size_t>(r - 1)] * t_at(d + r - mu);
      polynomial_part += ComplexPoly(ComplexPoly(std::move(e)).taylor_shift(-p.location));
    }
  }
  if (poly_tail_) polynomial_part += full * *poly_tail_;
  const cplx exact = polynomial_coefficient(polynomial_part, n);
  if (exact != cplx{}) acc += Scaled::from(exact);
  add_tail();
  return acc;
}

SystemExpansion::SystemExpansion(const Domain& domain, const FunctionSystem& system,
                                 const MultiIndex& m, int count, const ExpansionSettings& settings)
    : domain_(domain), system_(system), m_(m), count_(count) {
  if (system.size() != m.size())
    throw PreconditionError("multi-index length must match the number of functions");
  functions_.reserve(static_cast<size_t>(system.size()));
  for (int alpha = 0; alpha < system.size(); ++alpha)
    functions_.emplace_back(domain, system[alpha], m.total() + m[alpha] - 1, count, settings);
}

Scaled pole_faber_coefficient(const Domain& domain, cplx a, int q, int n) {
  std::vector<cplx> laurent(static_cast<size_t>(q));
  laurent.back() = 1.0;
  const FunctionExpansion e(domain, MeromorphicFunction({PoleTerm{a, laurent}}), 0, n + 1);
  return e.coefficient(0, n);
}

}  // namespace faberpade
