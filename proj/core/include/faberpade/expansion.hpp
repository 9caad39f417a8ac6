#pragma once

// Tables of Faber coefficients [S F_alpha]_n for the polynomial multipliers S
// that the defining linear systems need.
//
// Hybrid route: the rational part is handled exactly. A pole term gives
//
//   [(z - a)^-q]_n = -Res_{w = Phi(a)} w^{-n-1} (Psi(w) - a)^{-q},
//
// a short series in the Taylor data of Psi at Phi(a), and S (z - a)^-r splits
// into a principal part and a polynomial with a finite Faber expansion. Only
// the analytic tail goes through contour quadrature, on a contour chosen per
// tail type. Roots of S given in factored form cancel poles exactly.
//
// Quadrature route: everything by the trapezoidal rule on one level curve,
// with the monomial z^j applied at the nodes.

#include <optional>
#include <vector>

#include "faberpade/conformal.hpp"
#include "faberpade/faber.hpp"
#include "faberpade/funcsys.hpp"
#include "faberpade/poly.hpp"
#include "faberpade/scaled.hpp"

namespace faberpade {

enum class CoefficientRoute { Hybrid, Quadrature };

struct ExpansionSettings {
  CoefficientRoute route = CoefficientRoute::Hybrid;
  /// Contour override. Quadrature route: the level curve used for everything.
  /// Hybrid route: the level curve for branch and exp tails.
  std::optional<double> rho;
  /// 0 selects default_node_count.
  int node_count = 0;
};

/// cofactor * prod (z - roots[i]); roots are matched exactly against pole locations.
struct FactoredPoly {
  std::vector<cplx> roots;
  ComplexPoly cofactor = ComplexPoly::constant(1.0);

  static FactoredPoly plain(ComplexPoly p) { return {{}, std::move(p)}; }
  ComplexPoly expanded() const;
  int degree() const;
  /// z^k times this polynomial.
  FactoredPoly times_power(int k) const;
};

class FunctionExpansion {
 public:
  /// Coefficients with index n < count of z^j F for j <= max_power.
  FunctionExpansion(const Domain& domain, const MeromorphicFunction& f, int max_power, int count,
                    const ExpansionSettings& settings = {});

  int max_power() const { return max_power_; }
  int count() const { return count_; }
  CoefficientRoute route() const { return route_; }
  /// Level curve of the quadrature part; 0 when nothing is integrated numerically.
  double contour_rho() const { return contour_rho_; }

  /// [z^power F]_n
  Scaled coefficient(int power, int n) const;
  /// [S F]_n; requires deg S <= max_power and n < count.
  Scaled product_coefficient(const FactoredPoly& s, int n) const;
  Scaled product_coefficient(const ComplexPoly& s, int n) const {
    return product_coefficient(FactoredPoly::plain(s), n);
  }

 private:
  struct PoleData {
    cplx location;
    std::vector<cplx> laurent;
    cplx w;  // Phi(location)
    // sigma[q-1] holds the first q Taylor coefficients of (S(u))^-q, where
    // Psi(w + u) - a = psi1 * u * S(u).
    std::vector<std::vector<cplx>> sigma;
    cplx psi1;
  };

  Scaled pole_power(const PoleData& p, int q, int n) const;
  cplx polynomial_coefficient(const ComplexPoly& p, int n) const;
  void build_tail_tables(const Domain& domain, const MeromorphicFunction& f,
                         const ExpansionSettings& settings);

  int max_power_;
  int count_;
  CoefficientRoute route_;
  double contour_rho_ = 0.0;
  FaberBasis basis_;
  std::vector<PoleData> poles_;
  std::optional<ComplexPoly> poly_tail_;
  // table_[j][n] = [z^j T]_n for the quadrature part T
  std::vector<std::vector<Scaled>> table_;
};

class SystemExpansion {
 public:
  /// Per-function tables with max_power = |m| + m_alpha - 1 (the largest
  /// multiplier z^k Q in the defining system).
  SystemExpansion(const Domain& domain, const FunctionSystem& system, const MultiIndex& m,
                  int count, const ExpansionSettings& settings = {});

  const Domain& domain() const { return domain_; }
  const FunctionSystem& system() const { return system_; }
  const MultiIndex& multi_index() const { return m_; }
  int count() const { return count_; }
  const FunctionExpansion& operator[](int alpha) const {
    return functions_.at(static_cast<size_t>(alpha));
  }

 private:
  Domain domain_;
  FunctionSystem system_;
  MultiIndex m_;
  int count_;
  std::vector<FunctionExpansion> functions_;
};

/// [(z - a)^-q]_n for a single pole, exactly (no quadrature).
Scaled pole_faber_coefficient(const Domain& domain, cplx a, int q, int n);

}  // namespace faberpade
