#pragma once

// Faber polynomials of a canonical set and Faber coefficients of analytic
// functions.
//
// With Psi(w) = cap*w + c0 + sum c_k w^-k, the Faber polynomials satisfy
//
//   cap*Phi_n = (z - c0) Phi_{n-1} - sum_{k=1}^{n-1} c_k Phi_{n-1-k} - (n-1) c_{n-1},
//
// and the coefficient functional becomes a Fourier coefficient on |w| = rho:
//
//   [G]_n = rho^-n * (1/2pi) int G(Psi(rho e^{it})) e^{-int} dt.

#include <functional>
#include <span>
#include <vector>

#include "faberpade/conformal.hpp"
#include "faberpade/poly.hpp"
#include "faberpade/scaled.hpp"

namespace faberpade {

class FaberBasis {
 public:
  FaberBasis(Domain domain, int max_degree);

  const Domain& domain() const { return domain_; }
  int max_degree() const { return static_cast<int>(polys_.size()) - 1; }
  const ComplexPoly& operator[](int n) const { return polys_.at(static_cast<size_t>(n)); }
  const std::vector<ComplexPoly>& polys() const { return polys_; }

  /// Faber coefficients of a polynomial of degree <= max_degree (finite expansion).
  std::vector<cplx> expand(const ComplexPoly& p) const;

 private:
  Domain domain_;
  std::vector<ComplexPoly> polys_;
};

FaberBasis faber_polynomials(const Domain& domain, int max_degree);

/// Phi_0(z), ..., Phi_max_degree(z) by the value recurrence. Stable where the
/// monomial coefficients of Phi_n are huge (segments, large n).
std::vector<cplx> faber_values(const Domain& domain, cplx z, int max_degree);

/// [G]_0 .. [G]_{count-1}, stored as the raw Fourier coefficients c_n and the
/// contour index rho; value(n) = rho^-n c_n is formed on demand.
class FaberCoefficients {
 public:
  FaberCoefficients(std::vector<cplx> raw, double rho, int node_count)
      : raw_(std::move(raw)), rho_(rho), node_count_(node_count) {}

  int count() const { return static_cast<int>(raw_.size()); }
  double rho_used() const { return rho_; }
  int node_count() const { return node_count_; }
  const std::vector<cplx>& raw() const { return raw_; }

  Scaled scaled(int n) const { return Scaled::geometric(raw_.at(static_cast<size_t>(n)), rho_, n); }
  cplx operator[](int n) const { return scaled(n).value(); }
  std::vector<cplx> values() const;

  /// Whether c_n stands clear of the quadrature noise floor.
  bool resolved(int n) const;

 private:
  std::vector<cplx> raw_;
  double rho_;
  int node_count_;
};

/// Smallest power of two >= max(512, 8*(count + 16)).
int default_node_count(int count);

/// sqrt(min |Phi(s)|) over the singularities s; 2 when there are none.
double default_rho(const Domain& domain, std::span<const cplx> singularities);

/// Trapezoidal rule on Gamma_rho via one FFT. node_count = 0 selects
/// default_node_count(count). Throws QuadratureDivergence when the sampled
/// function is not resolved by the grid (rho at or beyond rho_0(G), or a
/// singularity on the contour).
FaberCoefficients faber_coefficients(const Domain& domain, const std::function<cplx(cplx)>& g,
                                     double rho, int count, int node_count = 0);

/// Raw Fourier coefficients of samples (forward FFT divided by N).
std::vector<cplx> fourier_coefficients(std::span<const cplx> samples);

/// sum_{n<=degree} [G]_n Phi_n(z)
cplx faber_partial_sum(const FaberBasis& basis, const FaberCoefficients& coeffs, int degree, cplx z);

/// rho_0(G) estimate from the resolved coefficients; +inf when too few are
/// resolved (numerically a polynomial). Throws TooFewCoefficients below 32.
double estimate_rho0(const FaberCoefficients& coeffs);

}  // namespace faberpade
