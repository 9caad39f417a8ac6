#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace faberpade {

using cplx = std::complex<double>;

/// Dense complex polynomial, coefficients in ascending degree.
///
/// Exact-zero leading coefficients are trimmed on construction, so
/// degree() == coeffs().size() - 1 and the leading coefficient is nonzero
/// unless the polynomial is zero (degree -1, empty coefficient list).
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<cplx> coeffs);
  ComplexPoly(std::initializer_list<cplx> coeffs);

  static ComplexPoly constant(cplx c);
  static ComplexPoly monomial(int degree, cplx c = 1.0);
  /// Monic polynomial prod (z - r) over the given roots (with repetition).
  static ComplexPoly from_roots(std::span<const cplx> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  /// Coefficient of z^k; zero beyond the degree.
  cplx operator[](int k) const;
  cplx leading() const;

  cplx operator()(cplx z) const;
  ComplexPoly derivative() const;
  /// Coefficients of the same polynomial in powers of (z - a).
  std::vector<cplx> taylor_shift(cplx a) const;

  /// Drops leading coefficients with |c| <= rel_tol * max|c|.
  ComplexPoly trimmed(double rel_tol) const;
  ComplexPoly monic() const;

  /// Coefficient norm: largest coefficient modulus.
  double norm() const;

  ComplexPoly& operator+=(const ComplexPoly& other);
  ComplexPoly& operator-=(const ComplexPoly& other);
  ComplexPoly& operator*=(cplx factor);

  friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
  friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
  friend ComplexPoly operator*(ComplexPoly a, cplx b) { return a *= b; }
  friend ComplexPoly operator*(cplx a, ComplexPoly b) { return b *= a; }
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
  friend bool operator==(const ComplexPoly&, const ComplexPoly&) = default;

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

/// Coefficient-norm distance ||a - b||.
double distance(const ComplexPoly& a, const ComplexPoly& b);

std::string to_string(const ComplexPoly& p);

}  // namespace faberpade
