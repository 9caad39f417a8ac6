#pragma once

#include <complex>

namespace faberpade {

using cplx = std::complex<double>;

/// Complex number stored as mantissa * exp(log_scale).
///
/// Faber coefficients decay geometrically; at large indices the plain double
/// value underflows long before the information in it is useless. Row scaling
/// in the linear solves works on log_scale directly.
struct Scaled {
  cplx mantissa{};
  double log_scale = 0.0;

  static Scaled from(cplx value);
  /// mantissa * r^(-n) without forming r^(-n).
  static Scaled geometric(cplx mantissa, double r, int n);

  bool is_zero() const { return mantissa == cplx{}; }
  /// log|value|; -inf for zero.
  double log_abs() const;
  /// Plain value; may underflow to zero or overflow.
  cplx value() const;
  /// value * exp(-log_shift), computed without intermediate underflow.
  cplx value_shifted(double log_shift) const;

  Scaled& operator+=(const Scaled& other);
  Scaled& operator*=(cplx factor);
  Scaled& operator*=(const Scaled& other);
};

Scaled operator+(Scaled a, const Scaled& b);
Scaled operator-(Scaled a);
Scaled operator*(Scaled a, cplx b);
Scaled operator*(cplx a, Scaled b);
Scaled operator*(Scaled a, const Scaled& b);

}  // namespace faberpade
