#include "faberpade/scaled.hpp"

#include <cmath>
#include <limits>

namespace faberpade {

namespace {

Scaled normalized(cplx mantissa, double log_scale) {
  const double mag = std::abs(mantissa);
  if (mag == 0.0 || !std::isfinite(mag)) return {mantissa, mag == 0.0 ? 0.0 : log_scale};
  const double shift = std::log(mag);
  return {mantissa / mag, log_scale + shift};
}

}  // namespace

Scaled Scaled::from(cplx value) { return normalized(value, 0.0); }

Scaled Scaled::geometric(cplx mantissa, double r, int n) {
  return normalized(mantissa, -static_cast<double>(n) * std::log(r));
}

double Scaled::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa)) + log_scale;
}

cplx Scaled::value() const { return value_shifted(0.0); }

cplx Scaled::value_shifted(double log_shift) const {
  if (is_zero()) return {};
  return mantissa * std::exp(log_scale - log_shift);
}

Scaled& Scaled::operator+=(const Scaled& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    *this = other;
    return *this;
  }
  if (log_scale >= other.log_scale) {
    *this = normalized(mantissa + other.mantissa * std::exp(other.log_scale - log_scale),
                       log_scale);
  } else {
    *this = normalized(other.mantissa + mantissa * std::exp(log_scale - other.log_scale),
                       other.log_scale);
  }
  return *this;
}

Scaled& Scaled::operator*=(cplx factor) {
  *this = normalized(mantissa * factor, log_scale);
  return *this;
}

Scaled& Scaled::operator*=(const Scaled& other) {
  *this = normalized(mantissa * other.mantissa, log_scale + other.log_scale);
  return *this;
}

Scaled operator+(Scaled a, const Scaled& b) { return a += b; }
Scaled operator-(Scaled a) {
  a.mantissa = -a.mantissa;
  return a;
}
Scaled operator*(Scaled a, cplx b) { return a *= b; }
Scaled operator*(cplx a, Scaled b) { return b *= a; }
Scaled operator*(Scaled a, const Scaled& b) { return a *= b; }

}  // namespace faberpade
