#include "faberpade/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "faberpade/errors.hpp"

namespace faberpade {

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ComplexPoly::ComplexPoly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

ComplexPoly ComplexPoly::constant(cplx c) { return ComplexPoly(std::vector<cplx>{c}); }

ComplexPoly ComplexPoly::monomial(int degree, cplx c) {
  if (degree < 0) throw PreconditionError("monomial degree must be non-negative");
  std::vector<cplx> coeffs(static_cast<size_t>(degree) + 1);
  coeffs.back() = c;
  return ComplexPoly(std::move(coeffs));
}

ComplexPoly ComplexPoly::from_roots(std::span<const cplx> roots) {
  std::vector<cplx> coeffs{1.0};
  for (const cplx r : roots) {
    std::vector<cplx> next(coeffs.size() + 1);
    for (size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] += coeffs[i];
      next[i] -= r * coeffs[i];
    }
    coeffs = std::move(next);
  }
  return ComplexPoly(std::move(coeffs));
}

cplx ComplexPoly::operator[](int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<size_t>(k)];
}

cplx ComplexPoly::leading() const { return is_zero() ? cplx{} : coeffs_.back(); }

cplx ComplexPoly::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPoly ComplexPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<cplx> out(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = static_cast<double>(k) * coeffs_[k];
  return ComplexPoly(std::move(out));
}

std::vector<cplx> ComplexPoly::taylor_shift(cplx a) const {
  // Repeated synthetic division by (z - a).
  std::vector<cplx> work = coeffs_;
  const size_t size = work.size();
  for (size_t k = 0; k < size; ++k) {
    for (size_t j = size - 1; j > k; --j) work[j - 1] += a * work[j];
  }
  return work;
}

ComplexPoly ComplexPoly::trimmed(double rel_tol) const {
  const double scale = norm();
  std::vector<cplx> out = coeffs_;
  while (!out.empty() && std::abs(out.back()) <= rel_tol * scale) out.pop_back();
  return ComplexPoly(std::move(out));
}

ComplexPoly ComplexPoly::monic() const {
  if (is_zero()) throw ZeroPolynomial("cannot normalize the zero polynomial");
  return *this * (1.0 / leading());
}

double ComplexPoly::norm() const {
  double out = 0.0;
  for (const cplx c : coeffs_) out = std::max(out, std::abs(c));
  return out;
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

ComplexPoly& ComplexPoly::operator*=(cplx factor) {
  for (cplx& c : coeffs_) c *= factor;
  trim();
  return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ComplexPoly(std::move(out));
}

void ComplexPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

double distance(const ComplexPoly& a, const ComplexPoly& b) { return (a - b).norm(); }

std::string to_string(const ComplexPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os.precision(6);
  for (int k = p.degree(); k >= 0; --k) {
    const cplx c = p[k];
    if (c == cplx{}) continue;
    os << (k == p.degree() ? "" : " + ") << "(" << c.real() << (c.imag() < 0 ? "" : "+")
       << c.imag() << "i)";
    if (k > 0) os << "z^" << k;
  }
  return os.str();
}

}  // namespace faberpade
