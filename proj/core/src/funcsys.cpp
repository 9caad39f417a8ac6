#include "faberpade/funcsys.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "faberpade/errors.hpp"

namespace faberpade {

namespace {

std::string format_complex(cplx c) {
  std::string out = "(" + format_real(c.real());
  const double im = c.imag();
  out += std::signbit(im) ? "-" : "+";
  out += format_real(std::abs(im)) + "i)";
  return out;
}

// "z-a" written as z followed by signed real and imaginary literals.
std::string format_shift(cplx a) {
  const cplx s = -a;
  std::string out = "z";
  if (s.real() != 0.0 || s.imag() == 0.0) {
    out += std::signbit(s.real()) ? "-" : "+";
    out += format_real(std::abs(s.real()));
  }
  if (s.imag() == 0.0) return out;
  out += std::signbit(s.imag()) ? "-" : "+";
  out += format_real(std::abs(s.imag())) + "i";
  return out;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

cplx branch_log(cplx z, cplx branch_point) {
  const double b_abs = std::abs(branch_point);
  const cplx dir = b_abs > 0.0 ? branch_point / b_abs : cplx{1.0, 0.0};
  const cplx u = (z - branch_point) * std::conj(dir);
  if (u.imag() == 0.0 && u.real() >= 0.0) throw OnBranchCut("point lies on the branch cut");
  // arg(u) taken in (0, 2pi)
  const double arg = std::numbers::pi + std::arg(-u);
  return {std::log(std::abs(z - branch_point)), std::arg(dir) + arg};
}

MeromorphicFunction::MeromorphicFunction(std::vector<PoleTerm> poles, Tail tail)
    : poles_(std::move(poles)), tail_(std::move(tail)) {
  for (size_t i = 0; i < poles_.size(); ++i) {
    const PoleTerm& p = poles_[i];
    if (p.laurent.empty() || p.laurent.back() == cplx{})
      throw PreconditionError("pole term needs a nonzero top Laurent coefficient");
    for (size_t j = 0; j < i; ++j)
      if (poles_[j].location == p.location)
        throw PreconditionError("pole locations must be pairwise distinct");
  }
  if (const auto* poly = std::get_if<PolynomialTail>(&tail_); poly && poly->poly.is_zero())
    tail_ = NoTail{};
  if (const auto* pw = std::get_if<PowBranch>(&tail_)) {
    if (!std::isfinite(pw->exponent) || std::floor(pw->exponent) == pw->exponent)
      throw PreconditionError("power-branch exponent must be a finite non-integer");
  }
}

cplx MeromorphicFunction::rational_value(cplx z) const {
  cplx acc{};
  for (const PoleTerm& p : poles_) {
    const cplx d = z - p.location;
    if (d == cplx{}) throw PoleEvaluation("evaluation at a pole");
    const cplx inv = 1.0 / d;
    cplx pw = inv;
    for (const cplx c : p.laurent) {
      acc += c * pw;
      pw *= inv;
    }
  }
  return acc;
}

cplx MeromorphicFunction::tail_value(cplx z) const {
  return std::visit(
      [z](const auto& t) -> cplx {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, NoTail>) {
          return {};
        } else if constexpr (std::is_same_v<T, PolynomialTail>) {
          return t.poly(z);
        } else if constexpr (std::is_same_v<T, ExpTail>) {
          return std::exp(t.scale * z);
        } else if constexpr (std::is_same_v<T, LogBranch>) {
          if (t.coefficient == cplx{}) return {};
          return t.coefficient * branch_log(z, t.branch_point);
        } else {
          if (t.coefficient == cplx{}) return {};
          return t.coefficient * std::exp(t.exponent * branch_log(z, t.branch_point));
        }
      },
      tail_);
}

cplx MeromorphicFunction::evaluate(cplx z) const { return rational_value(z) + tail_value(z); }

bool MeromorphicFunction::is_rational() const {
  return std::holds_alternative<NoTail>(tail_) || std::holds_alternative<PolynomialTail>(tail_);
}

bool MeromorphicFunction::has_branch_point() const {
  if (const auto* l = std::get_if<LogBranch>(&tail_)) return l->coefficient != cplx{};
  if (const auto* p = std::get_if<PowBranch>(&tail_)) return p->coefficient != cplx{};
  return false;
}

std::vector<cplx> MeromorphicFunction::singularities() const {
  std::vector<cplx> out;
  for (const PoleTerm& p : poles_) out.push_back(p.location);
  if (has_branch_point()) {
    if (const auto* l = std::get_if<LogBranch>(&tail_)) out.push_back(l->branch_point);
    if (const auto* p = std::get_if<PowBranch>(&tail_)) out.push_back(p->branch_point);
  }
  return out;
}

void MeromorphicFunction::check_holomorphic_on(const Domain& domain) const {
  for (const cplx s : singularities()) {
    if (domain.contains(s) || domain.level(s) <= 1.0 + 1e-12)
      throw PreconditionError("singularity " + format_complex(s) +
                              " is not strictly outside the compact set");
  }
}

std::string MeromorphicFunction::to_expression() const {
  std::string out;
  auto append = [&out](const std::string& term) {
    if (!out.empty()) out += "+";
    out += term;
  };
  for (const PoleTerm& p : poles_) {
    for (int r = 1; r <= p.order(); ++r) {
      std::string term = format_complex(p.laurent[static_cast<size_t>(r - 1)]) + "/(" +
                         format_shift(p.location) + ")";
      if (r > 1) term += "^" + std::to_string(r);
      append(term);
    }
  }
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, PolynomialTail>) {
          std::string term = "poly(";
          const auto& c = t.poly.coeffs();
          if (c.empty()) term += format_complex(0.0);
          for (size_t i = 0; i < c.size(); ++i) term += (i ? "," : "") + format_complex(c[i]);
          append(term + ")");
        } else if constexpr (std::is_same_v<T, ExpTail>) {
          append("exp(" + format_complex(t.scale) + "*z)");
        } else if constexpr (std::is_same_v<T, LogBranch>) {
          append(format_complex(t.coefficient) + "*log(" + format_shift(t.branch_point) + ")");
        } else if constexpr (std::is_same_v<T, PowBranch>) {
          append(format_complex(t.coefficient) + "*(" + format_shift(t.branch_point) + ")^" +
                 format_real(t.exponent));
        }
      },
      tail_);
  if (out.empty()) out = "poly(" + format_complex(0.0) + ")";
  return out;
}

std::vector<std::pair<cplx, int>> true_poles(const MeromorphicFunction& f) {
  std::vector<std::pair<cplx, int>> out;
  for (const PoleTerm& p : f.poles()) out.emplace_back(p.location, p.order());
  return out;
}

MultiIndex::MultiIndex(std::vector<int> m) : m_(std::move(m)) {
  if (m_.empty()) throw PreconditionError("multi-index must have at least one entry");
  for (const int v : m_) {
    if (v < 1) throw PreconditionError("multi-index entries must be >= 1");
    total_ += v;
  }
}

FunctionSystem::FunctionSystem(std::vector<MeromorphicFunction> functions,
                               std::vector<std::string> names)
    : functions_(std::move(functions)), names_(std::move(names)) {
  if (functions_.empty()) throw PreconditionError("function system must be non-empty");
  if (names_.empty())
    for (size_t i = 0; i < functions_.size(); ++i) names_.push_back("f" + std::to_string(i + 1));
  if (names_.size() != functions_.size())
    throw PreconditionError("one name per function is required");
}

bool FunctionSystem::is_rational() const {
  for (const auto& f : functions_)
    if (!f.is_rational()) return false;
  return true;
}

std::vector<cplx> FunctionSystem::singularities() const {
  std::vector<cplx> out;
  for (const auto& f : functions_)
    for (const cplx s : f.singularities())
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

void FunctionSystem::check_holomorphic_on(const Domain& domain) const {
  for (const auto& f : functions_) f.check_holomorphic_on(domain);
}

}  // namespace faberpade
