#pragma once

// Systems F = (F_1, ..., F_d) of meromorphic functions: an exact rational part
// plus at most one analytic tail from a small catalog.
//
// Expression grammar accepted by parse_function_expression (whitespace free):
//
//   expr    := [sign] term { sign term }
//   term    := coef '/' shift_p [ '^' int ]          pole term
//            | [ coef '*' ] 'poly(' clist ')'          polynomial tail
//            | 'exp(' [sign] [ coef '*' ] 'z' ')'       exp(s z), no coefficient
//            | [ coef '*' ] 'log(' shift ')'            log branch
//            | [ coef '*' ] shift_p '^' real            power branch, non-integer exponent
//   shift_p := '(' shift ')'
//   shift   := 'z' { sign literal }                     z - a
//   coef    := literal | '(' literal { sign literal } ')'
//   literal := real [ 'i' ] | 'i'
//   clist   := complex { ',' complex }                  complex := [sign] literal { sign literal }
//
// Pole terms at the same location are merged; at most one tail is allowed.

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "faberpade/conformal.hpp"
#include "faberpade/poly.hpp"

namespace faberpade {

/// sum_{r=1}^{tau} laurent[r-1] / (z - location)^r
struct PoleTerm {
  cplx location;
  std::vector<cplx> laurent;

  int order() const { return static_cast<int>(laurent.size()); }
  friend bool operator==(const PoleTerm&, const PoleTerm&) = default;
};

struct NoTail {
  friend bool operator==(const NoTail&, const NoTail&) = default;
};
struct PolynomialTail {
  ComplexPoly poly;
  friend bool operator==(const PolynomialTail&, const PolynomialTail&) = default;
};
/// exp(scale * z)
struct ExpTail {
  cplx scale;
  friend bool operator==(const ExpTail&, const ExpTail&) = default;
};
/// coefficient * log(z - branch_point)
struct LogBranch {
  cplx branch_point;
  cplx coefficient;
  friend bool operator==(const LogBranch&, const LogBranch&) = default;
};
/// coefficient * (z - branch_point)^exponent
struct PowBranch {
  cplx branch_point;
  double exponent;
  cplx coefficient;
  friend bool operator==(const PowBranch&, const PowBranch&) = default;
};

using Tail = std::variant<NoTail, PolynomialTail, ExpTail, LogBranch, PowBranch>;

class MeromorphicFunction {
 public:
  MeromorphicFunction() = default;
  /// Validates distinct pole locations, nonzero top Laurent coefficients and
  /// non-integer power exponents. Throws PreconditionError.
  MeromorphicFunction(std::vector<PoleTerm> poles, Tail tail = NoTail{});

  const std::vector<PoleTerm>& poles() const { return poles_; }
  const Tail& tail() const { return tail_; }

  /// Rational part plus tail. Branch cuts are the rays from the branch point
  /// in the direction arg(branch_point), away from 0.
  /// Throws PoleEvaluation at a pole and OnBranchCut on a cut.
  cplx evaluate(cplx z) const;
  cplx operator()(cplx z) const { return evaluate(z); }
  /// Rational part only.
  cplx rational_value(cplx z) const;
  /// Tail only.
  cplx tail_value(cplx z) const;

  /// No tail or a polynomial tail.
  bool is_rational() const;
  /// Branch tail (log or power) with a nonzero coefficient.
  bool has_branch_point() const;
  /// Pole locations, then the branch point if any.
  std::vector<cplx> singularities() const;

  /// Throws PreconditionError unless every singularity lies strictly outside E.
  void check_holomorphic_on(const Domain& domain) const;

  /// Text in the parser grammar; parses back to an equal function.
  std::string to_expression() const;

  friend bool operator==(const MeromorphicFunction&, const MeromorphicFunction&) = default;

 private:
  std::vector<PoleTerm> poles_;
  Tail tail_ = NoTail{};
};

/// Pole locations with exact orders.
std::vector<std::pair<cplx, int>> true_poles(const MeromorphicFunction& f);

/// Throws ParseError with the 1-based column and expected tokens.
MeromorphicFunction parse_function_expression(std::string_view text);

/// Principal value of log(z - b) with the cut along arg(b). Throws OnBranchCut.
cplx branch_log(cplx z, cplx branch_point);

class MultiIndex {
 public:
  MultiIndex() = default;
  /// Every entry must be >= 1. Throws PreconditionError.
  explicit MultiIndex(std::vector<int> m);
  MultiIndex(std::initializer_list<int> m) : MultiIndex(std::vector<int>(m)) {}

  int size() const { return static_cast<int>(m_.size()); }
  int operator[](int alpha) const { return m_.at(static_cast<size_t>(alpha)); }
  const std::vector<int>& values() const { return m_; }
  int total() const { return total_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> m_;
  int total_ = 0;
};

class FunctionSystem {
 public:
  /// names default to f1..fd. Throws PreconditionError when empty.
  explicit FunctionSystem(std::vector<MeromorphicFunction> functions,
                          std::vector<std::string> names = {});

  int size() const { return static_cast<int>(functions_.size()); }
  const MeromorphicFunction& operator[](int alpha) const {
    return functions_.at(static_cast<size_t>(alpha));
  }
  const std::vector<MeromorphicFunction>& functions() const { return functions_; }
  const std::vector<std::string>& names() const { return names_; }

  bool is_rational() const;
  /// Union of the singularities of every member, without duplicates.
  std::vector<cplx> singularities() const;
  void check_holomorphic_on(const Domain& domain) const;

 private:
  std::vector<MeromorphicFunction> functions_;
  std::vector<std::string> names_;
};

/// Shortest decimal rendering that parses back to the same double.
std::string format_real(double x);

}  // namespace faberpade
