#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace faberpade {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A violated precondition on an argument (bad degree, m_star > m, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// conformal
class PointInsideDomain : public Error {
 public:
  using Error::Error;
};
class InsideUnitDisk : public Error {
 public:
  using Error::Error;
};
class BadRho : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// faber
class QuadratureDivergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class TooFewCoefficients : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// funcsys
class PoleEvaluation : public Error {
 public:
  using Error::Error;
};
class OnBranchCut : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, int column, std::vector<std::string> expected)
      : Error(format(message, column, expected)),
        column_(column),
        expected_(std::move(expected)) {}

  /// 1-based column of the offending character (one past the end for EOF).
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(const std::string& message, int column,
                            const std::vector<std::string>& expected) {
    std::string out = "col " + std::to_string(column) + ": " + message;
    if (!expected.empty()) {
      out += " (expected one of:";
      for (const auto& e : expected) out += " '" + e + "'";
      out += ")";
    }
    return out;
  }

  int column_;
  std::vector<std::string> expected_;
};

// approximant / analysis
class DenominatorZero : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class ZeroPolynomial : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};
class NonRationalSystem : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};
class InconsistentDeclaration : public Error {
 public:
  using Error::Error;
};
class TooFewSamples : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};
/// A harness was asked to check a convergence result whose hypotheses do not hold.
class HypothesisViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// cli
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line, std::string key)
      : Error("line " + std::to_string(line) + (key.empty() ? "" : " [" + key + "]") +
              ": " + message),
        line_(line),
        key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

}  // namespace faberpade
