#include <cctype>
#include <cmath>
#include <algorithm>
#include <optional>

#include "faberpade/errors.hpp"
#include "faberpade/funcsys.hpp"

namespace faberpade {

namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : s_(text) {}

  MeromorphicFunction parse() {
    skip_ws();
    if (at_end()) fail("empty expression", {"term"});
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1.0 : 1.0;
    for (;;) {
      term(sign);
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("unexpected character", {"+", "-", "end of input"});
      sign = take() == '-' ? -1.0 : 1.0;
    }
    std::vector<PoleTerm> poles;
    for (PoleTerm& p : poles_) {
      while (!p.laurent.empty() && p.laurent.back() == cplx{}) p.laurent.pop_back();
      if (!p.laurent.empty()) poles.push_back(std::move(p));
    }
    return MeromorphicFunction(std::move(poles), tail_.value_or(NoTail{}));
  }

 private:
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  char take() {
    const char c = peek();
    ++pos_;
    return c;
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  int column() const { return static_cast<int>(pos_) + 1; }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) {
    skip_ws();
    throw ParseError(msg, column(), std::move(expected));
  }
  void expect(char c, std::vector<std::string> expected = {}) {
    if (peek() != c) {
      if (expected.empty()) expected = {std::string(1, c)};
      fail(at_end() ? "unexpected end of input" : "unexpected character", std::move(expected));
    }
    ++pos_;
  }
  bool keyword(std::string_view kw) {
    skip_ws();
    if (s_.substr(pos_, kw.size()) == kw) {
      pos_ += kw.size();
      return true;
    }
    return false;
  }
  bool looking_at(std::string_view kw) {
    skip_ws();
    return s_.substr(pos_, kw.size()) == kw;
  }

  // real [ 'i' ] | 'i'
  cplx literal() {
    skip_ws();
    if (peek() == 'i') {
      ++pos_;
      return {0.0, 1.0};
    }
    const size_t start = pos_;
    auto digits = [&] {
      size_t n = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, ++n;
      return n;
    };
    size_t nd = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      nd += digits();
    }
    if (nd == 0) {
      pos_ = start;
      fail(at_end() ? "unexpected end of input" : "expected a number", {"number", "i"});
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      const size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    const double v = std::stod(std::string(s_.substr(start, pos_ - start)));
    if (pos_ < s_.size() && s_[pos_] == 'i') {
      ++pos_;
      return {0.0, v};
    }
    return {v, 0.0};
  }

  // literal { sign literal }, terminated by one of the closing characters
  cplx literal_sum() {
    cplx acc = literal();
    while (peek() == '+' || peek() == '-') {
      const double sign = take() == '-' ? -1.0 : 1.0;
      acc += sign * literal();
    }
    return acc;
  }

  // literal | '(' [sign] literal_sum ')'
  cplx coef() {
    if (peek() == '(') {
      ++pos_;
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1.0 : 1.0;
      const cplx v = sign * literal_sum();
      expect(')', {")", "+", "-"});
      return v;
    }
    return literal();
  }

  // 'z' { sign literal }; returns the location a of z - a
  cplx shift() {
    expect('z');
    cplx acc{};
    while (peek() == '+' || peek() == '-') {
      const double sign = take() == '-' ? -1.0 : 1.0;
      acc += sign * literal();
    }
    return cplx{0.0, 0.0} - acc;
  }

  cplx shift_paren() {
    expect('(');
    const cplx a = shift();
    expect(')', {")", "+", "-"});
    return a;
  }

  int integer() {
    skip_ws();
    const size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer", {"integer"});
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  double real_exponent() {
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1.0 : 1.0;
    const int col = column();
    const cplx v = literal();
    if (v.imag() != 0.0) throw ParseError("exponent must be real", col, {"real number"});
    return sign * v.real();
  }

  void set_tail(Tail t, int col) {
    if (tail_) throw ParseError("at most one tail term is allowed", col, {});
    tail_ = std::move(t);
  }

  void add_pole(cplx location, int order, cplx c) {
    auto it = std::find_if(poles_.begin(), poles_.end(),
                           [location](const PoleTerm& p) { return p.location == location; });
    if (it == poles_.end()) it = poles_.insert(poles_.end(), PoleTerm{location, {}});
    auto& laurent = it->laurent;
    if (static_cast<int>(laurent.size()) < order) laurent.resize(static_cast<size_t>(order));
    laurent[static_cast<size_t>(order - 1)] += c;
  }

  void power_tail(cplx c, int col) {
    const cplx b = shift_paren();
    expect('^');
    const int exp_col = column();
    const double p = real_exponent();
    if (std::floor(p) == p)
      throw ParseError("power exponent must be non-integer", exp_col, {"non-integer real"});
    set_tail(PowBranch{b, p, c}, col);
  }

  void poly_tail(cplx c, int col) {
    expect('(');
    std::vector<cplx> coeffs;
    for (;;) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1.0 : 1.0;
      coeffs.push_back(c * sign * (peek() == '(' ? coef() : literal_sum()));
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(')', {")", ",", "+", "-"});
      break;
    }
    set_tail(PolynomialTail{ComplexPoly(std::move(coeffs))}, col);
  }

  void tail_after_coef(cplx c, int col) {
    if (keyword("poly")) return poly_tail(c, col);
    if (keyword("log")) {
      const cplx b = shift_paren();
      return set_tail(LogBranch{b, c}, col);
    }
    if (peek() == '(') return power_tail(c, col);
    fail("expected a tail after '*'", {"poly", "log", "("});
  }

  void term(double sign) {
    const int col = (skip_ws(), column());
    if (keyword("poly")) return poly_tail(sign, col);
    if (keyword("log")) {
      const cplx b = shift_paren();
      return set_tail(LogBranch{b, sign}, col);
    }
    if (keyword("exp")) {
      // the tail is exp(s z) with no coefficient in front
      if (sign != 1.0) {
        pos_ = static_cast<size_t>(col - 1);
        fail("exp tail takes no coefficient or minus sign; write exp(-s*z) for a negative scale", {"+"});
      }
      expect('(');
      double inner = 1.0;
      if (peek() == '-' || peek() == '+') inner = s_[pos_++] == '-' ? -1.0 : 1.0;
      cplx s = 1.0;
      if (peek() != 'z') {
        s = coef();
        expect('*', {"*"});
      }
      expect('z');
      expect(')');
      return set_tail(ExpTail{inner * s}, col);
    }
    if (peek() == '(') {
      const size_t save = pos_++;
      const bool is_shift = peek() == 'z';
      pos_ = save;
      if (is_shift) return power_tail(sign, col);
    }

    const cplx c = sign * coef();
    if (peek() == '/') {
      ++pos_;
      const cplx a = shift_paren();
      int order = 1;
      if (peek() == '^') {
        ++pos_;
        order = integer();
        if (order < 1) fail("pole order must be >= 1", {"positive integer"});
      }
      return add_pole(a, order, c);
    }
    if (peek() == '*') {
      ++pos_;
      return tail_after_coef(c, col);
    }
    fail(at_end() ? "unexpected end of input" : "unexpected character", {"/", "*"});
  }

  std::string_view s_;
  size_t pos_ = 0;
  std::vector<PoleTerm> poles_;
  std::optional<Tail> tail_;
};

}  // namespace

MeromorphicFunction parse_function_expression(std::string_view text) {
  return ExpressionParser(text).parse();
}

}  // namespace faberpade
