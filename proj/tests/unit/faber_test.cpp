#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "faberpade/errors.hpp"
#include "faberpade/faber.hpp"
#include "faberpade/funcsys.hpp"

using namespace faberpade;

namespace {

// Polynomial part of Phi^n for the ellipse Psi(w) = 1.5 w + 0.5/w, from the
// Laurent series Phi(z) = (z + z sqrt(1 - 3/z^2)) / 3 in long double.
// phi[i] is the coefficient of z^{1-i}.
std::vector<std::vector<long double>> ellipse_faber_oracle(int max_n) {
  // keep enough negative powers that truncation never reaches z^0
  const size_t len = static_cast<size_t>(2 * max_n + 4);
  std::vector<long double> phi(len, 0.0L);
  // sqrt(1 - u) = sum binom(1/2, k) (-u)^k with u = 3/z^2
  long double binom = 1.0L;
  for (size_t k = 0; 2 * k < len; ++k) {
    if (k > 0) binom *= (0.5L - static_cast<long double>(k - 1)) / static_cast<long double>(k);
    phi[2 * k] += binom * std::pow(-3.0L, static_cast<long double>(k)) / 3.0L;
  }
  phi[0] += 1.0L / 3.0L;

  // cur[i] is the coefficient of z^{n-i} in Phi^n
  std::vector<std::vector<long double>> out{{1.0L}};
  std::vector<long double> cur(len, 0.0L);
  cur[0] = 1.0L;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<long double> next(len, 0.0L);
    for (size_t i = 0; i < len; ++i)
      for (size_t j = 0; i + j < len; ++j) next[i + j] += cur[i] * phi[j];
    cur = next;
    std::vector<long double> poly(static_cast<size_t>(n + 1));
    for (int d = 0; d <= n; ++d) poly[static_cast<size_t>(d)] = cur[static_cast<size_t>(n - d)];
    out.push_back(poly);
  }
  return out;
}

std::vector<std::vector<double>> chebyshev(int max_n) {
  std::vector<std::vector<double>> t{{1.0}, {0.0, 1.0}};
  for (int n = 2; n <= max_n; ++n) {
    std::vector<double> next(static_cast<size_t>(n) + 1, 0.0);
    for (size_t i = 0; i < t[n - 1].size(); ++i) next[i + 1] += 2.0 * t[n - 1][i];
    for (size_t i = 0; i < t[n - 2].size(); ++i) next[i] -= t[n - 2][i];
    t.push_back(next);
  }
  return t;
}

}  // namespace

TEST_SUITE("faber") {
  TEST_CASE("disk Faber polynomials are shifted monomials") {
    const Domain d = Domain::disk(cplx(0.5, 0.0), 2.0);
    const FaberBasis b = faber_polynomials(d, 8);
    for (int n = 0; n <= 8; ++n) {
      const cplx z(0.3, -1.7);
      CHECK(std::abs(b[n](z) - std::pow((z - 0.5) / 2.0, n)) < 1e-12);
    }
  }

  TEST_CASE("segment Faber polynomials are 2 T_n") {
    const FaberBasis b = faber_polynomials(Domain::segment(-1.0, 1.0), 20);
    const auto t = chebyshev(20);
    CHECK(std::abs(b[2][2] - 4.0) < 1e-14);
    CHECK(std::abs(b[2][0] + 2.0) < 1e-14);
    double worst = 0.0;
    for (int n = 1; n <= 20; ++n) {
      REQUIRE(b[n].degree() == n);
      for (int i = 0; i <= n; ++i) worst = std::max(worst, std::abs(b[n][i] - 2.0 * t[n][static_cast<size_t>(i)]));
      // leading coefficient (1/cap)^n
      CHECK(std::abs(b[n].leading() - std::pow(2.0, n)) <= 1e-12 * std::pow(2.0, n));
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("ellipse Faber polynomials match the Laurent oracle") {
    const FaberBasis b = faber_polynomials(Domain::ellipse(0.0, 2.0, 1.0), 20);
    const auto oracle = ellipse_faber_oracle(20);
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n)
      for (int i = 0; i <= n; ++i)
        worst = std::max(worst, static_cast<double>(std::abs(
                                    static_cast<long double>(b[n][i].real()) - oracle[n][static_cast<size_t>(i)])) +
                                    std::abs(b[n][i].imag()));
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("value recurrence agrees with the polynomials") {
    const Domain d = Domain::laurent(1.0, cplx(0.2, 0.0), {0.3, cplx(0.0, 0.1)});
    const FaberBasis b = faber_polynomials(d, 15);
    const cplx z(1.1, 0.9);
    const std::vector<cplx> v = faber_values(d, z, 15);
    for (int n = 0; n <= 15; ++n) CHECK(std::abs(v[static_cast<size_t>(n)] - b[n](z)) <= 1e-10 * (1.0 + std::abs(v[static_cast<size_t>(n)])));
  }

  TEST_CASE("Faber polynomials on the level curve behave like w^n") {
    // Phi_n(Psi(w)) = w^n + O(w^-1), so the growth on Gamma_rho is rho^n
    const Domain e = Domain::ellipse(0.0, 2.0, 1.0);
    const ContourSample g = sample_level_curve(e, 2.0, 256);
    double peak = 0.0;
    for (const ContourNode& n : g.nodes) peak = std::max(peak, std::abs(faber_values(e, n.t, 64)[64]));
    CHECK(std::abs(std::log(peak) / 64.0 - std::log(2.0)) <= 0.01 * std::log(2.0));
    const cplx z = e.psi(3.0);
    CHECK(std::pow(std::abs(faber_values(e, z, 40)[40]), 1.0 / 40.0) == doctest::Approx(3.0).epsilon(0.01));
  }

  TEST_CASE("expand inverts the basis") {
    const FaberBasis b = faber_polynomials(Domain::ellipse(0.0, 2.0, 1.0), 5);
    const ComplexPoly p = b[3] + cplx(2.0) * b[1] + ComplexPoly::constant(cplx(0.0, 1.0));
    const std::vector<cplx> c = b.expand(p);
    const std::vector<cplx> want{cplx(0.0, 1.0), 2.0, 0.0, 1.0};
    for (size_t i = 0; i < want.size(); ++i) CHECK(std::abs(c[i] - want[i]) < 1e-13);
  }

  TEST_CASE("disk coefficients of a simple pole") {
    const Domain d = Domain::disk(0.0, 1.0);
    const FaberCoefficients fc = faber_coefficients(d, parse_function_expression("1/(z-2)"), std::sqrt(2.0), 101);
    double worst = 0.0;
    for (int n = 0; n <= 100; ++n) worst = std::max(worst, std::abs(fc[n] + std::ldexp(1.0, -(n + 1))));
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("segment coefficients of exp are modified Bessel values") {
    // e^x = I_0(1) + 2 sum I_n(1) T_n(x) and Phi_n = 2 T_n
    const FaberCoefficients fc = faber_coefficients(Domain::segment(-1.0, 1.0), [](cplx z) { return std::exp(z); }, 2.0, 20);
    CHECK(std::abs(fc[0] - std::cyl_bessel_i(0.0, 1.0)) < 1e-14);
    for (int n = 1; n < 20; ++n) CHECK(std::abs(fc[n] - std::cyl_bessel_i(double(n), 1.0)) < 1e-14);
  }

  TEST_CASE("node doubling leaves resolved coefficients unchanged") {
    const Domain e = Domain::ellipse(0.0, 2.0, 1.0);
    const MeromorphicFunction g = parse_function_expression("1/(z-3)+log(z-4i)");
    const double rho = default_rho(e, g.singularities());
    const FaberCoefficients a = faber_coefficients(e, g, rho, 40, 512);
    const FaberCoefficients b = faber_coefficients(e, g, rho, 40, 1024);
    for (int n = 0; n < 40; ++n) CHECK(std::abs(a[n] - b[n]) <= 1e-13 * std::max(1.0, std::abs(a[n])));
  }

  TEST_CASE("partial sums converge inside the level set") {
    const Domain s = Domain::segment(-1.0, 1.0);
    const MeromorphicFunction g = parse_function_expression("1/(z-3)");
    const FaberCoefficients fc = faber_coefficients(s, g, default_rho(s, g.singularities()), 61);
    const FaberBasis b = faber_polynomials(s, 60);
    CHECK(std::abs(faber_partial_sum(b, fc, 60, 0.5) - g(0.5)) <= 1e-8);
  }

  TEST_CASE("rho_0 estimates") {
    const Domain d = Domain::disk(0.0, 1.0);
    const double r_disk = estimate_rho0(faber_coefficients(d, parse_function_expression("1/(z-2)"), 1.5, 64));
    CHECK(r_disk == doctest::Approx(2.0).epsilon(0.02));
    const Domain s = Domain::segment(-1.0, 1.0);
    const double r_seg = estimate_rho0(faber_coefficients(s, parse_function_expression("1/(z-3)"), 3.0, 64));
    CHECK(r_seg == doctest::Approx(3.0 + std::sqrt(8.0)).epsilon(0.02));
    const double r_poly = estimate_rho0(faber_coefficients(d, [](cplx z) { return z * z + 1.0; }, 2.0, 64));
    CHECK(std::isinf(r_poly));
    CHECK_THROWS_AS(estimate_rho0(faber_coefficients(d, [](cplx z) { return z; }, 2.0, 16)), TooFewCoefficients);
  }

  TEST_CASE("unresolved contours are rejected") {
    const Domain d = Domain::disk(0.0, 1.0);
    CHECK_THROWS_AS(faber_coefficients(d, [](cplx z) { return 1.0 / (z - 2.0); }, 2.0, 40), QuadratureDivergence);
    CHECK_THROWS_AS(faber_coefficients(d, [](cplx z) { return 1.0 / (z - 2.0); }, 1.999, 40), QuadratureDivergence);
  }

  TEST_CASE("node count and default rho") {
    CHECK(default_node_count(10) == 512);
    CHECK(default_node_count(100) == 1024);
    const Domain d = Domain::disk(0.0, 1.0);
    const std::vector<cplx> sing{4.0, cplx(0.0, 9.0)};
    CHECK(default_rho(d, sing) == doctest::Approx(2.0));
    CHECK(default_rho(d, std::vector<cplx>{}) == doctest::Approx(2.0));
  }
}
