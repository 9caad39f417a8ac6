#include <cmath>
#include <vector>

#include <doctest.h>

#include "faberpade/errors.hpp"
#include "faberpade/rate_fit.hpp"

using namespace faberpade;

TEST_SUITE("rate_fit") {
  TEST_CASE("exact geometric sequence") {
    std::vector<double> n, e;
    for (int i = 5; i <= 40; ++i) {
      n.push_back(i);
      e.push_back(3.0 * std::pow(0.6, i));
    }
    const RateFit f = fit_geometric_rate(n, e);
    CHECK(f.rate == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(f.log_intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
    CHECK_FALSE(f.all_zero);
  }

  TEST_CASE("oscillating errors follow their envelope") {
    // err_n = 0.5^n times a factor in [0.01, 1]: the limsup rate is still 0.5
    std::vector<double> n, e;
    for (int i = 10; i <= 80; ++i) {
      n.push_back(i);
      e.push_back(std::pow(0.5, i) * (i % 3 == 0 ? 1.0 : 0.01));
    }
    CHECK(fit_geometric_rate(n, e).rate == doctest::Approx(0.5).epsilon(0.01));
  }

  TEST_CASE("exact zeros are dropped and all-zero input reports rate zero") {
    std::vector<double> n, e;
    for (int i = 1; i <= 12; ++i) {
      n.push_back(i);
      e.push_back(i % 4 == 0 ? 0.0 : std::pow(0.3, i));
    }
    const RateFit f = fit_geometric_rate(n, e);
    CHECK(f.dropped_zero == 3);
    CHECK(f.rate == doctest::Approx(0.3).epsilon(1e-9));
    std::vector<double> zeros(n.size(), 1e-17);
    const RateFit z = fit_geometric_rate(n, zeros);
    CHECK(z.all_zero);
    CHECK(z.rate == 0.0);
  }

  TEST_CASE("too few samples") {
    const std::vector<double> n{1, 2, 3}, e{0.1, 0.01, 0.001};
    CHECK_THROWS_AS(fit_geometric_rate(n, e), TooFewSamples);
  }
}
