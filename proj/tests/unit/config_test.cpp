#include <algorithm>
#include <string>

#include <doctest.h>

#include "faberpade/config.hpp"
#include "faberpade/errors.hpp"

using namespace faberpade;

namespace {

ConfigError config_failure(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a config error");
  return ConfigError("", 0, "");
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("full direct configuration") {
    const ExperimentConfig c = parse_config(R"(# criterion-style run
mode = direct
domain = disk 0 1
m = 1
n_min = 10
n_max = 80
n_step = 2

[functions]
f1 = 1/(z-2) + log(z-4)

[quadrature]
nodes = 1024
route = quadrature

[declare]
pole = 2 tau=1 rho=4

[compact]
circle = 0 0.5 64

[output]
dir = "results dir"
)");
    CHECK(c.mode == Mode::Direct);
    CHECK(c.m.values() == std::vector<int>{1});
    CHECK(c.n_values().size() == 36);
    CHECK(c.n_values().back() == 80);
    CHECK(c.functions.size() == 1);
    CHECK(c.quad.node_count == 1024);
    CHECK(c.quad.route == CoefficientRoute::Quadrature);
    REQUIRE(c.declarations.size() == 1);
    CHECK(c.declarations[0].xi == cplx(2.0));
    CHECK(c.declarations[0].rho == std::vector<double>{4.0});
    REQUIRE(c.compact);
    CHECK(c.compact->points().size() == 64);
    CHECK(std::abs(std::abs(c.compact->points()[5]) - 0.5) < 1e-15);
    CHECK(c.output_dir == "results dir");
  }

  TEST_CASE("defaults are recorded") {
    const ExperimentConfig c = parse_config("domain = segment -1 1\nm = 1\nn = 5\nf1 = 1/(z-2)\n");
    CHECK(c.mode == Mode::Solve);
    CHECK(c.n_min == 5);
    CHECK(c.n_max == 5);
    CHECK(c.tol == 0.1);
    CHECK(c.output_dir == "out");
    CHECK(std::find(c.defaults_applied.begin(), c.defaults_applied.end(), "mode = solve") != c.defaults_applied.end());
    CHECK(std::find(c.defaults_applied.begin(), c.defaults_applied.end(), "route = hybrid") != c.defaults_applied.end());
  }

  TEST_CASE("errors carry line and key") {
    const ConfigError missing = config_failure("domain = disk 0 1\nn = 5\nf1 = 1/(z-2)\n");
    CHECK(missing.key() == "m");
    CHECK(missing.line() == 3);

    const ConfigError star = config_failure("mode = incomplete\ndomain = disk 0 1\nm = 2\nn = 5\nf1 = 1/(z-2)\n");
    CHECK(star.key() == "m_star");

    const ConfigError unknown = config_failure("domain = disk 0 1\nm = 1\nn = 5\nf1 = 1/(z-2)\nfoo = 3\n");
    CHECK(unknown.key() == "foo");
    CHECK(unknown.line() == 5);

    const ConfigError expr = config_failure("domain = disk 0 1\nm = 1\nn = 5\nf1 = 1/(z-2\n");
    CHECK(expr.key() == "f1");
    CHECK(expr.line() == 4);
    CHECK(std::string(expr.what()).find("col 7") != std::string::npos);

    CHECK(config_failure("domain = disk 0 1\nm = 1,1\nn = 5\nf1 = 1/(z-2)\n").key() == "m");
    CHECK(config_failure("domain = disk 0 1\nm = 1\nn = 5\nf1 = 1/(z-2)\n[quadrature]\nnodes = 100\n").key() == "nodes");
    CHECK(config_failure("mode = direct\ndomain = disk 0 1\nm = 1\nn = 5\nf1 = log(z-4)\n").key() == "declare");
    CHECK(config_failure("domain = disk 0 1\nm = 1\nn = 5\nf2 = 1/(z-2)\n").key() == "f2");
    CHECK(config_failure("domain = disk 0 1\nm = 1\nn = 5\nf1 = 1/(z-0.5)\n").key() == "f1");
    CHECK(config_failure("[nowhere]\n").line() == 1);
  }

  TEST_CASE("complex literals") {
    CHECK(parse_complex("2") == cplx(2.0));
    CHECK(parse_complex("-1.5") == cplx(-1.5));
    CHECK(parse_complex("3i") == cplx(0.0, 3.0));
    CHECK(parse_complex("2+0.5i") == cplx(2.0, 0.5));
    CHECK(parse_complex("1e-3-2i") == cplx(1e-3, -2.0));
    CHECK_THROWS_AS(parse_complex("2+"), PreconditionError);
  }

  TEST_CASE("mode names") {
    CHECK(mode_name(Mode::Inverse) == "inverse");
    CHECK(mode_name(Mode::Incomplete) == "incomplete");
  }
}
