#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "faberpade/analysis.hpp"
#include "faberpade/errors.hpp"

using namespace faberpade;

namespace {

const Domain kDisk = Domain::disk(0.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

FunctionSystem sys_of(std::initializer_list<const char*> exprs) {
  std::vector<MeromorphicFunction> fs;
  for (const char* e : exprs) fs.push_back(parse_function_expression(e));
  return FunctionSystem(fs);
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("roots of a polynomial built from its roots") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<cplx> roots;
    for (int i = 0; i < 8; ++i) roots.emplace_back(u(rng), u(rng));
    const std::vector<cplx> got = poly_roots(ComplexPoly::from_roots(roots));
    REQUIRE(got.size() == 8);
    for (const cplx r : roots) {
      double best = kInf;
      for (const cplx g : got) best = std::min(best, std::abs(g - r));
      CHECK(best <= 1e-8);
    }
    for (size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1].real() <= got[i].real());
    CHECK_THROWS_AS(poly_roots(ComplexPoly::constant(1.0)), ZeroPolynomial);
    CHECK(poly_roots(ComplexPoly{-3.0, 1.5}) == std::vector<cplx>{2.0});
  }

  TEST_CASE("system poles of small rational systems") {
    SUBCASE("two simple poles") {
      const SystemMetadata md = system_poles_rational(kDisk, sys_of({"1/(z-2)", "1/(z-3)"}), MultiIndex{1, 1});
      REQUIRE(md.system_poles.size() == 2);
      CHECK(md.system_poles[0].xi == cplx(2.0));
      CHECK(md.system_poles[1].xi == cplx(3.0));
      CHECK(md.total_order() == 2);
      CHECK(md.predicted_rate == 0.0);
      CHECK(distance(md.predicted_Q, ComplexPoly{6.0, -5.0, 1.0}) < 1e-14);
      CHECK(md.provenance == Provenance::ComputedRational);
    }
    SUBCASE("orders combine across functions") {
      // c1/(z-2) + c2/(z-2)^2 realises orders 1 and 2
      const SystemMetadata md =
          system_poles_rational(kDisk, sys_of({"1/(z-2)", "1/(z-2)^2"}), MultiIndex{1, 1});
      REQUIRE(md.system_poles.size() == 1);
      CHECK(md.system_poles[0].xi == cplx(2.0));
      CHECK(md.system_poles[0].tau == 2);
    }
    SUBCASE("degree of the multipliers raises the order") {
      // v F with deg v < 2 reaches orders 1 and 2 at z = 2 only through the double pole
      const SystemMetadata md = system_poles_rational(kDisk, sys_of({"1/(z-2)^2"}), MultiIndex{2});
      REQUIRE(md.system_poles.size() == 1);
      CHECK(md.system_poles[0].tau == 2);
    }
    SUBCASE("an outer pole limits the radius") {
      // F = 1/(z-2) + 1/(z-3), m = 1: the only combination has both poles
      const SystemMetadata md = system_poles_rational(kDisk, sys_of({"1/(z-2)+1/(z-3)"}), MultiIndex{1});
      REQUIRE(md.system_poles.size() == 1);
      CHECK(md.system_poles[0].xi == cplx(2.0));
      CHECK(md.system_poles[0].rho == std::vector<double>{3.0});
      CHECK(md.predicted_rate == doctest::Approx(2.0 / 3.0));
      CHECK(md.rho_alpha == std::vector<double>{3.0});
      CHECK(md.rho_star == std::vector<double>{3.0});
    }
    SUBCASE("inner poles that cannot be cleared hide outer ones") {
      // m = 1 with poles at 2 and 3 in one function: 3 is not a system pole
      const SystemMetadata md = system_poles_rational(kDisk, sys_of({"1/(z-2)+1/(z-3)"}), MultiIndex{1});
      CHECK(md.total_order() == 1);
    }
    CHECK_THROWS_AS(system_poles_rational(kDisk, sys_of({"log(z-4)"}), MultiIndex{1}), NonRationalSystem);
  }

  TEST_CASE("declared metadata") {
    const FunctionSystem disk_sys = sys_of({"1/(z-2)+log(z-4)"});
    const PoleDeclaration decl{2.0, 1, {4.0}};
    const SystemMetadata md = declared_metadata(kDisk, disk_sys, MultiIndex{1}, std::span(&decl, 1));
    CHECK(md.predicted_rate == doctest::Approx(0.5));
    CHECK(md.provenance == Provenance::DeclaredCatalog);
    CHECK(md.rho_alpha == std::vector<double>{4.0});

    const Domain seg = Domain::segment(-1.0, 1.0);
    const FunctionSystem seg_sys = sys_of({"1/(z-2)+log(z-5)"});
    const double level5 = 5.0 + std::sqrt(24.0);
    const PoleDeclaration sdecl{2.0, 1, {level5}};
    const SystemMetadata smd = declared_metadata(seg, seg_sys, MultiIndex{1}, std::span(&sdecl, 1));
    CHECK(smd.predicted_rate == doctest::Approx((2.0 + std::sqrt(3.0)) / level5).epsilon(1e-14));
    CHECK(smd.predicted_rate == doctest::Approx(0.3770136924731038).epsilon(1e-14));

    // declared values snap to the exact pole
    const PoleDeclaration near{cplx(2.0 + 1e-13, 0.0), 1, {4.0}};
    CHECK(declared_metadata(kDisk, disk_sys, MultiIndex{1}, std::span(&near, 1)).system_poles[0].xi == cplx(2.0));

    auto bad = [&](PoleDeclaration d, const MultiIndex& m) {
      CHECK_THROWS_AS(declared_metadata(kDisk, disk_sys, m, std::span(&d, 1)), InconsistentDeclaration);
    };
    bad({3.0, 1, {4.0}}, MultiIndex{1});          // not a pole
    bad({2.0, 1, {1.5}}, MultiIndex{1});          // rho below the level
    bad({2.0, 2, {4.0}}, MultiIndex{1});          // wrong rho count
    bad({2.0, 2, {4.0, 4.0}}, MultiIndex{1});     // orders exceed |m|
    const std::vector<PoleDeclaration> twice{{2.0, 1, {4.0}}, {2.0, 1, {4.0}}};
    CHECK_THROWS_AS(declared_metadata(kDisk, disk_sys, MultiIndex{3}, twice), InconsistentDeclaration);
  }

  TEST_CASE("polynomial independence") {
    const IndependenceResult ind = polynomial_independence(sys_of({"1/(z-2)", "1/(z-3)"}), MultiIndex{1, 1});
    CHECK(ind.independent);
    // F2 - F1 = 1
    const IndependenceResult dep = polynomial_independence(sys_of({"1/(z-2)", "1/(z-2)+poly(1)"}), MultiIndex{1, 1});
    CHECK_FALSE(dep.independent);
    REQUIRE(dep.witness.size() == 2);
    CHECK(std::abs(dep.witness[0][0] - 1.0) < 1e-12);
    CHECK(std::abs(dep.witness[1][0] + 1.0) < 1e-12);
    // z/(z-2) = 1 + 2/(z-2): residues 1 and 2, so 2 F1 - F2 is a polynomial
    const FunctionSystem zsys({parse_function_expression("1/(z-2)"),
                               MeromorphicFunction({PoleTerm{2.0, {2.0}}}, PolynomialTail{ComplexPoly{1.0}})});
    const IndependenceResult dz = polynomial_independence(zsys, MultiIndex{1, 1});
    CHECK_FALSE(dz.independent);
    // residue of w1 F1 + w2 F2 at 2 vanishes
    CHECK(std::abs(dz.witness[0][0] * 1.0 + dz.witness[1][0] * 2.0) < 1e-12);
    // multipliers of degree one make a single function dependent on itself
    const IndependenceResult self = polynomial_independence(sys_of({"1/(z-2)"}), MultiIndex{2});
    CHECK_FALSE(self.independent);
  }

  TEST_CASE("direct experiment hypothesis check") {
    const FunctionSystem sys = sys_of({"1/(z-2)"});
    const SystemMetadata md = system_poles_rational(kDisk, sys, MultiIndex{2});
    CHECK(md.total_order() == 1);
    const std::vector<int> ns = n_range(10, 30);
    CHECK_THROWS_AS(run_direct_experiment(kDisk, sys, MultiIndex{2}, md, ns), HypothesisViolation);
  }

  TEST_CASE("direct experiment on the disk") {
    const FunctionSystem sys = sys_of({"1/(z-2)+log(z-4)"});
    const PoleDeclaration decl{2.0, 1, {4.0}};
    const SystemMetadata md = declared_metadata(kDisk, sys, MultiIndex{1}, std::span(&decl, 1));
    DirectOptions opt;
    for (int i = 0; i < 32; ++i) opt.compact_points.push_back(std::polar(0.5, 2.0 * std::numbers::pi * i / 32));
    const RateReport rep = run_direct_experiment(kDisk, sys, MultiIndex{1}, md, n_range(10, 60), opt);
    CHECK(rep.fitted_rate == doctest::Approx(0.5).epsilon(0.1));
    CHECK(rep.predicted_rate == doctest::Approx(0.5));
    REQUIRE(rep.sup_fit);
    CHECK(rep.sup_fit->rate <= 0.3);
    // K inside E: ||Phi||_K = 1 and rho* = 4
    CHECK(rep.sup_bound == doctest::Approx(0.25));
    REQUIRE(rep.root_paths.size() == 1);
    CHECK(rep.root_paths[0].label == "pole1");
    CHECK(std::abs(rep.root_paths[0].points.back().second - 2.0) < 1e-10);
    // deflated errors never exceed the plain ones by more than roundoff
    for (size_t i = 0; i < rep.errors.size(); ++i) CHECK(rep.errors[i] <= rep.plain_errors[i] + 1e-13);
  }

  TEST_CASE("inverse experiment") {
    const std::vector<int> ns = n_range(10, 80);
    SUBCASE("converges to the system pole") {
      const InverseVerdict v = run_inverse_experiment(kDisk, sys_of({"1/(z-2)+log(z-4)"}), MultiIndex{1}, ns);
      CHECK(v.converged);
      CHECK(v.pole_count == 1);
      REQUIRE(v.limit_roots.size() == 1);
      CHECK(std::abs(v.limit_roots[0] - 2.0) < 1e-3);
      CHECK(v.theta == doctest::Approx(0.5).epsilon(0.1));
    }
    SUBCASE("entire control does not converge") {
      const InverseVerdict v = run_inverse_experiment(kDisk, sys_of({"exp(z)"}), MultiIndex{1}, ns);
      CHECK_FALSE(v.converged);
      CHECK(v.pole_count == 0);
    }
    SUBCASE("identical functions are not polynomially independent") {
      const InverseVerdict v =
          run_inverse_experiment(kDisk, sys_of({"1/(z-2)+log(z-4)", "1/(z-2)+log(z-4)"}), MultiIndex{1, 1}, ns);
      CHECK_FALSE(v.converged);
    }
  }

  TEST_CASE("incomplete experiment finds the pole") {
    const MeromorphicFunction f = parse_function_expression("1/(z-2)+log(z-4)");
    const IncompleteReport rep = run_incomplete_experiment(kDisk, f, 2, 1, n_range(10, 60));
    CHECK(rep.rho_m_star == doctest::Approx(4.0));
    REQUIRE(rep.pole_matches.size() == 1);
    CHECK(rep.pole_matches[0].first == cplx(2.0));
    CHECK(rep.pole_matches[0].second < 1e-4);
  }

  TEST_CASE("meromorphy index") {
    const MeromorphicFunction f = parse_function_expression("1/(z-2)+1/(z-3)^2+log(z-5)");
    CHECK(meromorphy_index(kDisk, f, 0) == doctest::Approx(2.0));
    CHECK(meromorphy_index(kDisk, f, 1) == doctest::Approx(3.0));
    CHECK(meromorphy_index(kDisk, f, 2) == doctest::Approx(3.0));
    CHECK(meromorphy_index(kDisk, f, 3) == doctest::Approx(5.0));
    CHECK(std::isinf(meromorphy_index(kDisk, parse_function_expression("1/(z-2)"), 1)));
  }

  TEST_CASE("root tracking follows nearest roots") {
    std::vector<DenominatorRecord> recs;
    for (int n = 1; n <= 4; ++n) {
      DenominatorRecord r;
      r.n = n;
      r.unique = true;
      // listed in swapped order to make sure matching is by position, not index
      r.roots = {cplx(3.0 + 0.1 / n, 0.0), cplx(2.0 - 0.1 / n, 0.0)};
      recs.push_back(r);
    }
    const std::vector<cplx> starts{2.0, 3.0};
    const std::vector<std::string> labels{"a", "b"};
    const std::vector<RootPath> paths = track_roots(starts, labels, recs);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].label == "a");
    for (const auto& [n, z] : paths[0].points) CHECK(std::abs(z - 2.0) < 0.2);
    for (const auto& [n, z] : paths[1].points) CHECK(std::abs(z - 3.0) < 0.2);
  }

  TEST_CASE("n_range") {
    CHECK(n_range(3, 10, 3) == std::vector<int>{3, 6, 9});
    CHECK(n_range(5, 5) == std::vector<int>{5});
  }

  TEST_CASE("parallel_for visits each index once and rethrows") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, [&](int i) { hits[static_cast<size_t>(i)]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, [](int i) {
                      if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
  }
}
