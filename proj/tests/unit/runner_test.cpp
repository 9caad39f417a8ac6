#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "faberpade/analysis.hpp"
#include "faberpade/config.hpp"
#include "faberpade/runner.hpp"

using namespace faberpade;
namespace fs = std::filesystem;

namespace {

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream s(line);
    std::string f;
    while (std::getline(s, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ExperimentConfig direct_config(const fs::path& out) {
  ExperimentConfig c = parse_config(R"(mode = direct
domain = disk 0 1
m = 1
n_min = 10
n_max = 40
f1 = 1/(z-2) + log(z-4)
[declare]
pole = 2 tau=1 rho=4
[compact]
circle = 0 0.5 32
)");
  c.output_dir = out;
  return c;
}

}  // namespace

TEST_SUITE("runner") {
  TEST_CASE("number format keeps seventeen significant digits") {
    CHECK(format_number(0.1) == "1.0000000000000001e-01");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_number(0.0) == "0.0000000000000000e+00");
  }

  TEST_CASE("direct run writes consistent files") {
    const fs::path out = fs::temp_directory_path() / "faberpade_runner_test";
    fs::remove_all(out);
    const RunArtifacts art = run(direct_config(out));
    CHECK(art.exit_status == 0);
    for (const char* f : {"denominators.csv", "rates.csv", "roots_paths.csv", "summary.txt"})
      CHECK(fs::exists(out / f));

    // re-rooting the stored coefficients reproduces the tracked roots
    const auto den = read_csv(out / "denominators.csv");
    const auto paths = read_csv(out / "roots_paths.csv");
    REQUIRE(den.size() == 32);
    REQUIRE(paths.size() == 32);
    CHECK(den[0][0] == "n");
    CHECK(paths[0] == std::vector<std::string>{"label", "n", "re", "im"});
    for (size_t i = 1; i < den.size(); ++i) {
      REQUIRE(den[i].size() == 8);
      CHECK(den[i][1] == "1");
      const ComplexPoly q{cplx(std::stod(den[i][2]), std::stod(den[i][3])), cplx(std::stod(den[i][4]), std::stod(den[i][5]))};
      const cplx root = poly_roots(q)[0];
      const cplx stored(std::stod(den[i][6]), std::stod(den[i][7]));
      const cplx tracked(std::stod(paths[i][2]), std::stod(paths[i][3]));
      CHECK(paths[i][0] == "pole1");
      CHECK(paths[i][1] == den[i][0]);
      CHECK(std::abs(root - stored) <= 1e-10);
      CHECK(std::abs(root - tracked) <= 1e-10);
    }

    const auto rates = read_csv(out / "rates.csv");
    REQUIRE(rates.size() >= 3);
    CHECK(rates[rates.size() - 2][0] == "fitted_rate");
    CHECK(rates.back()[0] == "predicted_rate");
    CHECK(std::stod(rates.back()[1]) == doctest::Approx(0.5));

    const std::string summary = slurp(out / "summary.txt");
    CHECK(summary.find("mode = direct") != std::string::npos);
    CHECK(summary.find("direct_inverse_consistent") != std::string::npos);
  }

  TEST_CASE("repeated runs are byte-identical") {
    const fs::path a = fs::temp_directory_path() / "faberpade_runner_a";
    const fs::path b = fs::temp_directory_path() / "faberpade_runner_b";
    fs::remove_all(a);
    fs::remove_all(b);
    run(direct_config(a));
    run(direct_config(b));
    for (const char* f : {"denominators.csv", "rates.csv", "roots_paths.csv", "summary.txt"})
      CHECK(slurp(a / f) == slurp(b / f));
  }

  TEST_CASE("inverse and incomplete modes report verdicts") {
    const fs::path out = fs::temp_directory_path() / "faberpade_runner_modes";
    fs::remove_all(out);
    ExperimentConfig inv = parse_config("mode = inverse\ndomain = disk 0 1\nm = 1\nn_min = 10\nn_max = 60\nf1 = exp(z)\n");
    inv.output_dir = out / "inverse";
    run(inv);
    CHECK(slurp(out / "inverse" / "summary.txt").find("verdict = not converged") != std::string::npos);

    ExperimentConfig inc = parse_config(
        "mode = incomplete\ndomain = disk 0 1\nm = 2\nm_star = 1\nn_min = 10\nn_max = 40\nf1 = 1/(z-2)+log(z-4)\n");
    inc.output_dir = out / "incomplete";
    const RunArtifacts art = run(inc);
    CHECK(art.exit_status == 0);
    CHECK(fs::exists(out / "incomplete" / "roots_paths.csv"));
  }
}
