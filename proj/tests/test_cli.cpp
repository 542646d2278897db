#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "fstube/cli.hpp"
#include "fstube/polynomial_io.hpp"
#include "fstube/tube_volume.hpp"

using namespace fstube;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("fstube_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("focal on the quadric") {
  const Result r = run_cli({"focal", "--model", "quadric", "--n", "3", "--points", "50", "--normals", "10", "--seed", "7"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["values"]["estimate"].get<double>() == doctest::Approx(std::numbers::pi / 4).epsilon(1e-10));
  CHECK(j["seed"] == 7);
  CHECK(j["version"] == "0.1.0");
  CHECK(j["variant"] == "corrected");
  CHECK(j.contains("input_digest"));
}

TEST_CASE("tube volume at zero radius") {
  const Result r = run_cli({"tube-volume", "--model", "hypersurface", "--n", "2", "--d", "1", "--r", "0"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["values"]["rows"][0]["volume"]["value"].get<double>() == 0.0);
  CHECK(j["seed"] == 7);  // injected default
}

TEST_CASE("radius grid and CSV") {
  const auto csv = (std::filesystem::temp_directory_path() / "fstube_test_grid.csv").string();
  const Result r = run_cli({"tube-volume", "--model", "fermat-2", "--n", "3", "--r-grid", "0:0.6:4", "--csv", csv});
  REQUIRE(r.code == 0);
  std::ifstream f(csv);
  std::string line;
  int lines = 0;
  while (std::getline(f, line)) ++lines;
  CHECK(lines == 5);
  CHECK(run_cli({"tube-volume", "--model", "quadric", "--n", "2", "--r", "2.0"}).code == 2);
  CHECK(run_cli({"tube-volume", "--model", "quadric", "--n", "2", "--r-grid", "a:b"}).code == 2);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"focal", "--model", "quadric", "--n", "2", "--bogus"}).code == 2);
  CHECK(run_cli({"focal", "--model", "nope", "--n", "2"}).code == 2);
  CHECK(run_cli({"focal", "--model", "quadric"}).code == 2);
  CHECK(run_cli({"focal", "--model", "fermat-3", "--n", "2", "--d", "2"}).code == 2);
  CHECK(run_cli({"focal", "--model", "quadric", "--n", "2", "--variant", "sideways"}).code == 2);
  CHECK(run_cli({"curve-volume", "--model", "quadric", "--n", "2"}).code == 2);
  CHECK(run_cli({"focal", "--model", "quadric", "--n", "2", "--tol", "fd_step=-1"}).code == 2);
  CHECK(run_cli({"riccati", "--kappa", "3", "--lambda0", "1"}).code == 2);
}

TEST_CASE("polynomial files") {
  const std::string good = temp_file("cubic.json", R"({"n": 2, "d": 3, "terms": [
    {"coeff": [1, 0], "exp": [3, 0, 0]}, {"coeff": [1, 0], "exp": [0, 3, 0]}, {"coeff": [1, 0], "exp": [0, 0, 3]}]})");
  const Result r = run_cli({"focal", "--input", good, "--points", "10", "--normals", "3"});
  CHECK(r.code == 0);
  const std::string wrong_field = temp_file("bad1.json", R"({"n": 2, "d": 3, "terms": [{"coeff": [1, 0], "exp": [3, 0]}]})");
  const Result e1 = run_cli({"focal", "--input", wrong_field});
  CHECK(e1.code == 2);
  CHECK(e1.err.find("terms[0].exp") != std::string::npos);
  const std::string syntax = temp_file("bad2.json", "{\"n\": 2,\n \"d\": 3,\n \"terms\": [x]}");
  const Result e2 = run_cli({"focal", "--input", syntax});
  CHECK(e2.code == 2);
  CHECK(e2.err.find("line 3") != std::string::npos);
  const Result e3 = run_cli({"focal", "--input", "/nonexistent/poly.json"});
  CHECK(e3.code == 2);
  const std::string bad_sum = temp_file("bad3.json", R"({"n": 2, "d": 3, "terms": [{"coeff": 1, "exp": [2, 0, 0]}]})");
  CHECK(run_cli({"focal", "--input", bad_sum}).code == 2);
  // A curve file: the line (s, is, t, it).
  const std::string curve = temp_file("ruling.json", R"({"n": 3, "d": 1, "components": [
    {"terms": [{"coeff": [1, 0], "exp": [1, 0]}]}, {"terms": [{"coeff": [0, 1], "exp": [1, 0]}]},
    {"terms": [{"coeff": [1, 0], "exp": [0, 1]}]}, {"terms": [{"coeff": [0, 1], "exp": [0, 1]}]}]})");
  const Result c = run_cli({"curve-volume", "--input", curve});
  REQUIRE(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["values"]["volume_over_pi"].get<double>() == doctest::Approx(1.0));
  const Result t4 = run_cli({"verify", "--suite", "curve-bound", "--input", curve, "--points", "10", "--normals", "3"});
  CHECK(t4.code == 0);
  // A curve that is not on the quadric is an input error.
  CHECK(run_cli({"verify", "--suite", "curve-bound", "--model", "rational-normal-2", "--n", "3"}).code == 2);
}

TEST_CASE("riccati command") {
  const Result r = run_cli({"riccati", "--kappa", "1", "--lambda0", "1", "--r-max", "1", "--every", "100"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["values"]["numeric_blowup"].get<double>() == doctest::Approx(std::numbers::pi / 4).epsilon(1e-9));
  CHECK(j["margins"]["max_relative_error"].get<double>() < 1e-8);
}

TEST_CASE("output is byte identical for identical arguments") {
  const std::vector<std::string> args = {"mc-volume", "--model", "quadric", "--n", "2", "--r-grid", "0.2,0.5",
                                         "--samples", "5000", "--workers", "2"};
  const Result a = run_cli(args), b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Result v1 = run_cli({"verify", "--suite", "cot-monotonicity"}), v2 = run_cli({"verify", "--suite", "cot-monotonicity"});
  CHECK(v1.code == 0);
  CHECK(v1.out == v2.out);
}

TEST_CASE("full precision round trip") {
  const Result r = run_cli({"tube-volume", "--model", "quadric", "--n", "3", "--r", "0.3"});
  const double v = nlohmann::json::parse(r.out)["values"]["rows"][0]["volume"]["value"].get<double>();
  CHECK(v == tube_volume_hypersurface(3, 2, 0.3, HypersurfaceVariant::corrected));
}
