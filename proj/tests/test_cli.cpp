#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardymeans/cli.hpp"

using namespace hardymeans;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("hardy report carries the documented keys") {
  const auto j = run_json({"hardy", "power(0)", "--nmax", "10000"});
  for (const char* key : {"command", "version", "seed", "method", "estimate", "reference",
                          "reference_kind", "tolerance", "nmax", "notes"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["method"] == "homogeneous-limit");
  CHECK(j["estimate"].get<double>() == doctest::Approx(2.7168).epsilon(1e-4));
  CHECK(j["reference"].get<double>() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(j["reference_kind"] == "closed form");
  CHECK(j["command"] == json::array({"hardy", "power(0)", "--nmax", "10000"}));
  CHECK(j["version"] == kVersion);
}

TEST_CASE("gaussian product hardy report") {
  const auto j = run_json({"hardy", "gauss(power(-1),power(0))", "--nmax", "2000"});
  const double est = j["estimate"].get<double>();
  const double ref = j["reference"].get<double>();
  CHECK(ref == doctest::Approx(2.318).epsilon(1e-3));
  CHECK(std::abs(est - ref) / ref < 0.03);
}

TEST_CASE("divergent means serialize a null estimate") {
  const auto j = run_json({"hardy", "power(1)"});
  CHECK(j["estimate"].is_null());
  CHECK(j["divergent"] == true);
}

TEST_CASE("kedlaya coeffs audit") {
  const auto j = run_json({"kedlaya", "coeffs", "--n", "5"});
  CHECK(j["audit"]["all_pass"] == true);
  CHECK(j["row_sum"] == 24);
  for (const auto& row : j["coefficients"])
    for (const auto& ks : row) {
      std::uint64_t s = 0;
      for (const auto& a : ks) s += a.get<std::uint64_t>();
      CHECK(s == 24);
    }
}

TEST_CASE("other subcommands succeed") {
  CHECK(run_json({"eval", "power(1)", "1", "2", "3"})["estimate"] == 2.0);
  CHECK(run_json({"gauss", "power(1)", "power(0)", "--at", "24", "6"})["estimate"].get<double>() ==
        doctest::Approx(13.458171481725616).epsilon(1e-13));
  CHECK(run_json({"kedlaya", "matrix", "--n", "3"})["occurrence_counts_ok"] == true);
  CHECK(run_json({"kedlaya", "check", "power(0)", "--samples", "50"})["violations"] == 0);
  CHECK(run_json({"liminf", "power(0)", "--seq", "constant", "--nmax", "100"})["estimate"] == 1.0);
  CHECK(run_json({"hardy-seq", "power(0)", "--n", "2"})["estimate"].get<double>() ==
        doctest::Approx(1.2071067811865475).epsilon(1e-6));
  const auto p = run_json({"probe", "gini(2,1)", "--seed", "3", "--samples", "100"});
  CHECK(p["properties"]["jensen_concavity"]["verdict"] == "violated");
  CHECK(p["seed"] == 3);
}

TEST_CASE("reports reproduce bit for bit from the echoed command") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"hardy-seq", "gini(0.5,-1)", "--n", "4", "--seed", "5"},
        std::vector<std::string>{"probe", "power(0.5)", "--seed", "8"},
        std::vector<std::string>{"kedlaya", "check", "gini(0.5,-1)", "--seed", "2"},
        std::vector<std::string>{"hardy", "bajrak(pow:-1,exp)", "--nmax", "300", "--ygrid", "0.1:10:5"}}) {
    const auto first = run(args);
    REQUIRE(first.code == 0);
    const auto report = json::parse(first.out);
    const auto again = run(report["command"].get<std::vector<std::string>>());
    CHECK(again.out == first.out);
  }
}

TEST_CASE("csv output is stable") {
  const auto path = std::filesystem::temp_directory_path() / "hardymeans_test_pn.csv";
  std::filesystem::remove(path);
  REQUIRE(run({"hardy", "power(0)", "--nmax", "5", "--csv", path.string()}).code == 0);
  const std::string csv = slurp(path);
  CHECK(csv.rfind("n,p_n\n1,1\n2,1.4142135623731\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 6);
  std::filesystem::remove(path);
}

TEST_CASE("exit codes: usage errors") {
  const auto arity = run({"eval", "gini(0.5)", "1"});
  CHECK(arity.code == exit_usage);
  CHECK(arity.err.find("error[E_ARITY]") == 0);
  CHECK(arity.err.find("offset 9") != std::string::npos);
  CHECK(run({}).code == exit_usage);
  CHECK(run({"frobnicate"}).code == exit_usage);
  CHECK(run({"hardy"}).code == exit_usage);
  CHECK(run({"eval", "power(0)", "0"}).code == exit_usage);
  CHECK(run({"eval", "quasi(sin)", "1"}).err.find("E_UNKNOWN_GENERATOR") != std::string::npos);
  CHECK(run({"kedlaya", "coeffs", "--n", "13"}).code == exit_usage);
  CHECK(run({"hardy", "power(0)", "--ygrid", "1:2"}).code == exit_usage);
  CHECK(run({"liminf", "power(0)", "--seq", "fibonacci", "--nmax", "10"}).code == exit_usage);
  CHECK(run({"--help"}).code == exit_ok);
  CHECK(run({"--version"}).code == exit_ok);
}

TEST_CASE("exit codes: computation errors") {
  const auto r = run({"gauss", "min", "max", "--at", "1", "2"});
  CHECK(r.code == exit_computation);
  CHECK(r.err.find("error[E_NON_CONVERGENCE]") == 0);
  CHECK(run({"eval", "quasi(exp)", "1000", "1"}).code == exit_ok);
  CHECK(run({"eval", "bajrak(pow:-1,exp)", "800", "1"}).code == exit_computation);
}
