#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using namespace superbos;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("gamma command") {
  Run r = run({"gamma", "--p", "1", "--q", "1", "--m", "3,2"});
  CHECK(r.code == 0);
  CHECK(r.j()["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-14));
  Run pole = run({"gamma", "--p", "1", "--q", "0", "--m", "0"});
  CHECK(pole.code == 0);
  CHECK(pole.j()["is_pole"] == true);
  CHECK(pole.j()["value"].is_null());
}

TEST_CASE("usage and domain errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"gamma", "--p", "1"}).code == 2);
  CHECK(run({"gamma", "--p", "1", "--q", "0", "--m", "x"}).code == 2);
  CHECK(run({"verify-gamma", "--p", "1", "--q", "0", "--m", "0"}).code == 2);
  CHECK(run({"verify-sbos", "--p", "1", "--q", "1", "--n", "1", "--x", "diag:2"}).code == 2);
  CHECK(run({"suite", "/nonexistent/config.json"}).code == 2);
  CHECK(run({"suite", write_temp("superbos_bad.json", "{not json")}).code == 2);
}

TEST_CASE("verify-sbos passes near √π/2") {
  Run r = run({"verify-sbos", "--p", "1", "--q", "1", "--n", "1", "--x", "diag:2,1", "--seed", "7"});
  CHECK(r.code == 0);
  json j = r.j();
  CHECK(j["pass"] == true);
  bool seen = false;
  for (const auto& c : j["checks"])
    if (c["label"] == "LHS vs RHS") {
      seen = true;
      CHECK(c["computed"][0]["re"].get<double>() == doctest::Approx(0.886226925452758).epsilon(1e-9));
    }
  CHECK(seen);
}

TEST_CASE("odd parameters fill the odd blocks and appear as sorted subsets") {
  Run r = run({"verify-laplace", "--p", "1", "--q", "1", "--m", "3,2", "--x", "diag:2,1", "--odd-params", "2"});
  CHECK(r.code == 0);
  json comp = r.j()["checks"][0]["computed"];
  REQUIRE(comp.size() == 4);
  CHECK(comp[0]["subset"] == "1");
  CHECK(comp[1]["subset"] == "θ1");
  CHECK(comp[3]["subset"] == "θ1θ2");
  CHECK(std::abs(comp[3]["re"].get<double>()) > 1e-3);
}

TEST_CASE("identical seeds give byte-identical JSON") {
  std::vector<std::string> a{"verify-gamma", "--p", "1", "--q", "2", "--m", "2,2,2", "--mc-samples", "3000",
                             "--seed", "5", "--cone-orders", "2,1"};
  Run x = run(a), y = run(a);
  CHECK(x.out == y.out);
  a[10] = "6";
  CHECK(run(a).out != x.out);
  CHECK(x.j()["seed"] == 5);
  CHECK_FALSE(x.j().contains("seconds"));
}

TEST_CASE("suite: empty list passes, under-sampled q = 2 fails with 1") {
  Run e = run({"suite", write_temp("superbos_empty.json", R"({"cases": []})")});
  CHECK(e.code == 0);
  CHECK(e.j()["pass"] == true);
  std::string cfg = write_temp("superbos_mc10.json", R"({"cases": [{"command": "verify-gamma", "p": 1, "q": 2,
    "m": "2,2,2", "cone": {"rule": "gauss-laguerre", "orders": [2, 1]},
    "unitary": {"rule": "haar-mc", "orders": [1], "mc_samples": 10, "seed": 1}}]})");
  Run f = run({"suite", cfg});
  CHECK(f.code == 1);
  CHECK(f.j()["cases"][0]["checks"][0].contains("stderr"));
  CHECK(f.j()["cases"][0]["checks"][0]["note"].get<std::string>().find("stderr") != std::string::npos);
  // the command-line flag overrides the config
  std::string big = write_temp("superbos_mc_ok.json", R"({"cases": [{"command": "verify-gamma", "p": 1, "q": 2,
    "m": "2,2,2", "cone": {"rule": "gauss-laguerre", "orders": [2, 1]},
    "unitary": {"rule": "haar-mc", "orders": [1], "mc_samples": 100000, "seed": 1}}]})");
  CHECK(run({"suite", big, "--mc-samples", "10"}).code == 1);
}

TEST_CASE("default suite config passes") {
  Run r = run({"suite", SUPERBOS_DEFAULT_SUITE});
  CHECK(r.code == 0);
  CHECK(r.j()["pass"] == true);
}
