// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rmtlab/config.hpp"
#include "rmtlab/error.hpp"
#include "rmtlab/report.hpp"

using namespace rmt;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& ex) {
    return ex.code();
  }
  return ErrorCode::kOk;
}

std::string echo_value(const ExperimentConfig& c, const std::string& key) {
  for (const auto& [k, v] : config_echo(c))
    if (k == key) return v;
  return "<missing>";
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rmtlab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("scalar parsers") {
  CHECK(parse_complex("2.5") == Complex(2.5, 0.0));
  CHECK(parse_complex("1:-2") == Complex(1.0, -2.0));
  CHECK(parse_complex("1,2") == Complex(1.0, 2.0));
  CHECK(parse_complex("0.5+2i") == Complex(0.5, 2.0));
  CHECK(parse_complex("-1-0.5i") == Complex(-1.0, -0.5));
  CHECK(code_of([] { parse_complex("abc"); }) == ErrorCode::kConfig);
  CHECK(parse_real_list("0.1, 0.2,0.3") == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(code_of([] { parse_real_list("0.1,x"); }) == ErrorCode::kConfig);
}

TEST_CASE("grid parsing") {
  const GridSpec g = parse_grid("-1,2,-3,4,11");
  CHECK(g == GridSpec{-1.0, 2.0, -3.0, 4.0, 11});
  CHECK(code_of([] { parse_grid("-1,2,-3,4"); }) == ErrorCode::kConfig);
  CHECK(code_of([] { parse_grid("1,-1,-1,1,11"); }) == ErrorCode::kConfig);
  CHECK(code_of([] { parse_grid("-1,1,-1,1,2"); }) == ErrorCode::kConfig);
}

TEST_CASE("matrix specs") {
  CHECK(MatrixSpec::parse("identity").diagonal(3) == std::vector<Complex>(3, 1.0));
  CHECK(MatrixSpec::parse("I").is_scalar());
  CHECK(MatrixSpec::parse("zero").is_zero());
  CHECK(MatrixSpec::parse("scalar:2+1i").diagonal(2) == std::vector<Complex>(2, Complex(2, 1)));
  const auto d = MatrixSpec::parse("diag:1,-1");
  CHECK_FALSE(d.is_scalar());
  CHECK(d.diagonal(5) == std::vector<Complex>{1.0, -1.0, 1.0, -1.0, 1.0});
  const ComplexMatrix m = d.build(3);
  CHECK(m(0, 0) == Complex(1.0));
  CHECK(m(1, 1) == Complex(-1.0));
  CHECK(m(0, 1) == Complex(0.0));
  CHECK(MatrixSpec::parse(d.text()).diagonal(4) == d.diagonal(4));
  CHECK(code_of([] { MatrixSpec::parse("ones"); }) == ErrorCode::kConfig);
  CHECK(code_of([] { MatrixSpec::parse("diag:"); }) == ErrorCode::kConfig);
}

TEST_CASE("defaults per experiment") {
  for (const auto& name : experiment_names()) {
    const auto c = default_config(name);
    CHECK(c.experiment == name);
    CHECK_NOTHROW(c.validate());
  }
  CHECK(default_config("spherical").reference == "spherical");
  CHECK(default_config("singular-diag").reference == "quarter_circle");
  CHECK(default_config("girko").reference == "circular");
  CHECK(code_of([] { default_config("nope"); }) == ErrorCode::kConfig);
}

TEST_CASE("settings and validation") {
  auto c = default_config("spherical");
  apply_setting(c, "n", "64");
  apply_setting(c, "atoms", "rademacher");
  apply_setting(c, "grid", "-1,1,-1,1,5");
  apply_setting(c, "ds-tol", "1e-9");
  apply_setting(c, "reference", "none");
  CHECK(c.n == 64);
  CHECK(c.atoms.name() == "rademacher");
  CHECK(c.grid->steps == 5);
  CHECK(c.ds.tol == 1e-9);
  CHECK(c.reference.empty());
  CHECK(code_of([&] { apply_setting(c, "unknown-key", "1"); }) == ErrorCode::kConfig);
  CHECK(code_of([&] { apply_setting(c, "n", "ten"); }) == ErrorCode::kConfig);
  CHECK(code_of([&] { apply_setting(c, "atoms", "cauchy"); }) == ErrorCode::kConfig);

  apply_setting(c, "n", "4");
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::kConfig);
  auto e = default_config("spherical-exact");
  apply_setting(e, "n", "2");
  CHECK_NOTHROW(e.validate());
  apply_setting(e, "trials", "0");
  CHECK(code_of([&] { e.validate(); }) == ErrorCode::kConfig);
  auto s = default_config("singular-diag");
  apply_setting(s, "gamma", "1.5");
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::kConfig);
  auto t = default_config("theorem4");
  apply_setting(t, "noise", "0");
  CHECK(code_of([&] { t.validate(); }) == ErrorCode::kConfig);
  auto f = default_config("girko");
  apply_setting(f, "format", "xml");
  CHECK(code_of([&] { f.validate(); }) == ErrorCode::kConfig);
}

TEST_CASE("every key is settable and echoed") {
  auto c = default_config("theorem4");
  const auto echo = config_echo(c);
  CHECK(config_keys().size() >= 40);
  for (const auto& [key, value] : echo) {
    CAPTURE(key);
    if (value.empty() || key == "experiment") continue;
    auto copy = c;
    CHECK_NOTHROW(apply_setting(copy, key, value));
    CHECK(echo_value(copy, key) == value);
  }
}

TEST_CASE("config file") {
  const auto dir = scratch_dir("config");
  const auto path = dir / "run.conf";
  {
    std::ofstream out(path);
    out << "# comment\n\n n = 96 \ntrials=3\natoms = uniform_complex  # trailing\nseed=42\n";
  }
  auto c = default_config("spherical");
  load_config_file(c, path.string());
  CHECK(c.n == 96);
  CHECK(c.trials == 3);
  CHECK(c.atoms.name() == "uniform_complex");
  CHECK(c.seed == 42u);
  apply_setting(c, "n", "128");
  CHECK(c.n == 128);

  {
    std::ofstream out(dir / "bad.conf");
    out << "n 96\n";
  }
  CHECK(code_of([&] { load_config_file(c, (dir / "bad.conf").string()); }) == ErrorCode::kConfig);
  CHECK(code_of([&] { load_config_file(c, (dir / "missing.conf").string()); }) == ErrorCode::kIo);
}

TEST_CASE("report criteria") {
  ExperimentReport r;
  CHECK(r.passed());
  CHECK(r.at_most("a", 0.5, 0.5).passed);
  CHECK_FALSE(r.below("b", 0.5, 0.5).passed);
  CHECK_FALSE(r.at_most("c", std::numeric_limits<double>::quiet_NaN(), 1.0).passed);
  CHECK_FALSE(r.at_least("d", std::numeric_limits<double>::quiet_NaN(), 0.0).passed);
  CHECK(r.within("e", 1.0, 0.9, 1.1).passed);
  CHECK_FALSE(r.within("f", 1.2, 0.9, 1.1).passed);
  CHECK_FALSE(r.passed());
  REQUIRE(r.criterion("e") != nullptr);
  CHECK(r.criterion("e")->op == "in");
  CHECK(r.criterion("zz") == nullptr);

  r.stat("x", 2.0);
  CHECK(r.statistic("x") == 2.0);
  CHECK(r.has_statistic("x"));
  CHECK(code_of([&] { r.statistic("y"); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("report JSON") {
  ExperimentReport r;
  r.experiment = "demo";
  r.config = {{"n", "8"}};
  r.stat("finite", 0.25);
  r.stat("nan", std::numeric_limits<double>::quiet_NaN());
  r.stat("pinf", std::numeric_limits<double>::infinity());
  r.stat("ninf", -std::numeric_limits<double>::infinity());
  r.at_most("finite", 0.25, 0.5);
  r.notes.push_back("note");
  r.elapsed_seconds = 1.5;

  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["experiment"] == "demo");
  CHECK(j["passed"] == true);
  CHECK(j["statistics"]["finite"] == 0.25);
  CHECK(j["statistics"]["nan"] == "masked");
  CHECK(j["statistics"]["pinf"] == "inf");
  CHECK(j["statistics"]["ninf"] == "-inf");
  CHECK(j["config"]["n"] == "8");
  CHECK(j["notes"][0] == "note");
  CHECK(j["runtime"]["elapsed_seconds"] == 1.5);
  const auto bare = nlohmann::json::parse(r.to_json(false));
  CHECK_FALSE(bare.contains("runtime"));
}

TEST_CASE("artifacts") {
  ExperimentReport r;
  r.experiment = "demo";
  r.eigenvalues = {Complex(1.0, -0.5), Complex(0.25, 0.0)};
  r.singulars = {0.5, 1.5};
  GridField f(GridSpec{-1, 1, -1, 1, 3});
  f.values.assign(9, 2.0);
  f.mask(4);
  r.field = f;

  const auto dir = scratch_dir("artifacts");
  write_report(r, (dir / "csv").string(), "csv");
  CHECK(slurp(dir / "csv" / "eigenvalues.csv") == "re,im\n1,-0.5\n0.25,0\n");
  CHECK(slurp(dir / "csv" / "singulars.csv") == "s\n0.5\n1.5\n");
  const auto field = slurp(dir / "csv" / "field.csv");
  CHECK(field.rfind("x,y,value,valid\n-1,-1,2,1\n", 0) == 0);
  CHECK(field.find("0,0,0,0\n") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(dir / "csv" / "report.json"));
  CHECK(j["artifacts"].size() == 4);

  write_report(r, (dir / "json").string(), "json");
  const auto eig = nlohmann::json::parse(slurp(dir / "json" / "eigenvalues.json"));
  CHECK(eig.size() == 2);
  CHECK(fs::exists(dir / "json" / "field.json"));
  CHECK(fs::exists(dir / "json" / "singulars.json"));
}
