// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rmtlab/config.hpp"
#include "rmtlab/error.hpp"
#include "rmtlab/experiments.hpp"

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

ExperimentConfig small(const std::string& name, std::initializer_list<std::pair<const char*, const char*>> kv) {
  auto c = default_config(name);
  for (const auto& [k, v] : kv) apply_setting(c, k, v);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("small runs of every experiment") {
  const std::vector<ExperimentConfig> configs{
      small("spherical", {{"n", "64"}}),
      small("spherical-exact", {{"n", "16"}, {"trials", "80"}}),
      small("universality", {{"n", "48"}}),
      small("singular-diag", {{"n", "64"}, {"trials", "3"}}),
      small("replacement", {{"n", "48"}, {"trials", "2"}}),
      small("girko", {{"n", "32"}, {"trials", "2"}, {"grid", "-2,2,-2,2,21"}}),
      small("theorem4", {{"n", "32"}, {"grid-steps", "9"}, {"ds-form", "squared"}}),
      small("ds-solve", {{"w", "0.5:1"}}),
  };
  for (const auto& c : configs) {
    CAPTURE(c.experiment);
    const auto r = run_experiment(c);
    CHECK(r.experiment == c.experiment);
    CHECK_FALSE(r.criteria.empty());
    CHECK(nlohmann::json::parse(r.to_json()).is_object());
  }
}

TEST_CASE("spherical run statistics") {
  const auto r = run_experiment(small("spherical", {{"n", "64"}}));
  CHECK(r.statistic("eigenvalue_count") == 64);
  CHECK(r.eigenvalues.size() == 64);
  CHECK(r.statistic("radial_ks") == r.statistic("height_ks"));
  CHECK(r.criterion("radial_ks") != nullptr);
}

TEST_CASE("determinism across worker counts") {
  const auto base = fs::temp_directory_path() / "rmtlab_test_determinism";
  fs::remove_all(base);
  for (const std::string name : {"spherical-exact", "singular-diag", "replacement", "girko"}) {
    CAPTURE(name);
    auto c = small(name, {{"n", "32"}, {"trials", "4"}, {"grid", "-1.5,1.5,-1.5,1.5,11"}});
    c.out_dir = (base / name / "w1").string();
    c.workers = 1;
    const auto one = run_experiment(c);
    c.out_dir = (base / name / "w4").string();
    c.workers = 4;
    const auto four = run_experiment(c);
    CHECK(one.to_json(false) == four.to_json(false));
    REQUIRE(one.artifacts.size() == four.artifacts.size());
    for (std::size_t i = 0; i < one.artifacts.size(); ++i) {
      const auto file = fs::path(one.artifacts[i]).filename();
      CHECK(fs::path(four.artifacts[i]).filename() == file);
      if (file == "report.json") continue;
      CAPTURE(file.string());
      CHECK(slurp(one.artifacts[i]) == slurp(four.artifacts[i]));
    }
  }
}

TEST_CASE("seeds separate runs") {
  auto c = small("spherical", {{"n", "32"}});
  const auto a = run_experiment(c);
  apply_setting(c, "seed", "7");
  const auto b = run_experiment(c);
  CHECK(a.eigenvalues != b.eigenvalues);
  apply_setting(c, "seed", "7");
  CHECK(run_experiment(c).eigenvalues == b.eigenvalues);
}

TEST_CASE("shared seed gives identical ensembles") {
  const auto u = run_experiment(small("universality", {{"n", "32"}, {"atoms2", "complex_gaussian"}, {"shared-seed", "true"}}));
  CHECK(u.statistic("harmonic_distance") == 0.0);
  const auto r = run_experiment(
      small("replacement", {{"n", "32"}, {"atoms2", "complex_gaussian"}, {"shared-seed", "true"}}));
  CHECK(r.statistic("max_gap") == 0.0);
  CHECK(r.passed());
}

TEST_CASE("replacement detects a shifted deterministic part") {
  const auto r = run_experiment(small("replacement", {{"n", "64"}, {"mat-m2", "scalar:3"}}));
  CHECK(r.statistic("max_gap") > 1.0);
  CHECK_FALSE(r.passed());
}

TEST_CASE("deterministic girko field of the zero matrix") {
  const auto r = run_experiment(small("girko", {{"n", "16"}, {"noise", "0"}, {"grid", "-1,1,-1,1,20"}, {"reference", "none"}}));
  CHECK(r.statistic("center_box_mass") >= 0.8);
  CHECK(r.passed());
}

TEST_CASE("ds-solve reports the fixed point") {
  const auto r = run_experiment(small("ds-solve", {{"w", "0:4"}, {"nu", "1"}}));
  CHECK(r.statistic("converged") == 1.0);
  CHECK(r.statistic("m_im") > 0.0);
  CHECK(r.passed());
}

TEST_CASE("hypothesis violations are rejected") {
  auto c = small("theorem4", {{"n", "16"}, {"mat-k", "diag:1,0"}, {"grid-steps", "5"}});
  CHECK(code_of([&] { run_experiment(c); }) == ErrorCode::kHypothesisViolation);
}

TEST_CASE("invalid configuration is rejected before running") {
  auto c = small("spherical", {});
  c.n = 2;
  CHECK(code_of([&] { run_experiment(c); }) == ErrorCode::kConfig);
}
