// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int exit_code = -1;
  std::string output;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(RMTLAB_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rmtlab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("passing run exits with zero and writes artifacts") {
  const auto dir = scratch_dir("pass");
  const auto r = run("spherical --n 64 --seed 5 --out " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("PASS radial_ks") != std::string::npos);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "eigenvalues.csv"));
  const auto j = read_json(dir / "report.json");
  CHECK(j["config"]["n"] == "64");
  CHECK(j["passed"] == true);
}

TEST_CASE("failing criterion exits with one") {
  const auto r = run("replacement --n 32 --trials 1 --mat-m2 scalar:3 -q");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("FAIL max_gap") != std::string::npos);
}

TEST_CASE("errors exit with two") {
  CHECK(run("spherical --n abc").exit_code == 2);
  CHECK(run("spherical --atoms cauchy").exit_code == 2);
  CHECK(run("spherical --config /nonexistent/file.conf").exit_code == 2);
  CHECK(run("theorem4 --n 16 --mat-k diag:1,0 --grid-steps 5").exit_code == 2);
  CHECK(run("no-such-command").exit_code != 0);
}

TEST_CASE("config file with explicit flags taking precedence") {
  const auto dir = scratch_dir("config");
  {
    std::ofstream out(dir / "run.conf");
    out << "n = 48\nseed = 9\ntrials = 2\nformat = json\n";
  }
  const auto r = run("spherical --config " + (dir / "run.conf").string() + " --n 40 --out " +
                     (dir / "out").string() + " -q");
  CHECK(r.exit_code <= 1);
  const auto j = read_json(dir / "out" / "report.json");
  CHECK(j["config"]["n"] == "40");
  CHECK(j["config"]["seed"] == "9");
  CHECK(fs::exists(dir / "out" / "eigenvalues.json"));
}

TEST_CASE("grid and field output") {
  const auto dir = scratch_dir("field");
  const auto r = run("girko --n 24 --trials 1 --grid -2,2,-2,2,9 --reference none --out " + dir.string() + " -q");
  CHECK(r.exit_code <= 1);
  std::ifstream in(dir / "field.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,y,value,valid");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 81);
}

TEST_CASE("ds-solve prints the fixed point") {
  const auto dir = scratch_dir("ds");
  const auto r = run("ds-solve --nu 1 --w 0:4 --ds-tol 1e-12 --ds-damping 0.5 --ds-max-iter 5000 --out " +
                     dir.string());
  CHECK(r.exit_code == 0);
  const auto j = read_json(dir / "report.json");
  CHECK(j["statistics"]["m_im"].get<double>() > 0.0);
  CHECK(j["config"]["ds-tol"] == "1e-12");
}
