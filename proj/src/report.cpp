// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rmtlab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "rmtlab/error.hpp"

namespace rmt {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (std::isnan(v)) return "masked";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorCode::kIo, "write failed for " + path.string());
}

const Criterion& push(std::vector<Criterion>& list, Criterion c) {
  list.push_back(std::move(c));
  return list.back();
}

}  // namespace

void ExperimentReport::stat(std::string name, double value) {
  statistics.emplace_back(std::move(name), value);
}

bool ExperimentReport::has_statistic(std::string_view name) const {
  for (const auto& [k, v] : statistics) {
    if (k == name) return true;
  }
  return false;
}

double ExperimentReport::statistic(std::string_view name) const {
  for (const auto& [k, v] : statistics) {
    if (k == name) return v;
  }
  fail(ErrorCode::kInvalidArgument, "no statistic named " + std::string(name));
}

const Criterion& ExperimentReport::at_most(std::string name, double value, double threshold) {
  return push(criteria, {std::move(name), value, "<=", threshold, 0.0,
                         std::isfinite(value) && value <= threshold});
}

const Criterion& ExperimentReport::below(std::string name, double value, double threshold) {
  return push(criteria, {std::move(name), value, "<", threshold, 0.0,
                         std::isfinite(value) && value < threshold});
}

const Criterion& ExperimentReport::at_least(std::string name, double value, double threshold) {
  return push(criteria, {std::move(name), value, ">=", threshold, 0.0,
                         !std::isnan(value) && value >= threshold});
}

const Criterion& ExperimentReport::within(std::string name, double value, double lo, double hi) {
  return push(criteria, {std::move(name), value, "in", lo, hi,
                         std::isfinite(value) && value >= lo && value <= hi});
}

const Criterion* ExperimentReport::criterion(std::string_view name) const {
  for (const auto& c : criteria) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool ExperimentReport::passed() const {
  for (const auto& c : criteria) {
    if (!c.passed) return false;
  }
  return true;
}

std::string ExperimentReport::to_json(bool include_runtime) const {
  Json j;
  j["experiment"] = experiment;
  Json cfg = Json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  Json stats = Json::object();
  for (const auto& [k, v] : statistics) stats[k] = number(v);
  j["statistics"] = stats;
  Json crit = Json::array();
  for (const auto& c : criteria) {
    Json e;
    e["name"] = c.name;
    e["value"] = number(c.value);
    e["op"] = c.op;
    if (c.op == "in") {
      e["threshold"] = Json::array({number(c.threshold), number(c.threshold_hi)});
    } else {
      e["threshold"] = number(c.threshold);
    }
    e["passed"] = c.passed;
    crit.push_back(e);
  }
  j["criteria"] = crit;
  j["passed"] = passed();
  j["notes"] = notes;
  Json files = Json::array();
  for (const auto& a : artifacts) files.push_back(std::filesystem::path(a).filename().string());
  j["artifacts"] = files;
  if (include_runtime) {
    j["runtime"] = {{"elapsed_seconds", elapsed_seconds}, {"workers", workers}};
  }
  return j.dump(2) + "\n";
}

void write_report(ExperimentReport& report, const std::string& dir, const std::string& format) {
  if (format != "csv" && format != "json") {
    fail(ErrorCode::kConfig, "format must be csv or json");
  }
  namespace fs = std::filesystem;
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());

  const bool csv = format == "csv";
  const std::string ext = csv ? ".csv" : ".json";
  report.artifacts.clear();

  if (!report.eigenvalues.empty()) {
    std::string text;
    if (csv) {
      text = "re,im\n";
      for (const auto& z : report.eigenvalues) text += fmt(z.real()) + "," + fmt(z.imag()) + "\n";
    } else {
      Json rows = Json::array();
      for (const auto& z : report.eigenvalues) rows.push_back({{"re", z.real()}, {"im", z.imag()}});
      text = rows.dump(2) + "\n";
    }
    write_text(root / ("eigenvalues" + ext), text);
    report.artifacts.push_back((root / ("eigenvalues" + ext)).string());
  }
  if (!report.singulars.empty()) {
    std::string text;
    if (csv) {
      text = "s\n";
      for (double s : report.singulars) text += fmt(s) + "\n";
    } else {
      Json rows = Json::array();
      for (double s : report.singulars) rows.push_back({{"s", s}});
      text = rows.dump(2) + "\n";
    }
    write_text(root / ("singulars" + ext), text);
    report.artifacts.push_back((root / ("singulars" + ext)).string());
  }
  if (report.field) {
    const auto& f = *report.field;
    std::string text;
    Json rows = Json::array();
    if (csv) text = "x,y,value,valid\n";
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const Complex z = f.spec.node(i);
      const int valid = f.valid[i] ? 1 : 0;
      if (csv) {
        text += fmt(z.real()) + "," + fmt(z.imag()) + "," + fmt(f.values[i]) + "," +
                std::to_string(valid) + "\n";
      } else {
        rows.push_back({{"x", z.real()}, {"y", z.imag()}, {"value", number(f.values[i])},
                        {"valid", valid}});
      }
    }
    if (!csv) text = rows.dump(2) + "\n";
    write_text(root / ("field" + ext), text);
    report.artifacts.push_back((root / ("field" + ext)).string());
  }
  report.artifacts.push_back((root / "report.json").string());
  write_text(root / "report.json", report.to_json(true));
}

}  // namespace rmt
