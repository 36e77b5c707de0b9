// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmtlab/girko.hpp"
#include "rmtlab/linalg.hpp"

namespace rmt {

struct Criterion {
  std::string name;
  double value = 0.0;
  std::string op;  // "<=", "<", ">=", "in"
  double threshold = 0.0;
  double threshold_hi = 0.0;  // upper end for "in"
  bool passed = false;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, double>> statistics;
  std::vector<Criterion> criteria;
  std::vector<std::string> notes;
  double elapsed_seconds = 0.0;
  unsigned workers = 1;

  std::vector<Complex> eigenvalues;
  std::vector<double> singulars;
  std::optional<GridField> field;
  std::vector<std::string> artifacts;

  void stat(std::string name, double value);
  /// Looks up a statistic; throws InvalidArgument when absent.
  double statistic(std::string_view name) const;
  bool has_statistic(std::string_view name) const;

  const Criterion& at_most(std::string name, double value, double threshold);
  const Criterion& below(std::string name, double value, double threshold);
  const Criterion& at_least(std::string name, double value, double threshold);
  const Criterion& within(std::string name, double value, double lo, double hi);
  const Criterion* criterion(std::string_view name) const;

  /// True when every declared criterion passed (vacuously true if none).
  bool passed() const;

  /// Full report as JSON. Non-finite statistics are written as the strings
  /// "inf", "-inf" or "masked". Timing lives under "runtime" and is omitted
  /// when `include_runtime` is false.
  std::string to_json(bool include_runtime = true) const;
};

/// Writes report.json plus eigenvalues, singulars and field artifacts (CSV or
/// JSON per `format`) into `dir`, creating it if needed. Fills
/// report.artifacts with the written paths.
void write_report(ExperimentReport& report, const std::string& dir, const std::string& format);

}  // namespace rmt
