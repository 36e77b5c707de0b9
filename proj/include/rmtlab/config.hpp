// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rmtlab/ds.hpp"
#include "rmtlab/girko.hpp"
#include "rmtlab/sampler.hpp"

namespace rmt {

/// Deterministic n x n matrix given by a diagonal pattern. Text forms:
/// "identity", "zero", "scalar:c", "diag:a,b,..." (pattern cycled to length
/// n; entries may be complex as "re+imi" or "re:im").
struct MatrixSpec {
  std::vector<Complex> pattern{Complex(1.0, 0.0)};

  static MatrixSpec identity() { return {}; }
  static MatrixSpec zero() { return MatrixSpec{{Complex(0.0, 0.0)}}; }
  static MatrixSpec scalar(Complex c) { return MatrixSpec{{c}}; }
  static MatrixSpec parse(std::string_view text);

  std::vector<Complex> diagonal(int n) const;
  ComplexMatrix build(int n) const;
  bool is_scalar() const;
  bool is_zero() const;
  std::string text() const;
};

/// Pass/fail thresholds. Defaults are the calibrated desk-scale values; every
/// one can be overridden from the command line or a config file.
struct Thresholds {
  double ks = 0.08;                 // spherical radial and height KS
  double exact_ks = 0.02;           // pooled spherical-ensemble KS
  double distance = 0.08;           // cross-ensemble harmonic distance
  double pipeline_distance = 0.12;  // cloud vs reconstructed density
  double circular_ks = 0.08;        // cloud radial KS vs translated circular law
  double quarter_ks = 0.05;
  double second_moment_lo = 0.9;
  double second_moment_hi = 1.1;
  double second_moment_bound = 2.0;
  double ui_t = 5.0;
  double ui_max = 0.01;
  double gap = 0.05;                // replacement diagnostic and DS probes
  double density_linf = 0.15;
  double density_radius = 0.7;
  double mass_radius = 1.2;
  double mass_tolerance = 0.1;
  double hypothesis_max = 1e6;
  std::size_t min_pooled = 1000;
};

struct ExperimentConfig {
  std::string experiment;
  int n = 512;
  int trials = 1;
  AtomLaw atoms = AtomLaw::complex_gaussian();
  std::optional<AtomLaw> atoms2;
  std::uint64_t seed = 20260101;
  std::optional<GridSpec> grid;
  int grid_steps = 41;  // auto grids (theorem4)
  std::string reference;
  unsigned workers = 1;
  std::string format = "csv";
  std::string out_dir;

  MatrixSpec mat_m = MatrixSpec::zero();
  std::optional<MatrixSpec> mat_m2;
  MatrixSpec mat_k = MatrixSpec::identity();
  MatrixSpec mat_l = MatrixSpec::identity();
  double noise = 1.0;      // scale of X/sqrt(n) in girko ensembles
  int smooth_passes = 0;
  bool shared_seed = false;

  double gamma = 0.01;
  double c0 = 0.1;
  double c1 = 2.0;
  double alpha = 1.0;
  std::vector<double> betas{0.1, 0.25, 0.5};

  DsParams ds;
  std::vector<double> nu{1.0};  // ds-solve input measure
  Complex w{0.0, 1.0};          // ds-solve evaluation point

  Thresholds thresholds;

  /// Checks invariants: n >= 8 (>= 1 for spherical-exact and ds-solve),
  /// trials >= 1, gamma in (0, 1).
  void validate() const;
};

/// Names of the experiments, in CLI spelling.
const std::vector<std::string>& experiment_names();

/// Experiment-specific defaults (n, trials, grid, smoothing, thresholds).
ExperimentConfig default_config(std::string_view experiment);

/// Applies one key/value pair; keys are the CLI long-flag names without the
/// leading dashes. Throws ConfigError for unknown keys or bad values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Reads "key = value" lines ('#' starts a comment) and applies them.
void load_config_file(ExperimentConfig& config, const std::string& path);

/// All accepted keys.
const std::vector<std::string>& config_keys();

/// Normalised key/value echo of everything that influences results (no
/// worker count, no output paths).
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& config);

GridSpec parse_grid(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);
Complex parse_complex(std::string_view text);

}  // namespace rmt
