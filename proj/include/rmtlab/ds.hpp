// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rmtlab/error.hpp"
#include "rmtlab/girko.hpp"
#include "rmtlab/linalg.hpp"
#include "rmtlab/measures.hpp"

namespace rmt {

/// Right-hand side used by the deterministic-equivalent fixed point for the
/// singular values of X/sqrt(n) + A, where nu is the singular value law of A.
enum class DsForm {
  /// m = int 2x(1+m) / (x^2 - (1+m)^2 w) dnu(x), read as the transform of the
  /// singular value law itself.
  kWeighted,
  /// m = int (1+m) / (x^2 - (1+m)^2 w) dnu(x): the Dozier-Silverstein
  /// equation for the law of the squared singular values.
  kSquared,
};

std::string to_string(DsForm form);
DsForm parse_ds_form(std::string_view text);

struct DsParams {
  double damping = 0.5;
  double tol = 1e-10;
  int max_iter = 10000;
  double epsilon = 1e-3;  // height of the inversion line
  double floor = 1e-4;    // log-moment integration cut near 0
  DsForm form = DsForm::kWeighted;

  void validate() const;
};

struct StieltjesSolution {
  Complex m{0.0, 0.0};
  Complex w{0.0, 0.0};
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// (1/n) sum 1/(s_k - w). Throws PoleHit when w is a real atom.
Complex stieltjes_transform(const SingularMeasure& rho, Complex w);

/// Right-hand side F(m) of the fixed-point equation, by exact summation.
Complex ds_rhs(const SingularMeasure& nu, Complex w, Complex m, DsForm form);

/// Damped Picard iteration m <- (1 - damping) m + damping F(m) from `start`
/// (default i). Never throws on non-convergence; inspect `converged`.
StieltjesSolution ds_iterate(const SingularMeasure& nu, Complex w, const DsParams& params,
                             std::optional<Complex> start = std::nullopt);

/// As ds_iterate but throws NoConvergence when the budget runs out and
/// BranchViolation when the converged value has Im(m) <= 0.
StieltjesSolution ds_fixed_point(const SingularMeasure& nu, Complex w, const DsParams& params,
                                 std::optional<Complex> start = std::nullopt);

struct DensityTable {
  std::vector<double> x;
  std::vector<double> density;
  double mass = 0.0;  // trapezoid mass over the table
};

/// density(x) = max(Im m(x + i eps) / pi, 0) on a strictly increasing grid.
DensityTable stieltjes_invert(std::span<const std::pair<double, Complex>> m_values,
                              double epsilon);

struct LogMomentEstimate {
  double value = 0.0;       // trapezoid part plus truncation term
  double truncation = 0.0;  // estimate of int_0^floor ln(x) density(x) dx
  double mass = 0.0;
};

/// int ln(x) density(x) dx. The part below max(floor, x_0) is replaced by
/// density(lower) * lower * (ln lower - 1) and reported separately. Throws
/// MassDeficit when the table mass is outside [0.9, 1.1].
LogMomentEstimate log_moment_from_density(const DensityTable& table, double floor = 1e-4);

/// Per-node outcome of the transform -> inversion -> log-moment chain.
struct NodeLogMoment {
  bool ok = false;
  double value = 0.0;         // Richardson combination 2 L(eps/2) - L(eps)
  double value_eps = 0.0;     // L(eps)
  double value_half = 0.0;    // L(eps/2)
  double mass = 0.0;          // recovered mass on the eps line
  double truncation = 0.0;
  int max_iterations = 0;
  std::size_t branch_ambiguities = 0;  // warm and cold starts disagreeing > 1e-6
  ErrorCode failure = ErrorCode::kOk;
  std::string detail;
};

/// Solves the fixed point along the lines Im w = eps and eps/2 over the
/// window around the support of nu, inverts, and integrates ln x. Failures
/// are reported in the result rather than thrown.
NodeLogMoment node_log_moment(const SingularMeasure& nu, const DsParams& params);

/// The family (nu_z) on a grid, one singular measure per node.
struct NuFamily {
  GridSpec grid;
  std::vector<SingularMeasure> nodes;
};

struct PipelineResult {
  GridField log_moment;
  GridField density;
  std::size_t masked_nodes = 0;
  double masked_fraction = 0.0;
  double mass = 0.0;
  std::size_t branch_ambiguities = 0;
  std::vector<std::pair<std::string, std::size_t>> failures;  // by error kind
  bool failed = false;
  std::string failure_reason;

  explicit PipelineResult(const GridSpec& g) : log_moment(g), density(g) {}
};

/// Maximum fraction of masked nodes a pipeline run may have.
inline constexpr double kMaxMaskedFraction = 0.2;

/// Runs node_log_moment on every node (in parallel), assembles the field and
/// applies laplacian_density. Sets `failed` when more than 20% of nodes are
/// masked or no density survives; never throws for node-level failures.
PipelineResult evaluate_limit_measure(const NuFamily& family, const DsParams& params,
                                      unsigned workers = 1);

/// evaluate_limit_measure, throwing PipelineFailure when the run failed.
PipelineResult limit_measure_pipeline(const NuFamily& family, const DsParams& params,
                                      unsigned workers = 1);

}  // namespace rmt
