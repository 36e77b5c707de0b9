// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rmtlab/ds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "rmtlab/parallel.hpp"

namespace rmt {

std::string to_string(DsForm form) {
  return form == DsForm::kWeighted ? "weighted" : "squared";
}

DsForm parse_ds_form(std::string_view text) {
  if (text == "weighted") return DsForm::kWeighted;
  if (text == "squared") return DsForm::kSquared;
  fail(ErrorCode::kConfig, "unknown ds form: " + std::string(text));
}

void DsParams::validate() const {
  require(damping > 0.0 && damping <= 1.0, "DsParams: damping must lie in (0, 1]");
  require(tol > 0.0, "DsParams: tol must be positive");
  require(max_iter >= 1, "DsParams: max_iter must be >= 1");
  require(epsilon > 0.0, "DsParams: epsilon must be positive");
  require(floor > 0.0, "DsParams: floor must be positive");
}

namespace {

// Distinct atom values with their masses; summing over these is the same
// sum as over the raw atoms.
struct WeightedAtoms {
  std::vector<double> x;
  std::vector<double> w;
};

WeightedAtoms compress(const SingularMeasure& nu) {
  std::vector<double> sorted = nu.atoms;
  std::sort(sorted.begin(), sorted.end());
  WeightedAtoms out;
  const double unit = 1.0 / static_cast<double>(sorted.size());
  for (double s : sorted) {
    if (!out.x.empty() && out.x.back() == s) {
      out.w.back() += unit;
    } else {
      out.x.push_back(s);
      out.w.push_back(unit);
    }
  }
  return out;
}

Complex rhs(const WeightedAtoms& atoms, Complex w, Complex m, DsForm form) {
  const Complex one_m = 1.0 + m;
  const Complex shift = one_m * one_m * w;
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < atoms.x.size(); ++k) {
    const double x = atoms.x[k];
    const Complex denom = x * x - shift;
    const double numer_scale = form == DsForm::kWeighted ? 2.0 * x : 1.0;
    sum += atoms.w[k] * numer_scale / denom;
  }
  return sum * one_m;
}

StieltjesSolution iterate(const WeightedAtoms& atoms, Complex w, double damping, double tol,
                          int max_iter, DsForm form, Complex start) {
  StieltjesSolution sol;
  sol.w = w;
  Complex m = start;
  for (int k = 0; k <= max_iter; ++k) {
    const Complex f = rhs(atoms, w, m, form);
    const double r = std::abs(m - f);
    sol.m = m;
    sol.residual = r;
    sol.iterations = k;
    if (r <= tol) {
      sol.converged = true;
      return sol;
    }
    if (!std::isfinite(r)) return sol;
    if (k == max_iter) break;
    m = (1.0 - damping) * m + damping * f;
  }
  return sol;
}

}  // namespace

Complex stieltjes_transform(const SingularMeasure& rho, Complex w) {
  require(rho.size() > 0, "stieltjes_transform: empty measure");
  Complex sum{0.0, 0.0};
  for (double s : rho.atoms) {
    const Complex d = s - w;
    if (d == Complex(0.0, 0.0)) fail(ErrorCode::kPoleHit, "stieltjes_transform: w is an atom");
    sum += 1.0 / d;
  }
  return sum / static_cast<double>(rho.size());
}

Complex ds_rhs(const SingularMeasure& nu, Complex w, Complex m, DsForm form) {
  require(nu.size() > 0, "ds_rhs: empty measure");
  const double unit = 1.0 / static_cast<double>(nu.size());
  const Complex one_m = 1.0 + m;
  Complex sum{0.0, 0.0};
  for (double x : nu.atoms) {
    const double numer_scale = form == DsForm::kWeighted ? 2.0 * x : 1.0;
    sum += unit * numer_scale / (x * x - one_m * one_m * w);
  }
  return sum * one_m;
}

StieltjesSolution ds_iterate(const SingularMeasure& nu, Complex w, const DsParams& params,
                             std::optional<Complex> start) {
  params.validate();
  require(nu.size() > 0, "ds_iterate: empty measure");
  require(w.imag() > 0.0, "ds_iterate: w must lie in the upper half plane");
  return iterate(compress(nu), w, params.damping, params.tol, params.max_iter, params.form,
                 start.value_or(Complex(0.0, 1.0)));
}

StieltjesSolution ds_fixed_point(const SingularMeasure& nu, Complex w, const DsParams& params,
                                 std::optional<Complex> start) {
  const auto sol = ds_iterate(nu, w, params, start);
  if (!sol.converged) {
    std::ostringstream msg;
    msg << "ds_fixed_point: no convergence after " << sol.iterations
        << " iterations, last residual " << sol.residual;
    fail(ErrorCode::kNoConvergence, msg.str());
  }
  if (!(sol.m.imag() > 0.0)) {
    std::ostringstream msg;
    msg << "ds_fixed_point: converged to m = " << sol.m << " with Im(m) <= 0";
    fail(ErrorCode::kBranchViolation, msg.str());
  }
  return sol;
}

DensityTable stieltjes_invert(std::span<const std::pair<double, Complex>> m_values,
                              double epsilon) {
  require(epsilon > 0.0, "stieltjes_invert: epsilon must be positive");
  require(!m_values.empty(), "stieltjes_invert: no samples");
  DensityTable out;
  out.x.reserve(m_values.size());
  out.density.reserve(m_values.size());
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (i > 0) {
      require(m_values[i].first > m_values[i - 1].first,
              "stieltjes_invert: x grid must be strictly increasing");
    }
    out.x.push_back(m_values[i].first);
    out.density.push_back(std::max(m_values[i].second.imag() / std::numbers::pi, 0.0));
  }
  for (std::size_t i = 1; i < out.x.size(); ++i) {
    out.mass += 0.5 * (out.density[i] + out.density[i - 1]) * (out.x[i] - out.x[i - 1]);
  }
  return out;
}

LogMomentEstimate log_moment_from_density(const DensityTable& table, double floor) {
  require(floor > 0.0, "log_moment_from_density: floor must be positive");
  require(table.x.size() == table.density.size() && table.x.size() >= 2,
          "log_moment_from_density: malformed table");
  if (!(table.mass >= 0.9 && table.mass <= 1.1)) {
    std::ostringstream msg;
    msg << "log_moment_from_density: mass " << table.mass << " outside [0.9, 1.1]";
    fail(ErrorCode::kMassDeficit, msg.str());
  }
  const auto& x = table.x;
  const auto& d = table.density;
  LogMomentEstimate out;
  out.mass = table.mass;

  // First node at or beyond the floor; interpolate the density at the floor
  // when the floor falls inside the table.
  std::size_t first = 0;
  while (first < x.size() && x[first] < floor) ++first;
  if (first == x.size()) fail(ErrorCode::kInvalidArgument, "log_moment_from_density: table below floor");
  double lower = x[first];
  double d_lower = d[first];
  double sum = 0.0;
  if (first > 0 && x[first] > floor) {
    const double t = (floor - x[first - 1]) / (x[first] - x[first - 1]);
    const double d_floor = d[first - 1] + t * (d[first] - d[first - 1]);
    sum += 0.5 * (std::log(floor) * d_floor + std::log(x[first]) * d[first]) * (x[first] - floor);
    lower = floor;
    d_lower = d_floor;
  }
  for (std::size_t i = first + 1; i < x.size(); ++i) {
    sum += 0.5 * (std::log(x[i]) * d[i] + std::log(x[i - 1]) * d[i - 1]) * (x[i] - x[i - 1]);
  }
  // int_0^lower ln(x) dx = lower (ln lower - 1), density frozen at `lower`.
  out.truncation = d_lower * lower * (std::log(lower) - 1.0);
  out.value = sum + out.truncation;
  return out;
}

namespace {

constexpr double kWindowMargin = 2.5;
constexpr double kRichardsonTolerance = 0.05;
constexpr double kBranchTolerance = 1e-6;
constexpr int kDampingRetries = 3;

struct LineResult {
  bool ok = false;
  LogMomentEstimate estimate;
  int max_iterations = 0;
  std::size_t ambiguities = 0;
  ErrorCode failure = ErrorCode::kOk;
  std::string detail;
};

// Solve with warm start; on failure retry cold with progressively smaller
// damping. Returns nullopt-equivalent (converged == false) if all fail.
StieltjesSolution robust_solve(const WeightedAtoms& atoms, Complex w, const DsParams& params,
                               Complex warm, bool& branch_failure) {
  branch_failure = false;
  double damping = params.damping;
  Complex start = warm;
  for (int attempt = 0; attempt <= kDampingRetries; ++attempt) {
    auto sol = iterate(atoms, w, damping, params.tol, params.max_iter, params.form, start);
    if (sol.converged && sol.m.imag() > 0.0) return sol;
    if (sol.converged) branch_failure = true;
    damping *= 0.5;
    start = Complex(0.0, 1.0);
  }
  StieltjesSolution failed;
  failed.converged = false;
  return failed;
}

LineResult solve_line(const WeightedAtoms& atoms, const DsParams& params, double eps) {
  LineResult out;
  const double s_min = atoms.x.front();
  const double s_max = atoms.x.back();
  const double step = eps;
  const double lo = std::max(step, s_min - kWindowMargin);
  const double hi = s_max + kWindowMargin;
  const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;

  std::vector<std::pair<double, Complex>> samples;
  samples.reserve(count);
  Complex warm(0.0, 1.0);
  const std::size_t probe = count / 2;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    const Complex w(x, eps);
    // The squared form is solved at w^2 and folded back to the singular
    // value variable: the symmetrised law has transform w m(w^2), and its
    // restriction to R+ carries twice that density.
    const Complex arg = params.form == DsForm::kSquared ? w * w : w;
    bool branch_failure = false;
    const auto sol = robust_solve(atoms, arg, params, warm, branch_failure);
    if (!sol.converged) {
      out.failure = branch_failure ? ErrorCode::kBranchViolation : ErrorCode::kNoConvergence;
      std::ostringstream msg;
      msg << "fixed point failed at x = " << x << ", eps = " << eps;
      out.detail = msg.str();
      return out;
    }
    out.max_iterations = std::max(out.max_iterations, sol.iterations);
    if (i == probe) {
      const auto cold = iterate(atoms, arg, params.damping, params.tol, params.max_iter,
                                params.form, Complex(0.0, 1.0));
      if (cold.converged && std::abs(cold.m - sol.m) > kBranchTolerance) ++out.ambiguities;
    }
    warm = sol.m;
    const Complex folded = params.form == DsForm::kSquared ? 2.0 * w * sol.m : sol.m;
    samples.emplace_back(x, folded);
  }
  try {
    const auto table = stieltjes_invert(samples, eps);
    out.estimate.mass = table.mass;
    out.estimate = log_moment_from_density(table, params.floor);
    out.ok = true;
  } catch (const Error& e) {
    out.failure = e.code();
    out.detail = e.what();
  }
  return out;
}

}  // namespace

NodeLogMoment node_log_moment(const SingularMeasure& nu, const DsParams& params) {
  params.validate();
  require(nu.size() > 0, "node_log_moment: empty measure");
  const auto atoms = compress(nu);
  NodeLogMoment out;
  const auto full = solve_line(atoms, params, params.epsilon);
  out.mass = full.estimate.mass;
  if (!full.ok) {
    out.failure = full.failure;
    out.detail = full.detail;
    return out;
  }
  const auto half = solve_line(atoms, params, 0.5 * params.epsilon);
  if (!half.ok) {
    out.failure = half.failure;
    out.detail = half.detail;
    return out;
  }
  out.value_eps = full.estimate.value;
  out.value_half = half.estimate.value;
  out.mass = full.estimate.mass;
  out.truncation = half.estimate.truncation;
  out.max_iterations = std::max(full.max_iterations, half.max_iterations);
  out.branch_ambiguities = full.ambiguities + half.ambiguities;
  if (std::abs(out.value_eps - out.value_half) > kRichardsonTolerance) {
    out.failure = ErrorCode::kNoConvergence;
    std::ostringstream msg;
    msg << "eps-line log-moments disagree: " << out.value_eps << " vs " << out.value_half;
    out.detail = msg.str();
    return out;
  }
  out.value = 2.0 * out.value_half - out.value_eps;
  out.ok = true;
  return out;
}

PipelineResult evaluate_limit_measure(const NuFamily& family, const DsParams& params,
                                      unsigned workers) {
  family.grid.validate();
  params.validate();
  require(family.nodes.size() == family.grid.node_count(),
          "evaluate_limit_measure: one measure per node required");
  std::vector<NodeLogMoment> nodes(family.nodes.size());
  parallel_for(nodes.size(), workers,
               [&](std::size_t i) { nodes[i] = node_log_moment(family.nodes[i], params); });

  PipelineResult out(family.grid);
  std::map<std::string, std::size_t> failures;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out.branch_ambiguities += nodes[i].branch_ambiguities;
    if (nodes[i].ok) {
      out.log_moment.values[i] = nodes[i].value;
    } else {
      out.log_moment.mask(i);
      ++out.masked_nodes;
      ++failures[std::string(to_string(nodes[i].failure))];
    }
  }
  out.failures.assign(failures.begin(), failures.end());
  out.masked_fraction =
      static_cast<double>(out.masked_nodes) / static_cast<double>(nodes.size());
  if (out.masked_fraction > kMaxMaskedFraction) {
    out.failed = true;
    std::ostringstream msg;
    msg << out.masked_nodes << " of " << nodes.size() << " nodes masked";
    out.failure_reason = msg.str();
    return out;
  }
  try {
    out.density = laplacian_density(out.log_moment);
    out.mass = field_mass(out.density);
  } catch (const Error& e) {
    out.failed = true;
    out.failure_reason = e.what();
  }
  return out;
}

PipelineResult limit_measure_pipeline(const NuFamily& family, const DsParams& params,
                                      unsigned workers) {
  auto result = evaluate_limit_measure(family, params, workers);
  if (result.failed) {
    fail(ErrorCode::kPipelineFailure, "limit_measure_pipeline: " + result.failure_reason);
  }
  return result;
}

}  // namespace rmt
