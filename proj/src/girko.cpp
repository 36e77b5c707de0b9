// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rmtlab/girko.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rmtlab/error.hpp"
#include "rmtlab/parallel.hpp"

namespace rmt {

void GridSpec::validate() const {
  require(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
              std::isfinite(y_max),
          "GridSpec: bounds must be finite");
  require(x_min < x_max, "GridSpec: x_min must be < x_max");
  require(y_min < y_max, "GridSpec: y_min must be < y_max");
  require(steps >= 3, "GridSpec: at least 3 nodes per axis");
}

std::size_t GridField::masked_count() const {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), 0));
}

GridField potential_of_measure(const SpectralMeasure& mu, const GridSpec& grid) {
  grid.validate();
  require(mu.size() > 0, "potential_of_measure: empty measure");
  GridField out(grid);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const Complex z = grid.node(i);
    double sum = 0.0;
    bool hit = false;
    for (std::size_t k = 0; k < mu.size(); ++k) {
      const double d = std::abs(z - mu.atoms[k]);
      if (d <= 1e-9) {
        hit = true;
        break;
      }
      sum += mu.weight(k) * std::log(d);
    }
    if (hit) {
      out.mask(i);
    } else {
      out.values[i] = sum;
    }
  }
  return out;
}

LogDeterminantField empirical_log_determinant_field(const EnsembleSampler& sampler,
                                                    const GridSpec& grid, int trials,
                                                    unsigned workers) {
  grid.validate();
  require(trials >= 1, "empirical_log_determinant_field: trials must be >= 1");
  const std::size_t nodes = grid.node_count();
  std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(trials));
  parallel_for(per_trial.size(), workers, [&](std::size_t t) {
    const ComplexMatrix a = sampler(t);
    const RowMajorMatrix h = hessenberg_form(a);
    const double inv_n = 1.0 / static_cast<double>(a.rows());
    auto& vals = per_trial[t];
    vals.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      vals[i] = inv_n * hessenberg_log_abs_det_shifted(h, grid.node(i));
    }
  });
  LogDeterminantField out{GridField(grid), 0};
  for (std::size_t i = 0; i < nodes; ++i) {
    double sum = 0.0;
    bool ok = true;
    for (const auto& vals : per_trial) {
      if (!std::isfinite(vals[i])) {
        ok = false;
        break;
      }
      sum += vals[i];
    }
    if (ok) {
      out.field.values[i] = sum / trials;
    } else {
      out.field.mask(i);
      ++out.masked_nodes;
    }
  }
  return out;
}

GridField box_smooth(const GridField& u, int passes) {
  require(passes >= 0, "box_smooth: passes must be >= 0");
  GridField cur = u;
  const int s = u.spec.steps;
  for (int p = 0; p < passes; ++p) {
    GridField next = cur;
    for (int iy = 1; iy + 1 < s; ++iy) {
      for (int ix = 1; ix + 1 < s; ++ix) {
        const std::size_t c = cur.index(ix, iy);
        if (!cur.valid[c]) continue;
        double sum = 0.0;
        int count = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const std::size_t k = cur.index(ix + dx, iy + dy);
            if (cur.valid[k]) {
              sum += cur.values[k];
              ++count;
            }
          }
        }
        next.values[c] = sum / count;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

GridField laplacian_density(const GridField& u) {
  const GridSpec& g = u.spec;
  if (g.steps < 3) fail(ErrorCode::kInsufficientGrid, "laplacian_density: grid below 3x3");
  GridField out(g);
  const double hx2 = g.hx() * g.hx();
  const double hy2 = g.hy() * g.hy();
  const double scale = 1.0 / (2.0 * std::numbers::pi);
  std::size_t kept = 0;
  for (int iy = 0; iy < g.steps; ++iy) {
    for (int ix = 0; ix < g.steps; ++ix) {
      const std::size_t c = out.index(ix, iy);
      if (ix == 0 || iy == 0 || ix + 1 == g.steps || iy + 1 == g.steps) {
        out.mask(c);
        continue;
      }
      const std::size_t e = u.index(ix + 1, iy), w = u.index(ix - 1, iy);
      const std::size_t n = u.index(ix, iy + 1), s = u.index(ix, iy - 1);
      if (!(u.valid[c] && u.valid[e] && u.valid[w] && u.valid[n] && u.valid[s])) {
        out.mask(c);
        continue;
      }
      const double uc = u.values[c];
      const double lap = (u.values[e] + u.values[w] - 2.0 * uc) / hx2 +
                         (u.values[n] + u.values[s] - 2.0 * uc) / hy2;
      out.values[c] = scale * lap;
      ++kept;
    }
  }
  if (kept == 0) fail(ErrorCode::kInsufficientGrid, "laplacian_density: no valid interior node");
  return out;
}

double field_mass(const GridField& density, const std::function<bool(Complex)>& where) {
  const double cell = density.spec.hx() * density.spec.hy();
  double mass = 0.0;
  for (std::size_t i = 0; i < density.values.size(); ++i) {
    if (!density.valid[i]) continue;
    if (where && !where(density.spec.node(i))) continue;
    mass += density.values[i] * cell;
  }
  return mass;
}

SpectralMeasure field_to_measure(const GridField& density) {
  SpectralMeasure out;
  double total = 0.0;
  for (std::size_t i = 0; i < density.values.size(); ++i) {
    if (!density.valid[i] || density.values[i] <= 0.0) continue;
    out.atoms.push_back(density.spec.node(i));
    out.weights.push_back(density.values[i]);
    total += density.values[i];
  }
  if (total <= 0.0) fail(ErrorCode::kPipelineFailure, "field_to_measure: no positive density");
  for (auto& w : out.weights) w /= total;
  return out;
}

}  // namespace rmt
