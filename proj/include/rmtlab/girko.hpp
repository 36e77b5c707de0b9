// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rmtlab/linalg.hpp"
#include "rmtlab/measures.hpp"

namespace rmt {

/// Square lattice of `steps` x `steps` nodes spanning [x_min, x_max] x
/// [y_min, y_max], endpoints included.
struct GridSpec {
  double x_min = -2.0;
  double x_max = 2.0;
  double y_min = -2.0;
  double y_max = 2.0;
  int steps = 101;

  void validate() const;
  double hx() const { return (x_max - x_min) / (steps - 1); }
  double hy() const { return (y_max - y_min) / (steps - 1); }
  std::size_t node_count() const { return static_cast<std::size_t>(steps) * steps; }
  Complex node(int ix, int iy) const { return {x_min + ix * hx(), y_min + iy * hy()}; }
  Complex node(std::size_t index) const {
    return node(static_cast<int>(index % steps), static_cast<int>(index / steps));
  }
  bool operator==(const GridSpec&) const = default;
};

/// One scalar per node, row-major in y. Masked nodes have valid == 0 and
/// value 0; they never carry NaN.
struct GridField {
  GridSpec spec;
  std::vector<double> values;
  std::vector<std::uint8_t> valid;

  explicit GridField(const GridSpec& s)
      : spec(s), values(s.node_count(), 0.0), valid(s.node_count(), 1) {}

  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * spec.steps + ix;
  }
  void mask(std::size_t i) {
    valid[i] = 0;
    values[i] = 0.0;
  }
  std::size_t masked_count() const;
};

/// Deterministic matrix supplier keyed by trial index.
using EnsembleSampler = std::function<ComplexMatrix(std::uint64_t trial)>;

struct LogDeterminantField {
  GridField field;
  std::size_t masked_nodes = 0;
};

/// Node value (1/n) sum ln|z - lambda| weighted by mu; nodes within 1e-9 of
/// an atom are masked.
GridField potential_of_measure(const SpectralMeasure& mu, const GridSpec& grid);

/// Trial average of the log-moment of nu_{A - z} at every node. Each trial
/// reduces A to Hessenberg form once and evaluates (1/n) ln|det(A - z)|, which
/// equals (1/n) sum ln s_k(A - z). Nodes where any trial meets an exact zero
/// pivot are masked. Trials run on up to `workers` threads; the average is
/// taken in trial order.
LogDeterminantField empirical_log_determinant_field(const EnsembleSampler& sampler,
                                                    const GridSpec& grid, int trials,
                                                    unsigned workers = 1);

/// Averages each interior valid node with its valid 3x3 neighbours, `passes`
/// times. Boundary nodes and masked nodes are left unchanged.
GridField box_smooth(const GridField& u, int passes = 1);

/// Five-point discrete Laplacian scaled by 1/(2 pi), so that the potential
/// of a probability measure maps to its density. The boundary ring and nodes
/// whose stencil touches a masked node are masked. Throws InsufficientGrid if
/// no node survives.
GridField laplacian_density(const GridField& u);

/// Sum of value * hx * hy over valid nodes, optionally restricted to those
/// satisfying `where`.
double field_mass(const GridField& density,
                  const std::function<bool(Complex)>& where = nullptr);

/// Valid nodes of a density field as a weighted measure on C. Negative
/// values are clipped to 0 and weights normalised to sum to 1.
SpectralMeasure field_to_measure(const GridField& density);

}  // namespace rmt
