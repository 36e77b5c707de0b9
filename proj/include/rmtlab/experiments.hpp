// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rmtlab/config.hpp"
#include "rmtlab/report.hpp"

namespace rmt {

/// Eigenvalues of X^-1 Y for one sample of atoms / atoms2 (atoms2 defaults to
/// atoms). Resamples up to 3 times when X is numerically singular.
ExperimentReport run_spherical(const ExperimentConfig& config);

/// Pools the eigenvalues of G^-1 H over trials with complex Gaussian atoms.
/// No criterion is declared below `min_pooled` pooled points.
ExperimentReport run_spherical_exact(const ExperimentConfig& config);

/// Harmonic distance between the atoms-pair and atoms2-pair spectra, with an
/// independent Gaussian-vs-Gaussian baseline.
ExperimentReport run_universality(const ExperimentConfig& config);

/// Second moment, smallest singular value, bulk ratio, +-beta moments and
/// the log-integrability profile of X/sqrt(n) + M over trials.
ExperimentReport run_singular_diagnostics(const ExperimentConfig& config);

/// Trial mean of |log-moment(A - z) - log-moment(B - z)| over a grid, with
/// A = X/sqrt(n) + M (atoms) and B = X'/sqrt(n) + M2 (atoms2).
ExperimentReport run_replacement_diagnostic(const ExperimentConfig& config);

/// Log-determinant field of noise X/sqrt(n) + M, smoothed, differentiated and
/// compared with the reference density.
ExperimentReport run_girko_reconstruction(const ExperimentConfig& config);

/// Eigenvalue cloud of M + K X L/sqrt(n) against the density rebuilt from the
/// singular laws of K^-1 (M - z) L^-1 through the fixed-point equation.
ExperimentReport run_theorem4_pipeline(const ExperimentConfig& config);

/// Direct fixed-point solve for config.nu at config.w.
ExperimentReport run_ds_solve(const ExperimentConfig& config);

/// Validates, dispatches on config.experiment, stamps timing and writes the
/// artifacts when config.out_dir is set.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace rmt
