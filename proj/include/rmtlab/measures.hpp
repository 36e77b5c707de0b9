// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rmtlab/linalg.hpp"

namespace rmt {

/// Finite measure on C. Empty `weights` means uniform weight 1/size();
/// otherwise weights are explicit (quadrature rules, reconstructed densities)
/// and are expected to sum to 1.
struct SpectralMeasure {
  std::vector<Complex> atoms;
  std::vector<double> weights;

  SpectralMeasure() = default;
  explicit SpectralMeasure(std::vector<Complex> a) : atoms(std::move(a)) {}
  SpectralMeasure(std::vector<Complex> a, std::vector<double> w)
      : atoms(std::move(a)), weights(std::move(w)) {}
  static SpectralMeasure of(const EigenSpectrum& spectrum) {
    return SpectralMeasure(spectrum.values);
  }

  std::size_t size() const { return atoms.size(); }
  bool uniform() const { return weights.empty(); }
  double weight(std::size_t i) const {
    return weights.empty() ? 1.0 / static_cast<double>(atoms.size()) : weights[i];
  }
  double total_weight() const;
};

/// Uniform empirical measure on nonnegative reals.
struct SingularMeasure {
  std::vector<double> atoms;

  SingularMeasure() = default;
  explicit SingularMeasure(std::vector<double> a);
  static SingularMeasure of(const SingularSpectrum& spectrum) {
    return SingularMeasure(spectrum.values);
  }

  std::size_t size() const { return atoms.size(); }
};

struct SpherePoint {
  double u = 0.0;
  double v = 0.0;
  double h = 0.0;
};

/// Image of the point at infinity.
inline constexpr SpherePoint kNorthPole{0.0, 0.0, 1.0};

/// (1/n) sum s^alpha. alpha must be nonzero; negative alpha with a zero atom
/// throws ZeroAtom.
double moment(const SingularMeasure& nu, double alpha);

/// (1/n) sum ln s. Throws ZeroAtom on any zero atom.
double log_moment(const SingularMeasure& nu);

/// Tail mass (1/n) sum_{|ln s| >= t} |ln s|.
double ui_profile(const SingularMeasure& nu, double t);

SpherePoint stereographic(Complex z);
/// Inverse projection; the north pole itself is not representable.
Complex inverse_stereographic(const SpherePoint& p);

/// Pushforward under z -> 1/z. Throws ZeroAtom if any atom is 0.
SpectralMeasure invert_measure(const SpectralMeasure& mu);

/// Kolmogorov-Smirnov sup distance between the (weighted) empirical CDF of
/// `samples` and `cdf`. Empty weights mean uniform.
double ks_statistic(std::span<const double> samples, std::span<const double> weights,
                    const std::function<double(double)>& cdf);

/// KS distance between the law of |atom| and a radial CDF.
double ks_radial(const SpectralMeasure& mu, const std::function<double(double)>& radial_cdf);

/// KS distance of the stereographic heights of mu to Uniform[-1, 1].
double ks_height(const SpectralMeasure& mu);

inline constexpr std::size_t kHarmonicCount = 24;

/// Real orthonormal spherical harmonics of degree 1..4 at a unit vector,
/// ordered by degree then order m = -l..l.
std::array<double, kHarmonicCount> real_harmonics(const SpherePoint& p);

/// Mean of each harmonic under the stereographic image of mu.
std::array<double, kHarmonicCount> harmonic_means(const SpectralMeasure& mu);

/// max_k |E_mu1 Y_k - E_mu2 Y_k| over the 24 harmonics of degree 1..4.
double harmonic_distance(const SpectralMeasure& mu1, const SpectralMeasure& mu2);

}  // namespace rmt
