// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rmtlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rmtlab/error.hpp"

namespace rmt {

double SpectralMeasure::total_weight() const {
  if (weights.empty()) return atoms.empty() ? 0.0 : 1.0;
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

SingularMeasure::SingularMeasure(std::vector<double> a) : atoms(std::move(a)) {
  for (double s : atoms) {
    require(s >= 0.0 && std::isfinite(s), "SingularMeasure: atoms must be finite and >= 0");
  }
}

double moment(const SingularMeasure& nu, double alpha) {
  require(alpha != 0.0, "moment: alpha must be nonzero");
  require(nu.size() > 0, "moment: empty measure");
  double sum = 0.0;
  for (double s : nu.atoms) {
    if (alpha < 0.0 && s == 0.0) fail(ErrorCode::kZeroAtom, "moment: zero atom with negative alpha");
    sum += std::pow(s, alpha);
  }
  return sum / static_cast<double>(nu.size());
}

double log_moment(const SingularMeasure& nu) {
  require(nu.size() > 0, "log_moment: empty measure");
  double sum = 0.0;
  for (double s : nu.atoms) {
    if (s == 0.0) fail(ErrorCode::kZeroAtom, "log_moment: zero atom");
    sum += std::log(s);
  }
  return sum / static_cast<double>(nu.size());
}

double ui_profile(const SingularMeasure& nu, double t) {
  require(t > 0.0, "ui_profile: t must be positive");
  require(nu.size() > 0, "ui_profile: empty measure");
  double sum = 0.0;
  for (double s : nu.atoms) {
    if (s == 0.0) fail(ErrorCode::kZeroAtom, "ui_profile: zero atom");
    const double l = std::abs(std::log(s));
    if (l >= t) sum += l;
  }
  return sum / static_cast<double>(nu.size());
}

SpherePoint stereographic(Complex z) {
  const double r2 = std::norm(z);
  const double d = r2 + 1.0;
  return {2.0 * z.real() / d, 2.0 * z.imag() / d, (r2 - 1.0) / d};
}

Complex inverse_stereographic(const SpherePoint& p) {
  const Complex w(p.u, p.v);
  if (p.h <= 0.0) return w / (1.0 - p.h);
  // Near the north pole 1 - h cancels; u^2 + v^2 = 1 - h^2 keeps precision.
  const double rho2 = p.u * p.u + p.v * p.v;
  require(rho2 > 0.0, "inverse_stereographic: north pole has no finite preimage");
  return w * (1.0 + p.h) / rho2;
}

SpectralMeasure invert_measure(const SpectralMeasure& mu) {
  SpectralMeasure out = mu;
  for (auto& z : out.atoms) {
    if (z == Complex(0.0, 0.0)) fail(ErrorCode::kZeroAtom, "invert_measure: atom at 0");
    z = 1.0 / z;
  }
  return out;
}

double ks_statistic(std::span<const double> samples, std::span<const double> weights,
                    const std::function<double(double)>& cdf) {
  require(!samples.empty(), "ks_statistic: no samples");
  require(weights.empty() || weights.size() == samples.size(),
          "ks_statistic: weight count mismatch");
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return samples[a] < samples[b]; });
  const double uniform_w = 1.0 / static_cast<double>(samples.size());
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) total += weights.empty() ? uniform_w : weights[i];
  require(total > 0.0, "ks_statistic: zero total weight");

  double below = 0.0;  // empirical CDF just left of the current value
  double sup = 0.0;
  std::size_t k = 0;
  while (k < order.size()) {
    const double x = samples[order[k]];
    double step = 0.0;
    while (k < order.size() && samples[order[k]] == x) {
      step += weights.empty() ? uniform_w : weights[order[k]];
      ++k;
    }
    const double above = below + step / total;
    const double f = cdf(x);
    sup = std::max({sup, std::abs(above - f), std::abs(below - f)});
    below = above;
  }
  return sup;
}

double ks_radial(const SpectralMeasure& mu, const std::function<double(double)>& radial_cdf) {
  std::vector<double> radii(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) radii[i] = std::abs(mu.atoms[i]);
  return ks_statistic(radii, mu.weights, radial_cdf);
}

double ks_height(const SpectralMeasure& mu) {
  std::vector<double> heights(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) heights[i] = stereographic(mu.atoms[i]).h;
  return ks_statistic(heights, mu.weights,
                      [](double h) { return std::clamp((1.0 + h) / 2.0, 0.0, 1.0); });
}

std::array<double, kHarmonicCount> real_harmonics(const SpherePoint& p) {
  using std::numbers::pi;
  using std::sqrt;
  const double x = p.u, y = p.v, z = p.h;
  const double x2 = x * x, y2 = y * y, z2 = z * z;
  const double c1 = sqrt(3.0 / (4.0 * pi));
  return {
      // l = 1
      c1 * y,
      c1 * z,
      c1 * x,
      // l = 2
      0.5 * sqrt(15.0 / pi) * x * y,
      0.5 * sqrt(15.0 / pi) * y * z,
      0.25 * sqrt(5.0 / pi) * (3.0 * z2 - 1.0),
      0.5 * sqrt(15.0 / pi) * x * z,
      0.25 * sqrt(15.0 / pi) * (x2 - y2),
      // l = 3
      0.25 * sqrt(35.0 / (2.0 * pi)) * y * (3.0 * x2 - y2),
      0.5 * sqrt(105.0 / pi) * x * y * z,
      0.25 * sqrt(21.0 / (2.0 * pi)) * y * (5.0 * z2 - 1.0),
      0.25 * sqrt(7.0 / pi) * (5.0 * z2 * z - 3.0 * z),
      0.25 * sqrt(21.0 / (2.0 * pi)) * x * (5.0 * z2 - 1.0),
      0.25 * sqrt(105.0 / pi) * z * (x2 - y2),
      0.25 * sqrt(35.0 / (2.0 * pi)) * x * (x2 - 3.0 * y2),
      // l = 4
      0.75 * sqrt(35.0 / pi) * x * y * (x2 - y2),
      0.75 * sqrt(35.0 / (2.0 * pi)) * y * z * (3.0 * x2 - y2),
      0.75 * sqrt(5.0 / pi) * x * y * (7.0 * z2 - 1.0),
      0.75 * sqrt(5.0 / (2.0 * pi)) * y * z * (7.0 * z2 - 3.0),
      (3.0 / 16.0) * sqrt(1.0 / pi) * (35.0 * z2 * z2 - 30.0 * z2 + 3.0),
      0.75 * sqrt(5.0 / (2.0 * pi)) * x * z * (7.0 * z2 - 3.0),
      (3.0 / 8.0) * sqrt(5.0 / pi) * (x2 - y2) * (7.0 * z2 - 1.0),
      0.75 * sqrt(35.0 / (2.0 * pi)) * x * z * (x2 - 3.0 * y2),
      (3.0 / 16.0) * sqrt(35.0 / pi) * (x2 * (x2 - 3.0 * y2) - y2 * (3.0 * x2 - y2)),
  };
}

std::array<double, kHarmonicCount> harmonic_means(const SpectralMeasure& mu) {
  std::array<double, kHarmonicCount> acc{};
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double w = mu.weight(i);
    const auto y = real_harmonics(stereographic(mu.atoms[i]));
    for (std::size_t k = 0; k < kHarmonicCount; ++k) acc[k] += w * y[k];
    total += w;
  }
  if (total > 0.0) {
    for (auto& a : acc) a /= total;
  }
  return acc;
}

double harmonic_distance(const SpectralMeasure& mu1, const SpectralMeasure& mu2) {
  const auto a = harmonic_means(mu1);
  const auto b = harmonic_means(mu2);
  double out = 0.0;
  for (std::size_t k = 0; k < kHarmonicCount; ++k) out = std::max(out, std::abs(a[k] - b[k]));
  return out;
}

}  // namespace rmt
