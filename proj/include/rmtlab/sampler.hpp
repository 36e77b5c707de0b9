// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "rmtlab/linalg.hpp"

namespace rmt {

enum class AtomKind {
  kComplexGaussian,  // Re, Im independent N(0, 1/2)
  kRealGaussian,
  kRademacher,
  kUniformReal,      // uniform on [-sqrt 3, sqrt 3] before the affine map
  kUniformComplex,   // uniform on the disk of radius sqrt 2
  kTwoPointSkew,     // Bernoulli(p) on {1, 0} before the affine map
};

/// An i.i.d. entry law. A draw is (base - center) / spread where `base` comes
/// from the kind's base distribution. Built-in factories choose center and
/// spread so the law has mean 0 and E|X|^2 = 1; `standardize` restores that
/// for arbitrary affine variants.
struct AtomLaw {
  AtomKind kind = AtomKind::kComplexGaussian;
  double p = 0.5;  // two_point_skew success probability
  Complex center{0.0, 0.0};
  double spread = 1.0;

  static AtomLaw complex_gaussian() { return {AtomKind::kComplexGaussian}; }
  static AtomLaw real_gaussian() { return {AtomKind::kRealGaussian}; }
  static AtomLaw rademacher() { return {AtomKind::kRademacher}; }
  static AtomLaw uniform_real() { return {AtomKind::kUniformReal}; }
  static AtomLaw uniform_complex() { return {AtomKind::kUniformComplex}; }
  static AtomLaw two_point_skew(double p);

  /// Parses a CLI name such as "rademacher" or "two_point_skew:0.9".
  static AtomLaw parse(std::string_view text);

  std::string name() const;
  bool operator==(const AtomLaw&) const = default;
};

/// Closed-form E[X] of the law.
Complex law_mean(const AtomLaw& law);
/// Closed-form E|X - E X|^2 of the law.
double law_variance(const AtomLaw& law);

/// Affine recentering: given the law's current mean and variance, returns the
/// law with mean 0 and variance 1. Throws DegenerateLaw for variance <= 0.
AtomLaw standardize(Complex raw_mean, double raw_variance, const AtomLaw& law);

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::string stream_tag;
  std::uint64_t trial_index = 0;
};

/// Generator seeded from the whole (master_seed, stream_tag, trial_index)
/// triple. Distinct triples feed distinct seed sequences.
std::mt19937_64 make_engine(const SeedSpec& seed);

/// One draw from `law`.
Complex draw(const AtomLaw& law, std::mt19937_64& engine);

/// n x n matrix of i.i.d. draws, filled row-major. Bit-identical for
/// identical inputs regardless of threading.
ComplexMatrix sample_matrix(const AtomLaw& law, int n, const SeedSpec& seed);

}  // namespace rmt
