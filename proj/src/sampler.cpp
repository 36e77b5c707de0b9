// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rmtlab/sampler.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "rmtlab/error.hpp"

namespace rmt {

AtomLaw AtomLaw::two_point_skew(double p) {
  require(p > 0.0 && p < 1.0, "two_point_skew: p must lie in (0, 1)");
  AtomLaw law{AtomKind::kTwoPointSkew, p};
  law.center = Complex(p, 0.0);
  law.spread = std::sqrt(p * (1.0 - p));
  return law;
}

AtomLaw AtomLaw::parse(std::string_view text) {
  if (text == "complex_gaussian" || text == "gaussian") return complex_gaussian();
  if (text == "real_gaussian") return real_gaussian();
  if (text == "rademacher") return rademacher();
  if (text == "uniform_real") return uniform_real();
  if (text == "uniform_complex") return uniform_complex();
  constexpr std::string_view skew = "two_point_skew";
  if (text.substr(0, skew.size()) == skew) {
    double p = 0.9;
    if (text.size() > skew.size()) {
      if (text[skew.size()] != ':') fail(ErrorCode::kConfig, "unknown atom law: " + std::string(text));
      try {
        p = std::stod(std::string(text.substr(skew.size() + 1)));
      } catch (const std::exception&) {
        fail(ErrorCode::kConfig, "bad two_point_skew parameter: " + std::string(text));
      }
    }
    return two_point_skew(p);
  }
  fail(ErrorCode::kConfig, "unknown atom law: " + std::string(text));
}

std::string AtomLaw::name() const {
  switch (kind) {
    case AtomKind::kComplexGaussian: return "complex_gaussian";
    case AtomKind::kRealGaussian: return "real_gaussian";
    case AtomKind::kRademacher: return "rademacher";
    case AtomKind::kUniformReal: return "uniform_real";
    case AtomKind::kUniformComplex: return "uniform_complex";
    case AtomKind::kTwoPointSkew: {
      std::string out = "two_point_skew:";
      out += std::to_string(p);
      return out;
    }
  }
  return "unknown";
}

namespace {

// Mean and variance of the base distribution, before the affine map.
Complex base_mean(const AtomLaw& law) {
  return law.kind == AtomKind::kTwoPointSkew ? Complex(law.p, 0.0) : Complex(0.0, 0.0);
}

double base_variance(const AtomLaw& law) {
  switch (law.kind) {
    case AtomKind::kComplexGaussian:
    case AtomKind::kRealGaussian:
    case AtomKind::kRademacher:
    case AtomKind::kUniformReal:     // (2 sqrt 3)^2 / 12
    case AtomKind::kUniformComplex:  // r^2 / 2 with r = sqrt 2
      return 1.0;
    case AtomKind::kTwoPointSkew:
      return law.p * (1.0 - law.p);
  }
  return 1.0;
}

}  // namespace

Complex law_mean(const AtomLaw& law) { return (base_mean(law) - law.center) / law.spread; }

double law_variance(const AtomLaw& law) {
  return base_variance(law) / (law.spread * law.spread);
}

AtomLaw standardize(Complex raw_mean, double raw_variance, const AtomLaw& law) {
  if (!(raw_variance > 0.0)) {
    fail(ErrorCode::kDegenerateLaw, "standardize: variance must be positive");
  }
  if (raw_mean == Complex(0.0, 0.0) && raw_variance == 1.0) return law;
  // ((b - c)/s - m)/sqrt(v) = (b - (c + m s)) / (s sqrt(v))
  AtomLaw out = law;
  out.center = law.center + raw_mean * law.spread;
  out.spread = law.spread * std::sqrt(raw_variance);
  return out;
}

std::mt19937_64 make_engine(const SeedSpec& seed) {
  // Length-prefixed words: the map from triples to seed sequences is
  // injective.
  std::vector<std::uint32_t> words;
  words.reserve(6 + seed.stream_tag.size());
  words.push_back(static_cast<std::uint32_t>(seed.master_seed));
  words.push_back(static_cast<std::uint32_t>(seed.master_seed >> 32));
  words.push_back(static_cast<std::uint32_t>(seed.trial_index));
  words.push_back(static_cast<std::uint32_t>(seed.trial_index >> 32));
  words.push_back(static_cast<std::uint32_t>(seed.stream_tag.size()));
  for (unsigned char c : seed.stream_tag) words.push_back(c);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

Complex draw(const AtomLaw& law, std::mt19937_64& engine) {
  Complex base;
  switch (law.kind) {
    case AtomKind::kComplexGaussian: {
      std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
      const double re = gauss(engine);
      const double im = gauss(engine);
      base = Complex(re, im);
      break;
    }
    case AtomKind::kRealGaussian: {
      std::normal_distribution<double> gauss(0.0, 1.0);
      base = Complex(gauss(engine), 0.0);
      break;
    }
    case AtomKind::kRademacher: {
      base = Complex((engine() >> 63) ? 1.0 : -1.0, 0.0);
      break;
    }
    case AtomKind::kUniformReal: {
      std::uniform_real_distribution<double> unif(-std::sqrt(3.0), std::sqrt(3.0));
      base = Complex(unif(engine), 0.0);
      break;
    }
    case AtomKind::kUniformComplex: {
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      const double r = std::sqrt(2.0 * unif(engine));
      const double theta = 2.0 * std::numbers::pi * unif(engine);
      base = std::polar(r, theta);
      break;
    }
    case AtomKind::kTwoPointSkew: {
      std::bernoulli_distribution coin(law.p);
      base = Complex(coin(engine) ? 1.0 : 0.0, 0.0);
      break;
    }
  }
  return (base - law.center) / law.spread;
}

ComplexMatrix sample_matrix(const AtomLaw& law, int n, const SeedSpec& seed) {
  require(n >= 1, "sample_matrix: n must be positive");
  auto engine = make_engine(seed);
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = draw(law, engine);
  }
  return out;
}

}  // namespace rmt
