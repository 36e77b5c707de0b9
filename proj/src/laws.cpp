// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rmtlab/laws.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rmtlab/error.hpp"

namespace rmt {

using std::numbers::pi;

double spherical_density(Complex z) {
  const double d = 1.0 + std::norm(z);
  return 1.0 / (pi * d * d);
}

double spherical_radial_cdf(double r) {
  require(r >= 0.0, "spherical_radial_cdf: r must be >= 0");
  if (std::isinf(r)) return 1.0;
  const double r2 = r * r;
  return r2 / (1.0 + r2);
}

double circular_density(Complex z) { return std::norm(z) <= 1.0 ? 1.0 / pi : 0.0; }

double circular_radial_cdf(double r) {
  require(r >= 0.0, "circular_radial_cdf: r must be >= 0");
  return std::min(r * r, 1.0);
}

double quarter_circle_density(double x) {
  if (x < 0.0 || x > 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / pi;
}

double quarter_circle_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return (x * std::sqrt(4.0 - x * x) / 2.0 + 2.0 * std::asin(x / 2.0)) / pi;
}

std::string ReferenceLaw::label() const {
  switch (name) {
    case ReferenceName::kSpherical: return "spherical";
    case ReferenceName::kCircular: return "circular";
    case ReferenceName::kQuarterCircle: return "quarter_circle";
  }
  return "unknown";
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-12, &error);
}

namespace {

double radial_mass(const std::function<double(Complex)>& density, double r_max) {
  return integrate([&](double r) { return 2.0 * pi * r * density(Complex(r, 0.0)); }, 0.0, r_max);
}

}  // namespace

ReferenceLaw make_reference_law(ReferenceName name) {
  ReferenceLaw law{name, {}, {}, {}};
  double mass = 0.0;
  switch (name) {
    case ReferenceName::kSpherical:
      law.density = spherical_density;
      law.radial_cdf = spherical_radial_cdf;
      law.support = "C";
      mass = radial_mass(law.density, std::numeric_limits<double>::infinity());
      break;
    case ReferenceName::kCircular:
      law.density = circular_density;
      law.radial_cdf = circular_radial_cdf;
      law.support = "|z| <= 1";
      mass = radial_mass(law.density, 1.0);
      break;
    case ReferenceName::kQuarterCircle:
      law.density = [](Complex z) { return quarter_circle_density(z.real()); };
      law.radial_cdf = quarter_circle_cdf;
      law.support = "[0, 2]";
      mass = integrate(quarter_circle_density, 0.0, 2.0);
      break;
  }
  if (std::abs(mass - 1.0) > 1e-8) {
    fail(ErrorCode::kInternal, "reference law " + law.label() + " fails normalization");
  }
  return law;
}

ReferenceLaw make_reference_law(std::string_view name) {
  if (name == "spherical") return make_reference_law(ReferenceName::kSpherical);
  if (name == "circular") return make_reference_law(ReferenceName::kCircular);
  if (name == "quarter_circle") return make_reference_law(ReferenceName::kQuarterCircle);
  fail(ErrorCode::kConfig, "unknown reference law: " + std::string(name));
}

namespace {

constexpr int kLegendreNodes = 30;

// Gauss-Legendre rule on [lo, hi] expanded from Boost's half-rule.
std::vector<std::pair<double, double>> legendre_rule(double lo, double hi) {
  using Rule = boost::math::quadrature::gauss<double, kLegendreNodes>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      out.emplace_back(mid, half * w[i]);
    } else {
      out.emplace_back(mid - half * x[i], half * w[i]);
      out.emplace_back(mid + half * x[i], half * w[i]);
    }
  }
  return out;
}

}  // namespace

SpectralMeasure uniform_sphere_quadrature() {
  constexpr int kLongitudes = 32;
  SpectralMeasure out;
  for (const auto& [h, wh] : legendre_rule(-1.0, 1.0)) {
    const double rho = std::sqrt(1.0 - h * h);
    for (int k = 0; k < kLongitudes; ++k) {
      const double phi = 2.0 * pi * (k + 0.5) / kLongitudes;
      out.atoms.push_back(inverse_stereographic({rho * std::cos(phi), rho * std::sin(phi), h}));
      out.weights.push_back(0.5 * wh / kLongitudes);
    }
  }
  return out;
}

SpectralMeasure uniform_disk_quadrature(Complex center, double radius) {
  require(radius > 0.0, "uniform_disk_quadrature: radius must be positive");
  constexpr int kAngles = 64;
  SpectralMeasure out;
  // Radial weight 2r dr on [0, 1].
  for (const auto& [r, wr] : legendre_rule(0.0, 1.0)) {
    for (int k = 0; k < kAngles; ++k) {
      const double phi = 2.0 * pi * (k + 0.5) / kAngles;
      out.atoms.push_back(center + std::polar(radius * r, phi));
      out.weights.push_back(2.0 * r * wr / kAngles);
    }
  }
  return out;
}

}  // namespace rmt
