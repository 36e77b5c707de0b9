// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rmtlab/error.hpp"
#include "rmtlab/laws.hpp"
#include "rmtlab/measures.hpp"

using namespace rmt;
using std::numbers::pi;

namespace {

// Composite Simpson, independent of the library quadrature.
double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("spherical density") {
  CHECK(spherical_density(0.0) == doctest::Approx(1.0 / pi));
  CHECK(spherical_density(std::polar(1.0, 2.0)) == doctest::Approx(1.0 / (4.0 * pi)));
  const double mass = integrate([](double r) { return 2 * pi * r * spherical_density(r); }, 0.0,
                                std::numeric_limits<double>::infinity());
  CHECK(std::abs(mass - 1.0) <= 1e-8);
}

TEST_CASE("spherical radial CDF") {
  CHECK(spherical_radial_cdf(0.0) == 0.0);
  CHECK(spherical_radial_cdf(1.0) == doctest::Approx(0.5));
  CHECK(std::abs(simpson([](double s) { return 2 * s / std::pow(1 + s * s, 2); }, 0.0, 1.0) - 0.5) <= 1e-10);
  CHECK(std::abs(spherical_radial_cdf(1e6) - 1.0) <= 1e-10);
  for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double disk = simpson([](double s) { return 2 * pi * s * spherical_density(s); }, 0.0, r);
    CHECK(std::abs(disk - spherical_radial_cdf(r)) <= 1e-8);
    CHECK(std::abs(1.0 - spherical_radial_cdf(1.0 / r) - spherical_radial_cdf(r)) <= 1e-12);
  }
  double prev = 0.0;
  for (double r = 0.0; r < 50.0; r += 0.37) {
    CHECK(spherical_radial_cdf(r) >= prev);
    prev = spherical_radial_cdf(r);
  }
}

TEST_CASE("quarter circle") {
  CHECK(quarter_circle_cdf(0.0) == 0.0);
  CHECK(quarter_circle_cdf(-1.0) == 0.0);
  CHECK(quarter_circle_cdf(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quarter_circle_cdf(3.0) == 1.0);
  const double at1 = simpson(quarter_circle_density, 0.0, 1.0);
  CHECK(std::abs(quarter_circle_cdf(1.0) - at1) <= 1e-10);
  const double m2 = integrate([](double x) { return x * x * quarter_circle_density(x); }, 0.0, 2.0);
  CHECK(std::abs(m2 - 1.0) <= 1e-8);
  CHECK(quarter_circle_density(2.5) == 0.0);
}

TEST_CASE("circular law") {
  CHECK(circular_radial_cdf(0.5) == doctest::Approx(0.25));
  CHECK(circular_radial_cdf(1.0) == 1.0);
  CHECK(circular_radial_cdf(3.0) == 1.0);
  CHECK(circular_density(0.3) == doctest::Approx(1.0 / pi));
  CHECK(circular_density(1.5) == 0.0);

  // Uniform disk by rejection from the square.
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> pts;
  while (pts.size() < 100000) {
    const Complex z(u(gen), u(gen));
    if (std::norm(z) <= 1.0) pts.push_back(z);
  }
  CHECK(ks_radial(SpectralMeasure(pts), circular_radial_cdf) <= 0.01);
}

TEST_CASE("reference laws") {
  for (auto name : {"spherical", "circular", "quarter_circle"}) {
    const auto law = make_reference_law(std::string_view(name));
    CHECK(law.label() == name);
    CHECK(law.radial_cdf(0.0) == doctest::Approx(0.0));
    CHECK(law.radial_cdf(1e9) == doctest::Approx(1.0));
  }
  try {
    make_reference_law(std::string_view("cauchy"));
    FAIL("expected error");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::kConfig);
  }
}

TEST_CASE("uniform sphere quadrature integrates harmonics to zero") {
  const auto q = uniform_sphere_quadrature();
  CHECK(q.total_weight() == doctest::Approx(1.0));
  for (double m : harmonic_means(q)) CHECK(std::abs(m) <= 1e-12);
}

TEST_CASE("uniform disk quadrature") {
  const auto q = uniform_disk_quadrature(Complex(1.0, -2.0), 0.5);
  CHECK(q.total_weight() == doctest::Approx(1.0));
  double mean_re = 0.0, r2 = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    mean_re += q.weight(i) * q.atoms[i].real();
    r2 += q.weight(i) * std::norm(q.atoms[i] - Complex(1.0, -2.0));
  }
  CHECK(mean_re == doctest::Approx(1.0));
  CHECK(r2 == doctest::Approx(0.5 * 0.25));
}
