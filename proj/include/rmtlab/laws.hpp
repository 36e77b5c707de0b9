// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "rmtlab/linalg.hpp"
#include "rmtlab/measures.hpp"

namespace rmt {

/// 1 / (pi (1 + |z|^2)^2): the stereographic image of the uniform law on the
/// unit sphere.
double spherical_density(Complex z);
/// r^2 / (1 + r^2).
double spherical_radial_cdf(double r);

/// Uniform law on the unit disk.
double circular_density(Complex z);
/// min(r^2, 1).
double circular_radial_cdf(double r);

/// (1/pi) sqrt(4 - x^2) on [0, 2].
double quarter_circle_density(double x);
/// Closed-form CDF of the quarter-circle law.
double quarter_circle_cdf(double x);

enum class ReferenceName { kSpherical, kCircular, kQuarterCircle };

/// A closed-form reference law. For the two laws on C, `density` is the
/// planar density of a radially symmetric law and `radial_cdf` the law of
/// |z|; for the quarter circle (a law on R+) `density` is evaluated at the
/// real part and `radial_cdf` is its CDF.
struct ReferenceLaw {
  ReferenceName name;
  std::function<double(Complex)> density;
  std::function<double(double)> radial_cdf;
  std::string support;

  std::string label() const;
};

/// Builds the law and checks by quadrature that its density integrates to 1
/// within 1e-8. Throws InvalidArgument for an unknown name.
ReferenceLaw make_reference_law(ReferenceName name);
ReferenceLaw make_reference_law(std::string_view name);

/// Adaptive Gauss-Kronrod on [a, b] (b may be +inf) at absolute
/// tolerance 1e-10.
double integrate(const std::function<double(double)>& f, double a, double b);

/// Quadrature rule for the uniform law on the sphere, pulled back to C:
/// Gauss-Legendre in the height times uniform longitudes. Exact for all
/// spherical harmonics of degree <= 4 (and well beyond).
SpectralMeasure uniform_sphere_quadrature();

/// Quadrature rule for the uniform law on the disk |z| <= radius centered
/// at `center`.
SpectralMeasure uniform_disk_quadrature(Complex center = {0.0, 0.0}, double radius = 1.0);

}  // namespace rmt
