// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace rmt {

using Complex = std::complex<double>;

/// Dense square complex matrix. Every operation below checks squareness and
/// finiteness on entry and throws InvalidArgument otherwise.
using ComplexMatrix = Eigen::MatrixXcd;

/// Eigenvalues sorted by nonincreasing modulus; moduli equal to within 1e-12
/// of the largest modulus are ties, broken by argument in [0, 2*pi).
struct EigenSpectrum {
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
};

/// Singular values, nonincreasing.
struct SingularSpectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

struct LinearSolution {
  ComplexMatrix value;
  double rcond = 0.0;  // LU estimate of the reciprocal 1-norm condition number
};

/// Outcome of an exhaustive index sweep over one of the Weyl-type
/// inequalities. `worst_margin` is the minimum of (bound - lhs) over all
/// admissible (i, j); negative means violated beyond tolerance.
struct WeylCheck {
  bool holds = true;
  double worst_margin = 0.0;
  std::size_t violations = 0;
  std::size_t checked = 0;
};

/// Reciprocal condition threshold below which solves are rejected.
inline constexpr double kSingularRcond = 1e-14;

void require_square_finite(const ComplexMatrix& a, const char* what);

EigenSpectrum eigenvalues(const ComplexMatrix& a);
SingularSpectrum singular_values(const ComplexMatrix& a);

/// Solves A Z = B by partial-pivot LU. Throws SingularMatrix when the
/// reciprocal condition estimate is below kSingularRcond.
LinearSolution solve_linear(const ComplexMatrix& a, const ComplexMatrix& b);

/// Roots of det(M - zN) through the invertible-N reduction N^{-1} M.
EigenSpectrum generalized_eigenvalues(const ComplexMatrix& m, const ComplexMatrix& n);

/// s_{i+j-1}(M+N) <= s_i(M) + s_j(N) for all 1 <= i, j with i + j <= n + 1.
WeylCheck check_weyl_sum(const ComplexMatrix& m, const ComplexMatrix& n);

/// s_{i+j-1}(MN) <= s_i(M) s_j(N) for the same index range.
WeylCheck check_weyl_product(const ComplexMatrix& m, const ComplexMatrix& n);

using RowMajorMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Unitary reduction to upper Hessenberg form. det(H - zI) = det(A - zI) for
/// every z, so one reduction serves a whole grid of shifts.
RowMajorMatrix hessenberg_form(const ComplexMatrix& a);

/// log|det(H - zI)| for upper Hessenberg H by O(n^2) partial-pivot
/// elimination. Returns -inf when an exact zero pivot appears.
double hessenberg_log_abs_det_shifted(const RowMajorMatrix& hessenberg, Complex z);

/// Orders values by nonincreasing modulus, then argument in [0, 2*pi).
void sort_by_modulus(std::vector<Complex>& values);

}  // namespace rmt
