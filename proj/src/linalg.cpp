// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "rmtlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rmtlab/error.hpp"

namespace rmt {

void require_square_finite(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    fail(ErrorCode::kInvalidArgument,
         std::string(what) + ": matrix must be square and nonempty, got " +
             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!a.allFinite()) {
    fail(ErrorCode::kInvalidArgument, std::string(what) + ": non-finite entry");
  }
}

void sort_by_modulus(std::vector<Complex>& values) {
  double scale = 0.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  struct Keyed {
    long long modulus_key;
    double arg;
    Complex value;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(values.size());
  for (const auto& v : values) {
    double arg = std::arg(v);
    if (arg < 0.0) arg += 2.0 * std::numbers::pi;
    if (arg >= 2.0 * std::numbers::pi) arg = 0.0;
    keyed.push_back({std::llround(std::abs(v) / scale * 1e12), arg, v});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.modulus_key != b.modulus_key) return a.modulus_key > b.modulus_key;
    return a.arg < b.arg;
  });
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = keyed[i].value;
}

EigenSpectrum eigenvalues(const ComplexMatrix& a) {
  require_square_finite(a, "eigenvalues");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kNonConvergence, "eigenvalues: Schur iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  EigenSpectrum out;
  out.values.assign(ev.data(), ev.data() + ev.size());
  sort_by_modulus(out.values);
  return out;
}

SingularSpectrum singular_values(const ComplexMatrix& a) {
  require_square_finite(a, "singular_values");
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  if (svd.info() != Eigen::Success) {
    fail(ErrorCode::kNonConvergence, "singular_values: SVD did not converge");
  }
  const auto& sv = svd.singularValues();
  SingularSpectrum out;
  out.values.assign(sv.data(), sv.data() + sv.size());
  // Eigen already sorts decreasingly; enforce it against ties of rounding.
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  for (auto& s : out.values) s = std::max(s, 0.0);
  return out;
}

LinearSolution solve_linear(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square_finite(a, "solve_linear(A)");
  require_square_finite(b, "solve_linear(B)");
  require(a.rows() == b.rows(), "solve_linear: dimension mismatch");
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond >= kSingularRcond)) {
    fail(ErrorCode::kSingularMatrix,
         "solve_linear: reciprocal condition " + std::to_string(rcond) +
             " below threshold");
  }
  LinearSolution out{lu.solve(b), rcond};
  if (!out.value.allFinite()) {
    fail(ErrorCode::kSingularMatrix, "solve_linear: non-finite solution");
  }
  return out;
}

EigenSpectrum generalized_eigenvalues(const ComplexMatrix& m, const ComplexMatrix& n) {
  require_square_finite(m, "generalized_eigenvalues(M)");
  require_square_finite(n, "generalized_eigenvalues(N)");
  require(m.rows() == n.rows(), "generalized_eigenvalues: dimension mismatch");
  return eigenvalues(solve_linear(n, m).value);
}

namespace {

template <typename Bound>
WeylCheck weyl_sweep(const SingularSpectrum& lhs, const SingularSpectrum& sm,
                     const SingularSpectrum& sn, double tolerance, Bound bound) {
  const std::size_t n = lhs.size();
  WeylCheck out;
  out.worst_margin = std::numeric_limits<double>::infinity();
  // 1-based i, j with i + j <= n + 1, so i + j - 1 indexes a valid value.
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; i + j <= n + 1; ++j) {
      const double margin = bound(sm.values[i - 1], sn.values[j - 1]) - lhs.values[i + j - 2];
      ++out.checked;
      out.worst_margin = std::min(out.worst_margin, margin);
      if (margin < -tolerance) ++out.violations;
    }
  }
  out.holds = out.violations == 0;
  return out;
}

}  // namespace

WeylCheck check_weyl_sum(const ComplexMatrix& m, const ComplexMatrix& n) {
  require(m.rows() == n.rows() && m.cols() == n.cols(), "check_weyl_sum: dimension mismatch");
  const auto sm = singular_values(m);
  const auto sn = singular_values(n);
  const auto lhs = singular_values(m + n);
  const double scale = std::max(sm.values.front() + sn.values.front(), 1.0);
  return weyl_sweep(lhs, sm, sn, 1e-9 * scale, [](double a, double b) { return a + b; });
}

WeylCheck check_weyl_product(const ComplexMatrix& m, const ComplexMatrix& n) {
  require(m.rows() == n.rows() && m.cols() == n.cols(),
          "check_weyl_product: dimension mismatch");
  const auto sm = singular_values(m);
  const auto sn = singular_values(n);
  const auto lhs = singular_values(m * n);
  const double scale = std::max(sm.values.front() * sn.values.front(), 1.0);
  return weyl_sweep(lhs, sm, sn, 1e-9 * scale, [](double a, double b) { return a * b; });
}

RowMajorMatrix hessenberg_form(const ComplexMatrix& a) {
  require_square_finite(a, "hessenberg_form");
  Eigen::HessenbergDecomposition<ComplexMatrix> hd(a);
  RowMajorMatrix h = hd.matrixH();
  return h;
}

double hessenberg_log_abs_det_shifted(const RowMajorMatrix& h, Complex z) {
  const Eigen::Index n = h.rows();
  // `carry` holds the partially eliminated row competing for pivot k; the
  // other candidate is the untouched row k+1 of H - zI.
  std::vector<Complex> carry(h.row(0).data(), h.row(0).data() + n);
  carry[0] -= z;
  double log_det = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k + 1 == n) {
      if (carry[k] == Complex(0.0, 0.0)) return -std::numeric_limits<double>::infinity();
      log_det += std::log(std::abs(carry[k]));
      break;
    }
    const Complex* next = h.row(k + 1).data();
    // Row k+1 of H - zI restricted to columns >= k.
    auto next_at = [&](Eigen::Index c) { return c == k + 1 ? next[c] - z : next[c]; };
    const Complex sub = next[k];
    if (std::abs(sub) > std::abs(carry[k])) {
      // Pivot on row k+1; the carried row becomes the one eliminated.
      const Complex factor = carry[k] / sub;
      log_det += std::log(std::abs(sub));
      for (Eigen::Index c = k + 1; c < n; ++c) {
        carry[c] = carry[c] - factor * next_at(c);
      }
    } else {
      const Complex pivot = carry[k];
      if (pivot == Complex(0.0, 0.0)) return -std::numeric_limits<double>::infinity();
      log_det += std::log(std::abs(pivot));
      const Complex factor = sub / pivot;
      for (Eigen::Index c = k + 1; c < n; ++c) {
        carry[c] = next_at(c) - factor * carry[c];
      }
    }
  }
  return log_det;
}

}  // namespace rmt
