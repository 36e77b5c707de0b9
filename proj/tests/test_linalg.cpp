// Copyright 2026 The rmtlab Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "rmtlab/error.hpp"
#include "rmtlab/linalg.hpp"
#include "rmtlab/measures.hpp"
#include "test_util.hpp"

using namespace rmt;
using rmt::test::diag;
using rmt::test::multiset_distance;
using rmt::test::random_matrix;

namespace {

Complex det_via_lu(const ComplexMatrix& a) { return a.partialPivLu().determinant(); }

}  // namespace

TEST_CASE("eigenvalues of simple matrices") {
  auto e = eigenvalues(ComplexMatrix::Identity(3, 3));
  REQUIRE(e.size() == 3);
  for (auto v : e.values) CHECK(std::abs(v - 1.0) < 1e-12);

  e = eigenvalues(diag({3.0, Complex(0, 2), -1.0}));
  CHECK(std::abs(e.values[0] - 3.0) < 1e-12);
  CHECK(std::abs(e.values[1] - Complex(0, 2)) < 1e-12);
  CHECK(std::abs(e.values[2] + 1.0) < 1e-12);

  ComplexMatrix c(2, 2);
  c << 0.0, -1.0, 1.0, 0.0;
  e = eigenvalues(c);
  // Equal modulus: ordered by argument, i (pi/2) before -i (3 pi/2).
  CHECK(std::abs(e.values[0] - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(e.values[1] - Complex(0, -1)) < 1e-12);
}

TEST_CASE("eigenvalues: trace, determinant, ordering") {
  std::mt19937_64 gen(7);
  for (int n : {2, 5, 17, 40}) {
    const auto a = random_matrix(n, gen);
    const auto e = eigenvalues(a);
    Complex sum = 0.0;
    double logprod = 0.0;
    for (auto v : e.values) sum += v, logprod += std::log(std::abs(v));
    CHECK(std::abs(sum - a.trace()) <= 1e-8 * n * std::max(1.0, std::abs(a.trace())));
    CHECK(std::abs(logprod - std::log(std::abs(det_via_lu(a)))) <= 1e-6 * std::max(1.0, std::abs(logprod)));
    for (std::size_t k = 1; k < e.size(); ++k) CHECK(std::abs(e.values[k - 1]) >= std::abs(e.values[k]) * (1 - 1e-12));
  }
}

TEST_CASE("eigenvalues rejects bad input") {
  ComplexMatrix r(2, 3);
  r.setZero();
  CHECK_THROWS_AS(eigenvalues(r), Error);
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eigenvalues(a), Error);
}

TEST_CASE("singular values") {
  auto s = singular_values(ComplexMatrix::Identity(4, 4));
  for (double v : s.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  s = singular_values(diag({-2.0, 1.0}));
  CHECK(s.values[0] == doctest::Approx(2.0));
  CHECK(s.values[1] == doctest::Approx(1.0));

  std::mt19937_64 gen(11);
  const auto a = random_matrix(5, gen);
  s = singular_values(a);
  // Oracle: Hermitian eigenproblem of A A*.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> herm(a * a.adjoint());
  std::vector<double> ref;
  for (int i = 0; i < 5; ++i) ref.push_back(std::sqrt(std::max(0.0, herm.eigenvalues()[i])));
  std::sort(ref.rbegin(), ref.rend());
  double fro = 0.0;
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(s.values[i] - ref[i]) <= 1e-8);
    fro += s.values[i] * s.values[i];
  }
  CHECK(std::abs(fro - a.squaredNorm()) <= 1e-10 * a.squaredNorm());
}

TEST_CASE("solve_linear") {
  ComplexMatrix b(2, 2);
  b << 1.0, Complex(2, 1), -3.0, 4.0;
  auto z = solve_linear(ComplexMatrix::Identity(2, 2), b);
  CHECK((z.value - b).norm() < 1e-14);
  z = solve_linear(diag({2.0, 4.0}), ComplexMatrix::Identity(2, 2));
  CHECK(std::abs(z.value(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(z.value(1, 1) - 0.25) < 1e-15);
  CHECK(z.rcond == doctest::Approx(0.5));

  std::mt19937_64 gen(3);
  const auto a = random_matrix(8, gen);
  const auto rhs = random_matrix(8, gen);
  z = solve_linear(a, rhs);
  CHECK((a * z.value - rhs).norm() <= 1e-8 * rhs.norm());

  ComplexMatrix sing = ComplexMatrix::Ones(3, 3);
  try {
    solve_linear(sing, ComplexMatrix::Identity(3, 3));
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingularMatrix);
  }
  CHECK_THROWS_AS(solve_linear(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), Error);
}

TEST_CASE("generalized eigenvalues") {
  auto e = generalized_eigenvalues(diag({2.0, 3.0}), ComplexMatrix::Identity(2, 2));
  CHECK(std::abs(e.values[0] - 3.0) < 1e-12);
  CHECK(std::abs(e.values[1] - 2.0) < 1e-12);
  e = generalized_eigenvalues(ComplexMatrix::Identity(2, 2), diag({2.0, 4.0}));
  CHECK(std::abs(e.values[0] - 0.5) < 1e-12);
  CHECK(std::abs(e.values[1] - 0.25) < 1e-12);

  std::mt19937_64 gen(5);
  const auto m = random_matrix(4, gen);
  const auto n = random_matrix(4, gen);
  e = generalized_eigenvalues(m, n);
  const double scale = std::pow(m.norm() + n.norm(), 4);
  for (auto z : e.values) CHECK(std::abs(det_via_lu(m - z * n)) <= 1e-6 * scale);

  const auto g = generalized_eigenvalues(m, ComplexMatrix::Identity(4, 4));
  CHECK(multiset_distance(g.values, eigenvalues(m).values) <= 1e-8);

  try {
    generalized_eigenvalues(m, ComplexMatrix::Zero(4, 4));
    FAIL("expected SingularMatrix");
  } catch (const Error& ex) {
    CHECK(ex.code() == ErrorCode::kSingularMatrix);
  }
}

TEST_CASE("spectrum of MN equals spectrum of NM") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 5; ++trial) {
    const auto m = random_matrix(6, gen);
    const auto n = random_matrix(6, gen);
    CHECK(multiset_distance(eigenvalues(m * n).values, eigenvalues(n * m).values) <= 1e-6);
  }
}

TEST_CASE("Weyl inequalities on simple matrices") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  auto w = check_weyl_sum(i2, i2);
  CHECK(w.holds);
  CHECK(w.violations == 0);
  CHECK(w.checked == 3);
  w = check_weyl_sum(diag({5.0, 0.0}), diag({0.0, 5.0}));
  CHECK(w.holds);
  w = check_weyl_product(ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3));
  CHECK(w.holds);
  CHECK(std::abs(w.worst_margin) < 1e-12);
  w = check_weyl_product(2.0 * ComplexMatrix::Identity(3, 3), 3.0 * ComplexMatrix::Identity(3, 3));
  CHECK(w.holds);
  CHECK(std::abs(w.worst_margin) < 1e-12);
}

TEST_CASE("Weyl inequalities on random pairs, dims 2..20") {
  std::mt19937_64 gen(2026);
  std::uniform_int_distribution<int> dim(2, 20);
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = dim(gen);
    const auto m = random_matrix(n, gen);
    const auto k = random_matrix(n, gen, trial % 2 ? 10.0 : 0.1);
    violations += check_weyl_sum(m, k).violations + check_weyl_product(m, k).violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("moment inequalities for sums and products") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 12;
    const auto m = random_matrix(n, gen);
    const auto k = random_matrix(n, gen, 0.5 + trial % 3);
    const SingularMeasure nm = SingularMeasure::of(singular_values(m));
    const SingularMeasure nk = SingularMeasure::of(singular_values(k));
    const SingularMeasure sum = SingularMeasure::of(singular_values(m + k));
    const SingularMeasure prod = SingularMeasure::of(singular_values(m * k));
    for (double a : {0.5, 1.0, 2.0}) {
      CHECK(moment(sum, a) <= std::pow(2.0, 1 + a) * (moment(nm, a) + moment(nk, a)));
      CHECK(moment(prod, a) <= 2.0 * std::sqrt(moment(nm, 2 * a)) * std::sqrt(moment(nk, 2 * a)));
    }
  }
}

TEST_CASE("Hessenberg log-determinant matches LU") {
  std::mt19937_64 gen(21);
  for (int n : {1, 2, 7, 30}) {
    const auto a = random_matrix(n, gen);
    const auto h = hessenberg_form(a);
    for (Complex z : {Complex(0, 0), Complex(0.3, -1.2), Complex(5, 5)}) {
      const double ref = std::log(std::abs(det_via_lu(a - z * ComplexMatrix::Identity(n, n))));
      CHECK(hessenberg_log_abs_det_shifted(h, z) == doctest::Approx(ref).epsilon(1e-9));
    }
  }
  const auto h = hessenberg_form(ComplexMatrix::Zero(3, 3));
  CHECK(std::isinf(hessenberg_log_abs_det_shifted(h, 0.0)));
  CHECK(hessenberg_log_abs_det_shifted(h, Complex(2, 0)) == doctest::Approx(3 * std::log(2.0)));
}

TEST_CASE("sort_by_modulus ties broken by argument") {
  std::vector<Complex> v{Complex(0, -1), Complex(-1, 0), Complex(1, 0), Complex(0, 1), Complex(0.5, 0)};
  sort_by_modulus(v);
  CHECK(v[0] == Complex(1, 0));
  CHECK(v[1] == Complex(0, 1));
  CHECK(v[2] == Complex(-1, 0));
  CHECK(v[3] == Complex(0, -1));
  CHECK(v[4] == Complex(0.5, 0));
}
