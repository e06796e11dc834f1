#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "linalg.hpp"
#include "test_helpers.hpp"

using namespace gpr;

TEST_CASE("sym_eig: identity") {
  const EigenDecomp ed = sym_eig(Matrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) {
    CHECK(ed.values(i) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sym_eig: diagonal gets sorted with permuted identity vectors") {
  Matrix m = Matrix::Zero(3, 3);
  m.diagonal() << 3.0, 1.0, 2.0;
  const EigenDecomp ed = sym_eig(m);
  CHECK(ed.values(0) == doctest::Approx(3.0));
  CHECK(ed.values(1) == doctest::Approx(2.0));
  CHECK(ed.values(2) == doctest::Approx(1.0));
  // Columns are signed unit vectors e_0, e_2, e_1.
  CHECK(std::abs(ed.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(ed.vectors(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(ed.vectors(1, 2)) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig: reconstruction and orthonormality on random input") {
  Rng rng(101);
  for (const int k : {5, 60, 120}) {
    const Matrix m = test::random_symmetric(k, rng, 2.0);
    const EigenDecomp ed = sym_eig(m);
    const Matrix rebuilt =
        ed.vectors * ed.values.asDiagonal() * ed.vectors.transpose();
    CHECK((m - rebuilt).norm() <= 1e-9 * std::max(1.0, m.norm()));
    CHECK((ed.vectors.transpose() * ed.vectors - Matrix::Identity(k, k)).norm() <=
          1e-10);
    for (int i = 0; i + 1 < k; ++i) {
      CHECK(ed.values(i) >= ed.values(i + 1));
    }
  }
}

TEST_CASE("sym_eig: rejects bad input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;  // grossly asymmetric
  CHECK_THROWS_AS(sym_eig(m), std::invalid_argument);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(sym_eig(bad), std::invalid_argument);
}

TEST_CASE("svd_small: fixed cases") {
  const SmallSvd id = svd_small(Matrix::Identity(2, 2));
  CHECK(id.s(0) == doctest::Approx(1.0));
  CHECK(id.s(1) == doctest::Approx(1.0));

  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 2.0;
  const SmallSvd diag = svd_small(m);
  CHECK(diag.s(0) == doctest::Approx(2.0));
  CHECK(diag.s(1) == doctest::Approx(0.0));
}

TEST_CASE("svd_small: reconstruction and consistency with sym_eig") {
  Rng rng(202);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = test::random_gaussian(3, 3, rng);
    const SmallSvd svd = svd_small(m);
    const Matrix rebuilt = svd.U * svd.s.asDiagonal() * svd.V.transpose();
    CHECK((m - rebuilt).norm() <= 1e-10 * std::max(1.0, m.norm()));
    CHECK((svd.U * svd.U.transpose() - Matrix::Identity(3, 3)).norm() <= 1e-10);
    CHECK((svd.V * svd.V.transpose() - Matrix::Identity(3, 3)).norm() <= 1e-10);

    // Singular values are the square roots of eig(M^T M).
    const EigenDecomp ed = sym_eig(m.transpose() * m);
    for (int i = 0; i < 3; ++i) {
      CHECK(svd.s(i) ==
            doctest::Approx(std::sqrt(std::max(0.0, ed.values(i)))).epsilon(1e-9));
    }
  }
}

TEST_CASE("nearest_orthogonal: fixed points and scaling") {
  Rng rng(303);
  const Matrix q = sample_orthogonal(3, rng, TransformMode::kHaar);
  CHECK((nearest_orthogonal(q) - q).norm() <= 1e-12);
  CHECK((nearest_orthogonal(2.0 * Matrix::Identity(3, 3)) -
         Matrix::Identity(3, 3))
            .norm() <= 1e-12);
}

TEST_CASE("nearest_orthogonal: maximizes tr(Q^T M) against random candidates") {
  Rng rng(404);
  const Matrix m = test::random_gaussian(3, 3, rng);
  const Matrix best = nearest_orthogonal(m);
  CHECK((best * best.transpose() - Matrix::Identity(3, 3)).norm() <= 1e-10);
  const double best_val = (best.transpose() * m).trace();
  // Matches the singular value sum.
  CHECK(best_val == doctest::Approx(svd_small(m).s.sum()).epsilon(1e-10));
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix r = sample_orthogonal(3, rng, TransformMode::kHaar);
    CHECK((r.transpose() * m).trace() <= best_val + 1e-9);
  }
}

TEST_CASE("nearest_orthogonal: left equivariance") {
  Rng rng(505);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = test::random_gaussian(3, 3, rng);
    const Matrix q = sample_orthogonal(3, rng, TransformMode::kHaar);
    CHECK((nearest_orthogonal(q * m) - q * nearest_orthogonal(m)).norm() <= 1e-9);
  }
}

TEST_CASE("project_psd: clamps negatives and keeps PSD inputs") {
  Matrix m = Matrix::Zero(2, 2);
  m.diagonal() << 1.0, -1.0;
  const Matrix p = project_psd(m);
  CHECK(p(0, 0) == doctest::Approx(1.0));
  CHECK(p(1, 1) == doctest::Approx(0.0).epsilon(1e-12));

  Rng rng(606);
  const Matrix psd = test::random_psd(6, rng);
  CHECK((project_psd(psd) - psd).norm() <= 1e-10 * std::max(1.0, psd.norm()));
}

TEST_CASE("project_psd: nearest-point property against sampled PSD matrices") {
  Rng rng(707);
  const Matrix m = test::random_symmetric(5, rng);
  const Matrix proj = project_psd(m);
  const double dist = (proj - m).norm();
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix p = test::random_psd(5, rng);
    CHECK(dist <= (p - m).norm() + 1e-12);
  }
  CHECK(sym_eig(proj).values.minCoeff() >= -1e-10);
}

TEST_CASE("project_psd: idempotent") {
  Rng rng(808);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = test::random_symmetric(8, rng);
    const Matrix once = project_psd(m);
    CHECK((project_psd(once) - once).norm() <= 1e-10);
  }
}
