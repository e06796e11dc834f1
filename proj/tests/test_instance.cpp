#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "instance.hpp"
#include "test_helpers.hpp"

using namespace gpr;

TEST_CASE("sample_point_cloud: range, shape, determinism") {
  Rng rng(11);
  const Matrix cloud = sample_point_cloud(3, 30, rng);
  CHECK(cloud.rows() == 3);
  CHECK(cloud.cols() == 30);
  CHECK(cloud.minCoeff() >= 0.0);
  CHECK(cloud.maxCoeff() < 1.0);

  Rng r1(77);
  Rng r2(77);
  CHECK(sample_point_cloud(4, 9, r1) == sample_point_cloud(4, 9, r2));

  CHECK_THROWS_AS(sample_point_cloud(0, 5, rng), std::invalid_argument);
}

TEST_CASE("sample_point_cloud: consumes exactly d*m draws, column-major") {
  Rng a(2718);
  Rng b(2718);
  const Matrix cloud = sample_point_cloud(3, 4, a);
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 3; ++i) {
      CHECK(cloud(i, j) == b.uniform());
    }
  }
  // Streams stay aligned afterwards.
  CHECK(a.uniform() == b.uniform());
}

TEST_CASE("make_instance: draw order is cloud, transforms, noise") {
  const int d = 2, n = 3, m = 4;
  const double sigma = 0.7;
  const Instance inst = make_instance(d, n, m, sigma, 515, TransformMode::kHaar);

  Rng rng(515);
  const Matrix cloud = sample_point_cloud(d, m, rng);
  CHECK(cloud == inst.cloud);
  for (int i = 0; i < n; ++i) {
    CHECK(sample_orthogonal(d, rng, TransformMode::kHaar) ==
          inst.transforms.blocks[i]);
  }
  for (int i = 0; i < n; ++i) {
    Matrix noise(d, m);
    for (int c = 0; c < m; ++c) {
      for (int r = 0; r < d; ++r) {
        noise(r, c) = rng.gaussian();
      }
    }
    const Matrix expected = inst.transforms.blocks[i] * cloud + sigma * noise;
    CHECK(expected == inst.measurements[i]);
  }
}

TEST_CASE("sample_point_cloud: empirical mean of 1e5 entries") {
  Rng rng(12);
  const Matrix cloud = sample_point_cloud(100, 1000, rng);
  const double mean = cloud.mean();
  CHECK(mean >= 0.49);
  CHECK(mean <= 0.51);
}

TEST_CASE("sample_orthogonal: identity mode and haar orthogonality") {
  Rng rng(13);
  CHECK(sample_orthogonal(3, rng, TransformMode::kIdentity) ==
        Matrix::Identity(3, 3));
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix q = sample_orthogonal(3, rng, TransformMode::kHaar);
    CHECK((q * q.transpose() - Matrix::Identity(3, 3)).norm() <= 1e-12);
  }
}

TEST_CASE("sample_orthogonal: haar hits both components of O(2)") {
  Rng rng(14);
  int reflections = 0;
  const int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) {
    const Matrix q = sample_orthogonal(2, rng, TransformMode::kHaar);
    if (q.determinant() < 0.0) {
      ++reflections;
    }
  }
  const double frac = static_cast<double>(reflections) / kDraws;
  CHECK(frac >= 0.48);
  CHECK(frac <= 0.52);
}

TEST_CASE("make_instance: noiseless measurements equal O_i * A exactly") {
  const Instance inst = make_instance(3, 5, 7, 0.0, 99, TransformMode::kHaar);
  for (int i = 0; i < inst.n; ++i) {
    const Matrix expected = inst.transforms.blocks[i] * inst.cloud;
    CHECK(inst.measurements[i] == expected);
  }
}

TEST_CASE("make_instance: paper-scale dimensions") {
  const Instance inst = make_instance(3, 20, 30, 0.5, 1, TransformMode::kHaar);
  CHECK(inst.measurements.size() == 20);
  for (const Matrix& a : inst.measurements) {
    CHECK(a.rows() == 3);
    CHECK(a.cols() == 30);
  }
  CHECK(inst.transforms.orthogonality_defect() <= 1e-9);
}

TEST_CASE("make_instance: noise statistics at sigma=1") {
  const Instance inst = make_instance(3, 20, 30, 1.0, 4242, TransformMode::kHaar);
  double sum = 0.0;
  double sum_sq = 0.0;
  int count = 0;
  for (int i = 0; i < inst.n; ++i) {
    const Matrix diff = inst.measurements[i] - inst.transforms.blocks[i] * inst.cloud;
    sum += diff.sum();
    sum_sq += diff.squaredNorm();
    count += static_cast<int>(diff.size());
  }
  const double mean = sum / count;
  const double std_dev = std::sqrt(sum_sq / count - mean * mean);
  CHECK(std_dev >= 0.97);
  CHECK(std_dev <= 1.03);
}

TEST_CASE("make_instance: bit-identical for equal parameters") {
  const Instance a = make_instance(2, 6, 5, 0.7, 31337, TransformMode::kHaar);
  const Instance b = make_instance(2, 6, 5, 0.7, 31337, TransformMode::kHaar);
  CHECK(a.cloud == b.cloud);
  for (int i = 0; i < a.n; ++i) {
    CHECK(a.transforms.blocks[i] == b.transforms.blocks[i]);
    CHECK(a.measurements[i] == b.measurements[i]);
  }

  CHECK_THROWS_AS(make_instance(3, 5, 5, -1.0, 0, TransformMode::kHaar),
                  std::invalid_argument);
}

TEST_CASE("build_coupling: single measurement gives its PSD gram block") {
  const Instance inst = make_instance(2, 1, 4, 0.3, 5, TransformMode::kHaar);
  const Coupling c = build_coupling(inst);
  const Matrix expected = inst.measurements[0] * inst.measurements[0].transpose();
  CHECK((c.mat - expected).norm() <= 1e-14 * expected.norm());
  CHECK(sym_eig(c.mat).values.minCoeff() >= -1e-10);
}

TEST_CASE("build_coupling: identity transforms at sigma=0 repeat the gram") {
  const Instance inst = make_instance(3, 4, 6, 0.0, 8, TransformMode::kIdentity);
  const Coupling c = build_coupling(inst);
  const Matrix gram = inst.cloud * inst.cloud.transpose();
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      CHECK((c.block(i, j) - gram).norm() <= 1e-13 * gram.norm());
    }
  }
}

TEST_CASE("build_coupling: symmetric up to roundoff") {
  const Instance inst = make_instance(3, 7, 9, 1.2, 21, TransformMode::kHaar);
  const Coupling c = build_coupling(inst);
  CHECK((c.mat - c.mat.transpose()).norm() <= 1e-12 * c.mat.norm());
}

TEST_CASE("objective_pairwise: zero at noiseless truth; hand value at n=2,d=1") {
  const Instance inst = make_instance(3, 6, 8, 0.0, 55, TransformMode::kHaar);
  CHECK(objective_pairwise(inst, inst.transforms) ==
        doctest::Approx(0.0).epsilon(1e-12));

  Instance tiny;
  tiny.d = 1;
  tiny.n = 2;
  tiny.m = 1;
  tiny.measurements = {Matrix::Constant(1, 1, 1.0), Matrix::Constant(1, 1, 2.0)};
  const OrthogonalSet ones = OrthogonalSet::identity(2, 1);
  CHECK(objective_pairwise(tiny, ones) == doctest::Approx(1.0));

  CHECK_THROWS_AS(objective_pairwise(inst, OrthogonalSet::identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("objective_trace: n=1 gives ||A_1||^2") {
  const Instance inst = make_instance(3, 1, 5, 0.4, 66, TransformMode::kHaar);
  const Coupling c = build_coupling(inst);
  CHECK(objective_trace(c, OrthogonalSet::identity(1, 3)) ==
        doctest::Approx(inst.measurements[0].squaredNorm()).epsilon(1e-12));
}

TEST_CASE("objective_trace: noiseless ground truth attains n^2 ||A||^2") {
  const Instance inst = make_instance(3, 20, 30, 0.0, 77, TransformMode::kHaar);
  const Coupling c = build_coupling(inst);
  const double expected = 400.0 * inst.cloud.squaredNorm();
  CHECK(objective_trace(c, inst.transforms) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("objective_trace: matches the brute double-loop expansion") {
  // Oracle: sum_{i,j} tr(A_j A_i^T O_i O_j^T), written out literally.
  const Instance inst = make_instance(2, 3, 4, 0.8, 88, TransformMode::kHaar);
  const Coupling c = build_coupling(inst);
  Rng rng(89);
  const OrthogonalSet o = test::random_orthogonal_set(3, 2, rng);

  double brute = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      brute += (inst.measurements[j] * inst.measurements[i].transpose() *
                o.blocks[i] * o.blocks[j].transpose())
                   .trace();
    }
  }
  CHECK(objective_trace(c, o) ==
        doctest::Approx(brute).epsilon(1e-10));
}

TEST_CASE("objectives: pairwise = n * sum ||A_i||^2 - trace") {
  Rng rng(90);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_u64() % 3);
    const int n = 2 + static_cast<int>(rng.next_u64() % 6);
    const int m = 3 + static_cast<int>(rng.next_u64() % 6);
    const double sigma = 2.0 * rng.uniform();
    const Instance inst =
        make_instance(d, n, m, sigma, rng.next_u64(), TransformMode::kHaar);
    const Coupling c = build_coupling(inst);
    const OrthogonalSet o = test::random_orthogonal_set(n, d, rng);

    const double pairwise = objective_pairwise(inst, o);
    const double trace = objective_trace(c, o);
    const double total = n * measurement_norm_sq(inst);
    CHECK(std::abs(pairwise - (total - trace)) <= 1e-9 * std::max(1.0, total));
  }
}

TEST_CASE("objectives: gauge invariance under a common right factor") {
  Rng rng(91);
  for (int trial = 0; trial < 25; ++trial) {
    const Instance inst =
        make_instance(3, 5, 6, 1.0, rng.next_u64(), TransformMode::kHaar);
    const Coupling c = build_coupling(inst);
    const OrthogonalSet o = test::random_orthogonal_set(5, 3, rng);
    const Matrix q = sample_orthogonal(3, rng, TransformMode::kHaar);
    const OrthogonalSet gauged = o.gauged(q);

    const double p0 = objective_pairwise(inst, o);
    const double p1 = objective_pairwise(inst, gauged);
    CHECK(std::abs(p0 - p1) <= 1e-10 * std::max(1.0, std::abs(p0)));

    const double t0 = objective_trace(c, o);
    const double t1 = objective_trace(c, gauged);
    CHECK(std::abs(t0 - t1) <= 1e-10 * std::max(1.0, std::abs(t0)));
  }
}
