#include "instance.hpp"

#include <sstream>
#include <stdexcept>

namespace gpr {

Matrix OrthogonalSet::stacked() const {
  const int n = count();
  const int d = dim();
  Matrix y(n * d, d);
  for (int i = 0; i < n; ++i) {
    y.block(i * d, 0, d, d) = blocks[i];
  }
  return y;
}

double OrthogonalSet::orthogonality_defect() const {
  const int d = dim();
  double worst = 0.0;
  for (const Matrix& b : blocks) {
    worst = std::max(worst, (b * b.transpose() - Matrix::Identity(d, d)).norm());
  }
  return worst;
}

OrthogonalSet OrthogonalSet::gauged(const Matrix& q) const {
  OrthogonalSet out;
  out.blocks.reserve(blocks.size());
  for (const Matrix& b : blocks) {
    out.blocks.push_back(b * q);
  }
  return out;
}

OrthogonalSet OrthogonalSet::identity(int n, int d) {
  OrthogonalSet out;
  out.blocks.assign(n, Matrix::Identity(d, d));
  return out;
}

Matrix sample_point_cloud(int d, int m, Rng& rng) {
  if (d < 1 || m < 1) {
    throw std::invalid_argument("sample_point_cloud: d and m must be >= 1");
  }
  Matrix cloud(d, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < d; ++i) {
      cloud(i, j) = rng.uniform();
    }
  }
  return cloud;
}

namespace {

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      g(i, j) = rng.gaussian();
    }
  }
  return g;
}

}  // namespace

Matrix sample_orthogonal(int d, Rng& rng, TransformMode mode) {
  if (d < 1) {
    throw std::invalid_argument("sample_orthogonal: d must be >= 1");
  }
  if (mode == TransformMode::kIdentity) {
    return Matrix::Identity(d, d);
  }
  const Matrix g = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Absorbing the signs of diag(R) into Q makes the draw Haar on O(d).
  for (int j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  return q;
}

Instance make_instance(int d, int n, int m, double sigma, std::uint64_t seed,
                       TransformMode mode) {
  if (d < 1 || n < 1 || m < 1) {
    throw std::invalid_argument("make_instance: d, n, m must be >= 1");
  }
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("make_instance: sigma must be >= 0");
  }

  Rng rng(seed);
  Instance inst;
  inst.d = d;
  inst.n = n;
  inst.m = m;
  inst.sigma = sigma;
  inst.seed = seed;
  inst.has_ground_truth = true;
  inst.cloud = sample_point_cloud(d, m, rng);
  inst.transforms.blocks.reserve(n);
  for (int i = 0; i < n; ++i) {
    inst.transforms.blocks.push_back(sample_orthogonal(d, rng, mode));
  }
  inst.measurements.reserve(n);
  for (int i = 0; i < n; ++i) {
    Matrix a = inst.transforms.blocks[i] * inst.cloud;
    if (sigma > 0.0) {
      a += sigma * gaussian_matrix(d, m, rng);
    }
    inst.measurements.push_back(std::move(a));
  }
  return inst;
}

Coupling build_coupling(const Instance& instance) {
  const int d = instance.d;
  const int n = instance.n;
  Coupling c;
  c.d = d;
  c.n = n;
  c.mat.resize(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Matrix block = instance.measurements[i] * instance.measurements[j].transpose();
      c.mat.block(i * d, j * d, d, d) = block;
      if (j > i) {
        c.mat.block(j * d, i * d, d, d) = block.transpose();
      }
    }
  }
  return c;
}

namespace {

void check_compatible(const Instance& instance, const OrthogonalSet& o) {
  if (o.count() != instance.n || o.dim() != instance.d) {
    std::ostringstream os;
    os << "orthogonal set has " << o.count() << " blocks of size " << o.dim()
       << ", instance expects " << instance.n << " of size " << instance.d;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

double objective_pairwise(const Instance& instance, const OrthogonalSet& o) {
  check_compatible(instance, o);
  std::vector<Matrix> aligned;
  aligned.reserve(instance.n);
  for (int i = 0; i < instance.n; ++i) {
    aligned.push_back(o.blocks[i].transpose() * instance.measurements[i]);
  }
  double total = 0.0;
  for (int i = 0; i < instance.n; ++i) {
    for (int j = i + 1; j < instance.n; ++j) {
      total += (aligned[i] - aligned[j]).squaredNorm();
    }
  }
  return total;
}

double objective_trace(const Coupling& c, const OrthogonalSet& o) {
  if (o.count() != c.n || o.dim() != c.d) {
    throw std::invalid_argument("objective_trace: dimension mismatch");
  }
  const Matrix y = o.stacked();
  return (y.transpose() * (c.mat * y)).trace();
}

double measurement_norm_sq(const Instance& instance) {
  double total = 0.0;
  for (const Matrix& a : instance.measurements) {
    total += a.squaredNorm();
  }
  return total;
}

}  // namespace gpr
