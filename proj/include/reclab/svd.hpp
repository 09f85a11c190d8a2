#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "reclab/errors.hpp"
#include "reclab/labels.hpp"

namespace reclab {

/// Rank-k factors of a dense matrix, A ~ U diag(s) V^T, singular values descending.
template <typename Scalar>
struct TruncatedSvd {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix u;
  Vector s;
  Matrix v;
  Index iterations = 0;
  bool converged = false;

  Matrix reconstruct() const { return u * s.asDiagonal() * v.transpose(); }
};

namespace detail {

template <typename Matrix>
Matrix orthonormal_basis(const Matrix& w) {
  Eigen::HouseholderQR<Matrix> qr(w);
  return qr.householderQ() * Matrix::Identity(w.rows(), w.cols());
}

}  // namespace detail

/// Leading k singular triplets by orthogonal (subspace) iteration.
///
/// Each sweep multiplies the active block by A and A^T, orthonormalizes it
/// against the locked vectors, and applies a Rayleigh-Ritz rotation. Leading
/// triplets whose residual ||A v - s u|| drops below tol * s_max are locked
/// and deflated out of later sweeps. Stops when all k are locked or after
/// `max_iter` sweeps.
template <typename Derived>
TruncatedSvd<typename Derived::Scalar> truncated_svd(const Eigen::MatrixBase<Derived>& a, Index k,
                                                     Index max_iter = 100, double tol = 1e-9,
                                                     std::uint64_t seed = 0) {
  using Scalar = typename Derived::Scalar;
  using Matrix = typename TruncatedSvd<Scalar>::Matrix;
  using Vector = typename TruncatedSvd<Scalar>::Vector;

  const Index m = a.rows(), n = a.cols();
  if (k < 1 || k > std::min(m, n)) throw InvalidArgument("rank must be in [1, min(rows, cols)]");
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");

  const Matrix A = a;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix start(n, k);
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < n; ++i) start(i, j) = static_cast<Scalar>(normal(rng));

  TruncatedSvd<Scalar> out{Matrix::Zero(m, k), Vector::Zero(k), detail::orthonormal_basis(start), 0,
                           false};
  Index locked = 0;
  Scalar scale = 0;

  while (out.iterations < max_iter && locked < k) {
    ++out.iterations;
    const Index active = k - locked;
    const auto u_locked = out.u.leftCols(locked);
    const auto v_locked = out.v.leftCols(locked);

    Matrix w = A * out.v.rightCols(active);
    w -= u_locked * (u_locked.transpose() * w);
    Matrix u_active = detail::orthonormal_basis(w);

    Matrix z = A.transpose() * u_active;
    z -= v_locked * (v_locked.transpose() * z);
    Matrix v_active = detail::orthonormal_basis(z);

    const Matrix b = u_active.transpose() * A * v_active;
    Eigen::JacobiSVD<Matrix> small(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.u.rightCols(active) = u_active * small.matrixU();
    out.v.rightCols(active) = v_active * small.matrixV();
    out.s.tail(active) = small.singularValues();

    scale = std::max(scale, out.s.maxCoeff());
    const Scalar limit = static_cast<Scalar>(tol) * std::max(scale, Scalar(1e-300));
    while (locked < k) {
      const Scalar residual = (A * out.v.col(locked) - out.s(locked) * out.u.col(locked)).norm();
      if (residual > limit) break;
      ++locked;
    }
  }
  out.converged = locked == k;

  // Locked blocks are each sorted, but later blocks can carry larger values.
  std::vector<Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Index{0});
  std::ranges::stable_sort(order, [&](Index x, Index y) { return out.s(x) > out.s(y); });
  TruncatedSvd<Scalar> sorted{Matrix(m, k), Vector(k), Matrix(n, k), out.iterations, out.converged};
  for (Index j = 0; j < k; ++j) {
    sorted.u.col(j) = out.u.col(order[static_cast<std::size_t>(j)]);
    sorted.v.col(j) = out.v.col(order[static_cast<std::size_t>(j)]);
    sorted.s(j) = out.s(order[static_cast<std::size_t>(j)]);
  }
  return sorted;
}

}  // namespace reclab
