#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <vector>

#include "ssepdual/errors.hpp"
#include "ssepdual/scalar.hpp"

namespace ssepdual {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;

/// Hard cap on any dense dimension produced here (2^20 rows or columns).
inline constexpr long kMaxSide = 1L << 20;

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  const long rows = a.rows() * b.rows();
  const long cols = a.cols() * b.cols();
  if (rows > kMaxSide || cols > kMaxSide)
    throw DimensionError("kron result exceeds dimension cap");
  Mat<S> out(rows, cols);
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <class S>
Mat<S> identity(long n) {
  return Mat<S>::Identity(n, n);
}

/// 1^{(site-1)} (x) op (x) 1^{(N-site-span+1)} with local dimension d.
/// `site` is 1-based; `op` must be d^span x d^span.
template <class S>
Mat<S> embed_local(const Mat<S>& op, long site, long span, long N, long d = 2) {
  if (site < 1 || span < 1 || site + span - 1 > N)
    throw IndexError("embed_local: site/span out of range");
  long dspan = 1;
  for (long k = 0; k < span; ++k) dspan *= d;
  if (op.rows() != dspan || op.cols() != dspan)
    throw ShapeError("embed_local: operator size does not match d^span");
  long left = 1, right = 1;
  for (long k = 0; k < site - 1; ++k) left *= d;
  for (long k = 0; k < N - site - span + 1; ++k) right *= d;
  return kron(kron(identity<S>(left), op), identity<S>(right));
}

/// Sum of squared entry differences; exact in rational mode.
template <class S>
S diff_norm_sq(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("diff_norm_sq: shape mismatch");
  S acc(0);
  for (long j = 0; j < a.cols(); ++j)
    for (long i = 0; i < a.rows(); ++i) {
      const S d = a(i, j) - b(i, j);
      acc += d * d;
    }
  return acc;
}

template <class S>
bool is_exactly_zero(const Mat<S>& a) {
  for (long j = 0; j < a.cols(); ++j)
    for (long i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == S(0))) return false;
  return true;
}

/// ||a - b||_F / max(1, ||a||_F).
inline double frobenius_residual(const Mat<double>& a, const Mat<double>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("frobenius_residual: shape mismatch");
  return (a - b).norm() / std::max(1.0, a.norm());
}

/// Symmetric relative distance, used for relation residuals where neither side
/// is privileged: ||a - b||_F / max(1, ||a||_F, ||b||_F).
inline double relative_residual(const Mat<double>& a, const Mat<double>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("relative_residual: shape mismatch");
  return (a - b).norm() / std::max({1.0, a.norm(), b.norm()});
}

inline double max_abs(const Mat<double>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Orthonormal basis of the right null space: right singular vectors whose
/// singular value is <= tol * max_singular_value.
inline std::vector<Vec<double>> null_space(const Mat<double>& op, double tol = 1e-10) {
  if (op.rows() != op.cols()) throw ShapeError("null_space: matrix must be square");
  Eigen::JacobiSVD<Mat<double>> svd(op, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() ? sv(0) : 0.0) * tol;
  std::vector<Vec<double>> basis;
  for (long k = 0; k < sv.size(); ++k)
    if (sv(k) <= cutoff) basis.push_back(svd.matrixV().col(k));
  return basis;
}

}  // namespace ssepdual
