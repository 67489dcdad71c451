#pragma once

#include <array>

#include "ssepdual/rep.hpp"

namespace ssepdual {

enum class Direction { NEtoE, EtoNE, Composed };

inline const char* to_string(Direction d) {
  switch (d) {
    case Direction::NEtoE: return "NEtoE";
    case Direction::EtoNE: return "EtoNE";
    default: return "Composed";
  }
}

/// Whether the occupation-insertion tensor carries the same per-site
/// Y-inverse factor as the regular site tensor.
enum class XConvention { XRaw, XTimesYinv };

inline const char* to_string(XConvention c) {
  return c == XConvention::XRaw ? "XRaw" : "XTimesYinv";
}

/// Per-site factor of the product operator Y = y^{(x)N}.
///   YR: ((-1/(a+g), b/(b+d)), (1/(a+g), d/(b+d)))
///   YL: ((-1/(b+d), g/(a+g)), (1/(b+d), a/(a+g)))
template <class S>
Mat<S> build_Y_factor(const BoundaryRates<S>& rates, Variant variant) {
  rates.validate();
  Mat<S> y(2, 2);
  const S ls = rates.left_sum(), rs = rates.right_sum();
  if (variant == Variant::YR) {
    y << -S(1) / ls, rates.beta / rs, S(1) / ls, rates.delta / rs;
  } else {
    y << -S(1) / rs, rates.gamma / ls, S(1) / rs, rates.alpha / ls;
  }
  return y;
}

/// Exact 2x2 inverse by adjugate; works in both scalar modes.
template <class S>
Mat<S> invert_2x2(const Mat<S>& m) {
  if (m.rows() != 2 || m.cols() != 2) throw ShapeError("invert_2x2: need a 2x2 matrix");
  const S det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (det == S(0)) throw Error("invert_2x2: singular matrix");
  Mat<S> inv(2, 2);
  inv << m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det;
  return inv;
}

/// Rank-4 site tensor stored as 2x2 physical blocks of auxiliary matrices:
/// blk[phys_out][phys_in].
template <class S>
struct SiteTensor {
  std::array<std::array<Mat<S>, 2>, 2> blk;
  long aux_dim() const { return blk[0][0].rows(); }
};

/// Forward site tensor: physical part L = ((-F, E), (F, D)) with the inverse
/// Y factor attached on the incoming physical leg.
template <class S>
SiteTensor<S> forward_site_tensor(const RepMatrices<S>& rep, const Mat<S>& y) {
  const Mat<S> yi = invert_2x2(y);
  const std::array<std::array<const Mat<S>*, 2>, 2> L = {{{&rep.F, &rep.E}, {&rep.F, &rep.D}}};
  const std::array<std::array<S, 2>, 2> sign = {{{S(-1), S(1)}, {S(1), S(1)}}};
  SiteTensor<S> t;
  for (int to = 0; to < 2; ++to)
    for (int ti = 0; ti < 2; ++ti) {
      Mat<S> acc = Mat<S>::Zero(rep.D.rows(), rep.D.cols());
      for (int q = 0; q < 2; ++q) acc += (sign[to][q] * yi(q, ti)) * (*L[to][q]);
      t.blk[to][ti] = std::move(acc);
    }
  return t;
}

/// Reverse site tensor: physical part Ltilde = ((D', -E'), (F', F')), built
/// from the representation at negated rates, with the Y factor attached on
/// the outgoing physical leg.
template <class S>
SiteTensor<S> reverse_site_tensor(const RepMatrices<S>& rep_negated, const Mat<S>& y) {
  const auto& D = rep_negated.D;
  const auto& E = rep_negated.E;
  const auto& F = rep_negated.F;
  const std::array<std::array<Mat<S>, 2>, 2> Lt = {{{D, -E}, {F, F}}};
  SiteTensor<S> t;
  for (int to = 0; to < 2; ++to)
    for (int ti = 0; ti < 2; ++ti) {
      Mat<S> acc = Mat<S>::Zero(D.rows(), D.cols());
      for (int q = 0; q < 2; ++q) acc += y(to, q) * Lt[q][ti];
      t.blk[to][ti] = std::move(acc);
    }
  return t;
}

/// Divergence tensor of the bulk exchange relation, Z = z (x) 1_aux, for the
/// site tensors that carry their Y factor. The bare-tensor divergences are
/// z_fwd = ((0,-1),(0,1)) and z_rev = -((1,1),(0,0)); attaching Y transforms
/// them into z_fwd * y^{-1} = ((-1,-1),(1,1)) (the same for both variants,
/// because the second row of y^{-1} is (1,1) in both) and y * z_rev, whose
/// prefactor is 1/(alpha+gamma) for the right-anchored variant and
/// 1/(beta+delta) for the left-anchored one.
template <class S>
SiteTensor<S> telescope_tensor(Direction dir, const BoundaryRates<S>& rates, Variant variant,
                               long aux_dim) {
  Mat<S> z(2, 2);
  if (dir == Direction::NEtoE) {
    z << S(-1), S(-1), S(1), S(1);
  } else if (dir == Direction::EtoNE) {
    const S c = variant == Variant::YR ? S(1) / rates.left_sum() : S(1) / rates.right_sum();
    z << c, c, -c, -c;
  } else {
    throw ConfigError("telescope_tensor: no divergence tensor for composed direction");
  }
  SiteTensor<S> t;
  const Mat<S> id = identity<S>(aux_dim);
  for (int to = 0; to < 2; ++to)
    for (int ti = 0; ti < 2; ++ti) t.blk[to][ti] = z(to, ti) * id;
  return t;
}

/// Occupation-insertion tensor X = ((0, 0), (F, D)), optionally composed with
/// the same per-site Y-inverse as the regular forward tensor. With the
/// Y-inverse attached, X equals diag(0, 1)_phys applied to the forward site
/// tensor, which is what the occupation indicator requires.
template <class S>
SiteTensor<S> insertion_tensor(const RepMatrices<S>& rep, const Mat<S>& y, XConvention conv) {
  const long n = rep.D.rows();
  SiteTensor<S> t;
  t.blk[0][0] = Mat<S>::Zero(n, n);
  t.blk[0][1] = Mat<S>::Zero(n, n);
  if (conv == XConvention::XRaw) {
    t.blk[1][0] = rep.F;
    t.blk[1][1] = rep.D;
  } else {
    const Mat<S> yi = invert_2x2(y);
    t.blk[1][0] = yi(0, 0) * rep.F + yi(1, 0) * rep.D;
    t.blk[1][1] = yi(0, 1) * rep.F + yi(1, 1) * rep.D;
  }
  return t;
}

}  // namespace ssepdual
