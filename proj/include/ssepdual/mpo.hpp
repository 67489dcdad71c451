#pragma once

#include <set>
#include <utility>
#include <vector>

#include "ssepdual/site_tensor.hpp"
#include "ssepdual/ssep.hpp"

namespace ssepdual {

/// Uniform matrix product operator: one site tensor repeated N times between
/// the boundary row vector w (all ones for ladder builds) and the boundary
/// column vector v (indicator of auxiliary index 0).
template <class S>
struct MpoIntertwiner {
  SiteTensor<S> site;
  RowVec<S> w;
  Vec<S> v;
  long N = 0;
  Direction direction = Direction::NEtoE;
  AuxWindow window{0, 0};
  bool has_window = false;
};

namespace detail {
template <class S>
RowVec<S> ones_row(long n) {
  return RowVec<S>::Constant(n, S(1));
}

template <class S>
Vec<S> seed_vector(const AuxWindow& win) {
  Vec<S> v = Vec<S>::Zero(win.size());
  v(win.index(0)) = S(1);
  return v;
}
}  // namespace detail

/// Intertwiner from the out-of-equilibrium process to its equilibrium dual.
template <class S>
MpoIntertwiner<S> build_G(const BoundaryRates<S>& rates, long N, Variant variant,
                          long pad = 1) {
  if (N < 1 || N > kMaxSites) throw DimensionError("build_G: N out of range");
  const AuxWindow win = AuxWindow::for_sites(N, pad);
  const auto rep = build_rep(rates, win, /*negate=*/false, ReachSet::for_sites(N));
  const Mat<S> y = build_Y_factor(rates, variant);
  MpoIntertwiner<S> mpo;
  mpo.site = forward_site_tensor(rep, y);
  mpo.w = detail::ones_row<S>(win.size());
  mpo.v = detail::seed_vector<S>(win);
  mpo.N = N;
  mpo.direction = Direction::NEtoE;
  mpo.window = win;
  mpo.has_window = true;
  return mpo;
}

/// Intertwiner in the reverse direction, built from the representation at
/// negated rates.
template <class S>
MpoIntertwiner<S> build_G_prime(const BoundaryRates<S>& rates, long N, Variant variant,
                                long pad = 1) {
  if (N < 1 || N > kMaxSites) throw DimensionError("build_G_prime: N out of range");
  const AuxWindow win = AuxWindow::for_sites(N, pad);
  const auto rep = build_rep(rates, win, /*negate=*/true, ReachSet::for_sites(N));
  const Mat<S> y = build_Y_factor(rates, variant);
  MpoIntertwiner<S> mpo;
  mpo.site = reverse_site_tensor(rep, y);
  mpo.w = detail::ones_row<S>(win.size());
  mpo.v = detail::seed_vector<S>(win);
  mpo.N = N;
  mpo.direction = Direction::EtoNE;
  mpo.window = win;
  mpo.has_window = true;
  return mpo;
}

namespace detail {
template <class S>
bool sums_match(const S& a, const S& b) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return a == b;
  } else {
    return std::fabs(ScalarTraits<S>::to_double(a - b)) <=
           1e-12 * std::max(1.0, std::fabs(ScalarTraits<S>::to_double(a)));
  }
}
}  // namespace detail

/// Composition G(a) Y(a) Y(b)^{-1} G'(b) as a single MPO whose auxiliary
/// space is the product of the two component windows. Requires matching
/// boundary sums: alpha_a+gamma_a = alpha_b+gamma_b and likewise on the right
/// (the per-site sandwich y_a y_b^{-1} conjugates the two equilibrium duals
/// into each other only under these conditions).
template <class S>
MpoIntertwiner<S> compose_tilde_G(const BoundaryRates<S>& rates_a,
                                  const BoundaryRates<S>& rates_b, long N,
                                  Variant variant) {
  if (!detail::sums_match(rates_a.left_sum(), rates_b.left_sum()) ||
      !detail::sums_match(rates_a.right_sum(), rates_b.right_sum()))
    throw ConstraintViolatedError("compose: boundary sums of the two rate sets must match");

  const MpoIntertwiner<S> ga = build_G(rates_a, N, variant);
  const MpoIntertwiner<S> gb = build_G_prime(rates_b, N, variant);
  const Mat<S> mid =
      build_Y_factor(rates_a, variant) * invert_2x2(build_Y_factor(rates_b, variant));

  // Attach the sandwich on the outgoing physical leg of the reverse tensor,
  // then fuse auxiliaries: site[t][t'] = sum_q ga[t][q] (x) (mid gb)[q][t'].
  std::array<std::array<Mat<S>, 2>, 2> sandwiched;
  for (int q = 0; q < 2; ++q)
    for (int ti = 0; ti < 2; ++ti)
      sandwiched[q][ti] = mid(q, 0) * gb.site.blk[0][ti] + mid(q, 1) * gb.site.blk[1][ti];

  MpoIntertwiner<S> mpo;
  for (int to = 0; to < 2; ++to)
    for (int ti = 0; ti < 2; ++ti) {
      Mat<S> acc = kron<S>(ga.site.blk[to][0], sandwiched[0][ti]);
      acc += kron<S>(ga.site.blk[to][1], sandwiched[1][ti]);
      mpo.site.blk[to][ti] = std::move(acc);
    }
  Mat<S> wm = kron<S>(Mat<S>(ga.w), Mat<S>(gb.w));
  Mat<S> vm = kron<S>(Mat<S>(ga.v), Mat<S>(gb.v));
  mpo.w = RowVec<S>(wm.row(0));
  mpo.v = Vec<S>(vm.col(0));
  mpo.N = N;
  mpo.direction = Direction::Composed;
  return mpo;
}

template <class S>
Mat<S> contract_with_insertions(const MpoIntertwiner<S>& mpo, const SiteTensor<S>& insertion,
                                const std::set<long>& sites);

/// Dense contraction: entry (a, b) = w . site[a_1][b_1] ... site[a_N][b_N] . v
/// with site 1 the most significant bit of both configuration indices.
/// Evaluated by a right-to-left sweep over suffix vectors.
template <class S>
Mat<S> contract(const MpoIntertwiner<S>& mpo) {
  return contract_with_insertions(mpo, mpo.site, std::set<long>{});
}

/// Same contraction but with `insertion` replacing the regular site tensor at
/// the given 1-based sites.
template <class S>
Mat<S> contract_with_insertions(const MpoIntertwiner<S>& mpo, const SiteTensor<S>& insertion,
                                const std::set<long>& sites) {
  const long N = mpo.N;
  if (N < 1 || N > kMaxSites) throw DimensionError("contract: N out of range");
  if (!sites.empty() && (*sites.begin() < 1 || *sites.rbegin() > N))
    throw IndexError("contract: insertion site out of range");

  std::vector<Vec<S>> cur{mpo.v};
  for (long k = 0; k < N; ++k) {
    const long applied_site = N - k;  // rightmost factor first
    const SiteTensor<S>& t = sites.count(applied_site) ? insertion : mpo.site;
    std::vector<Vec<S>> nxt(4 * cur.size());
    for (int d = 0; d < 4; ++d)
      for (std::size_t j = 0; j < cur.size(); ++j)
        nxt[std::size_t(d) * cur.size() + j] = t.blk[d >> 1][d & 1] * cur[j];
    cur.swap(nxt);
  }

  const long dim = 1L << N;
  Mat<S> out(dim, dim);
  for (std::size_t key = 0; key < cur.size(); ++key) {
    long a = 0, b = 0;
    for (long i = 0; i < N; ++i) {
      const int d = int((key >> (2 * (N - 1 - i))) & 3);
      a |= long(d >> 1) << (N - 1 - i);
      b |= long(d & 1) << (N - 1 - i);
    }
    out(a, b) = (mpo.w * cur[key])(0);
  }
  return out;
}

}  // namespace ssepdual
