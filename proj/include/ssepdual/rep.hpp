#pragma once

#include <vector>

#include "ssepdual/dense.hpp"
#include "ssepdual/rates.hpp"
#include "ssepdual/window.hpp"

namespace ssepdual {

/// Truncated ladder representation on an auxiliary window.
/// D and E carry the diagonal and first subdiagonal, F the first
/// superdiagonal; on window interiors they satisfy
///   [E, F] = F,  [D, F] = -F,  [D, E] = D + E.
template <class S>
struct RepMatrices {
  Mat<S> D, E, F;
  std::vector<S> r_seq;  // r_n for n in [n_min, n_max - 1]
  AuxWindow window;
  RateAtoms<S> atoms;
};

namespace detail {
template <class S>
bool scalar_is_zero(const S& x, const S& scale) {
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)scale;
    return x == S(0);
  } else {
    return ScalarTraits<S>::to_double(ScalarTraits<S>::abs(x)) <=
           tol::float_zero * std::max(1.0, ScalarTraits<S>::to_double(ScalarTraits<S>::abs(scale)));
  }
}
}  // namespace detail

/// Entries, for n in the window (w = 1/(beta+delta), all at possibly negated
/// rates):
///   D_{n,n} = n + w,  E_{n,n} = -(n + w),  F_{n,n+1} = 1/r_n,
///   D_{n+1,n} = delta (alpha+gamma) r_n / (beta+delta),
///   E_{n+1,n} = beta  (alpha+gamma) r_n / (beta+delta),
///   r_n = ((beta+delta)/(alpha beta - gamma delta)) (1/(alpha+gamma) + 1/(beta+delta) + n).
/// A vanishing r_n raises ZeroRnError when n lies in `reach`; outside the
/// reach set the divergent superdiagonal entry is provably inert and is
/// masked to zero (window stability covers this).
template <class S>
RepMatrices<S> build_rep(const BoundaryRates<S>& rates, AuxWindow window, bool negate,
                         ReachSet reach) {
  rates.validate();
  if (is_equilibrium(rates))
    throw EquilibriumRatesError("ladder representation is singular at equilibrium rates");
  if (!window.contains(0)) throw IndexError("window must contain the seed index 0");

  const auto a = RateAtoms<S>::from(rates, negate);
  const long sz = window.size();
  RepMatrices<S> rep;
  rep.window = window;
  rep.atoms = a;
  rep.D = Mat<S>::Zero(sz, sz);
  rep.E = Mat<S>::Zero(sz, sz);
  rep.F = Mat<S>::Zero(sz, sz);
  rep.r_seq.reserve(sz - 1);

  for (long n = window.n_min; n <= window.n_max; ++n) {
    const long i = window.index(n);
    rep.D(i, i) = S(n) + a.w;
    rep.E(i, i) = -(S(n) + a.w);
  }
  for (long n = window.n_min; n < window.n_max; ++n) {
    const long i = window.index(n);
    const S rn = a.r_at(n);
    rep.r_seq.push_back(rn);
    if (detail::scalar_is_zero(rn, a.s)) {
      if (reach.contains(n)) throw ZeroRnError(n);
      // pole on a guard row: 1/r_n is never consumed, leave F entry zero
    } else {
      rep.F(i, i + 1) = S(1) / rn;
    }
    rep.D(i + 1, i) = a.delta * a.ls * rn / a.rs;
    rep.E(i + 1, i) = a.beta * a.ls * rn / a.rs;
  }
  return rep;
}

}  // namespace ssepdual
