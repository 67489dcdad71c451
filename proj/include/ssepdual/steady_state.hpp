#pragma once

#include <cmath>

#include "ssepdual/mpo.hpp"

namespace ssepdual {

enum class Provenance { DehpMps, Bernoulli, Oracle, MappedThroughG };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::DehpMps: return "dehp-mps";
    case Provenance::Bernoulli: return "bernoulli";
    case Provenance::Oracle: return "oracle";
    default: return "mapped-through-G";
  }
}

template <class S>
struct SteadyState {
  Vec<S> vector;      // normalized to sum 1
  S normalization;    // mass of the unnormalized build
  Provenance provenance;
};

/// Matrix-product steady state of the out-of-equilibrium process, with the
/// empty-site letter E and the occupied-site letter D of the ladder
/// representation. Only the diagonal and raising parts of D and E are ever
/// consumed from the seed |0>, so the build needs no superdiagonal and is
/// immune to r_n poles; the auxiliary window is [0, N+1].
template <class S>
SteadyState<S> build_dehp_mps(const BoundaryRates<S>& rates, long N) {
  rates.validate();
  if (N < 1 || N > kMaxSites) throw DimensionError("dehp: N out of range");
  if (is_equilibrium(rates))
    throw EquilibriumRatesError("dehp weights are singular at equilibrium rates");

  const auto a = RateAtoms<S>::from(rates, /*negate=*/false);
  const long sz = N + 2;
  Mat<S> D = Mat<S>::Zero(sz, sz), E = Mat<S>::Zero(sz, sz);
  for (long n = 0; n < sz; ++n) {
    D(n, n) = S(n) + a.w;
    E(n, n) = -(S(n) + a.w);
  }
  for (long n = 0; n + 1 < sz; ++n) {
    const S rn = a.r_at(n);
    D(n + 1, n) = a.delta * a.ls * rn / a.rs;
    E(n + 1, n) = a.beta * a.ls * rn / a.rs;
  }

  const RowVec<S> w = RowVec<S>::Constant(sz, S(1));
  Vec<S> v = Vec<S>::Zero(sz);
  v(0) = S(1);

  const long dim = 1L << N;
  Vec<S> weights(dim);
  for (long cfg = 0; cfg < dim; ++cfg) {
    Vec<S> cur = v;
    for (long site = N; site >= 1; --site) {
      const bool occupied = (cfg >> (N - site)) & 1;
      cur = (occupied ? D : E) * cur;
    }
    weights(cfg) = (w * cur)(0);
  }

  // normalization via the letter sum, contracted in one sweep
  Vec<S> cur = v;
  const Mat<S> DE = D + E;
  for (long k = 0; k < N; ++k) cur = DE * cur;
  const S Z = (w * cur)(0);

  S total(0);
  for (long cfg = 0; cfg < dim; ++cfg) total += weights(cfg);
  if (total == S(0)) throw ZeroImageError("dehp weights sum to zero");
  // The two contraction routes must agree: per-configuration weights versus
  // the letter-sum power.
  const double zd = ScalarTraits<S>::to_double(Z);
  const double td = ScalarTraits<S>::to_double(total);
  if (std::fabs(td - zd) > 1e-10 * std::max(1.0, std::fabs(zd)))
    throw Error("dehp normalization mismatch between weight sum and letter-sum contraction");
  // All weights carry the sign of the normalization (negative as a whole when
  // the boundary drive is reversed); a genuinely mixed-sign table means the
  // representation went wrong.
  const double sign = td < 0 ? -1.0 : 1.0;
  for (long cfg = 0; cfg < dim; ++cfg) {
    const double wd = ScalarTraits<S>::to_double(weights(cfg));
    if (sign * wd < -1e-12 * std::max(1.0, std::fabs(zd)))
      throw NegativeWeightError("dehp weight has the wrong sign at configuration " +
                                std::to_string(cfg));
  }

  SteadyState<S> st;
  st.vector = weights / total;
  st.normalization = Z;
  st.provenance = Provenance::DehpMps;
  return st;
}

/// Product measure with per-site (empty, occupied) = (beta, delta)/(beta+delta).
template <class S>
SteadyState<S> build_bernoulli(const BoundaryRates<S>& rates, long N) {
  rates.validate();
  if (N < 1 || N > kMaxSites) throw DimensionError("bernoulli: N out of range");
  const S rho = rates.delta / rates.right_sum();
  const long dim = 1L << N;
  Vec<S> vec(dim);
  for (long cfg = 0; cfg < dim; ++cfg) {
    S p(1);
    for (long site = 1; site <= N; ++site)
      p *= ((cfg >> (N - site)) & 1) ? rho : (S(1) - rho);
    vec(cfg) = p;
  }
  SteadyState<S> st;
  st.vector = vec;
  st.normalization = S(1);
  st.provenance = Provenance::Bernoulli;
  return st;
}

/// Brute-force steady state: the singular vector of H with smallest singular
/// value, sign-fixed and normalized to sum 1.
inline SteadyState<double> oracle_steady_state(const Mat<double>& H) {
  if (H.rows() != H.cols()) throw ShapeError("oracle_steady_state: H must be square");
  Eigen::JacobiSVD<Mat<double>> svd(H, Eigen::ComputeFullV);
  Vec<double> v = svd.matrixV().col(H.cols() - 1);
  const double total = v.sum();
  if (std::fabs(total) < 1e-12) throw ZeroImageError("oracle null vector sums to zero");
  SteadyState<double> st;
  st.vector = v / total;
  st.normalization = total;
  st.provenance = Provenance::Oracle;
  return st;
}

template <class S>
struct MappedState {
  SteadyState<S> state;
  S scale;  // mass of the unnormalized image
};

/// Push a state through the contracted intertwiner and renormalize.
template <class S>
MappedState<S> map_through(const MpoIntertwiner<S>& mpo, const SteadyState<S>& in) {
  const Mat<S> G = contract(mpo);
  if (G.cols() != in.vector.size()) throw DimensionError("map_through: dimension mismatch");
  Vec<S> img = G * in.vector;
  S total(0);
  double linf = 0.0;
  for (long i = 0; i < img.size(); ++i) {
    total += img(i);
    linf = std::max(linf, std::fabs(ScalarTraits<S>::to_double(img(i))));
  }
  if (linf < 1e-300 || std::fabs(ScalarTraits<S>::to_double(total)) < 1e-14 * linf)
    throw ZeroImageError("intertwiner annihilated the state");
  MappedState<S> out;
  out.state.vector = img / total;
  out.state.normalization = total;
  out.state.provenance = Provenance::MappedThroughG;
  out.scale = total;
  return out;
}

/// Proportionality defect 1 - |cos angle| between two vectors.
inline double angle_between(const Vec<double>& a, const Vec<double>& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  return 1.0 - std::fabs(a.dot(b)) / (na * nb);
}

}  // namespace ssepdual
