#pragma once

#include <array>
#include <cmath>
#include <random>

#include "ssepdual/dense.hpp"
#include "ssepdual/errors.hpp"
#include "ssepdual/scalar.hpp"

namespace ssepdual {

/// The four boundary parameters: alpha (left injection), gamma (left
/// extraction), delta (right injection), beta (right extraction).
template <class S>
struct BoundaryRates {
  S alpha, beta, gamma, delta;

  void validate() const {
    if (alpha < S(0) || beta < S(0) || gamma < S(0) || delta < S(0))
      throw ConfigError("boundary rates must be non-negative");
    if (!(left_sum() > S(0)) || !(right_sum() > S(0)))
      throw ConfigError("boundary rate sums alpha+gamma and beta+delta must be positive");
  }

  S left_sum() const { return alpha + gamma; }
  S right_sum() const { return beta + delta; }
  /// Current-carrying combination; zero iff the boundaries are in equilibrium.
  S mu() const { return alpha * beta - gamma * delta; }
};

template <class S>
bool is_equilibrium(const BoundaryRates<S>& r) {
  if constexpr (ScalarTraits<S>::is_exact) {
    return r.mu() == S(0);
  } else {
    const double scale = std::max(1.0, std::fabs(r.alpha * r.beta) + std::fabs(r.gamma * r.delta));
    return std::fabs(r.mu()) <= 1e-12 * scale;
  }
}

/// Scalar atoms of the ladder representation, optionally evaluated at negated
/// rates (the reverse-direction construction).
template <class S>
struct RateAtoms {
  S ls, rs;  // alpha+gamma, beta+delta (possibly negated)
  S mu;      // alpha*beta - gamma*delta (invariant under global negation)
  S u, w, s; // 1/ls, 1/rs, u+w
  S alpha, beta, gamma, delta;

  static RateAtoms from(const BoundaryRates<S>& r, bool negate) {
    RateAtoms a;
    const S sign = negate ? S(-1) : S(1);
    a.alpha = sign * r.alpha;
    a.beta = sign * r.beta;
    a.gamma = sign * r.gamma;
    a.delta = sign * r.delta;
    a.ls = a.alpha + a.gamma;
    a.rs = a.beta + a.delta;
    a.mu = a.alpha * a.beta - a.gamma * a.delta;
    a.u = S(1) / a.ls;
    a.w = S(1) / a.rs;
    a.s = a.u + a.w;
    return a;
  }

  /// r_n = ((beta+delta)/mu) * (u + w + n) = (s + n) / (mu * w).
  S r_at(long n) const { return (s + S(n)) / (mu * w); }
};

enum class Variant { YR, YL };

inline const char* to_string(Variant v) { return v == Variant::YR ? "YR" : "YL"; }

/// Equilibrium boundary generators dual to the given out-of-equilibrium rates,
/// together with the ratio r = (alpha+gamma)/(beta+delta) and the equivalent
/// equilibrium rate tuple. For the right-anchored variant the left boundary
/// becomes r * A_R; for the left-anchored variant the right boundary becomes
/// (1/r) * A_L. Both satisfy alpha_eq*beta_eq - gamma_eq*delta_eq = 0
/// identically, which is what makes the dual process an equilibrium one.
template <class S>
struct DualBoundary {
  Mat<S> B_L, B_R;  // 2x2 generators
  S r;
  BoundaryRates<S> equivalent;
};

template <class S>
Mat<S> left_generator(S alpha, S gamma) {
  Mat<S> m(2, 2);
  m << -alpha, gamma, alpha, -gamma;
  return m;
}

template <class S>
Mat<S> right_generator(S delta, S beta) {
  Mat<S> m(2, 2);
  m << -delta, beta, delta, -beta;
  return m;
}

template <class S>
DualBoundary<S> build_dual_rates(const BoundaryRates<S>& rates, Variant variant) {
  rates.validate();
  DualBoundary<S> d;
  d.r = rates.left_sum() / rates.right_sum();
  if (variant == Variant::YR) {
    d.B_L = d.r * right_generator<S>(rates.delta, rates.beta);
    d.B_R = right_generator<S>(rates.delta, rates.beta);
    d.equivalent = {d.r * rates.delta, rates.beta, d.r * rates.beta, rates.delta};
  } else {
    d.B_L = left_generator<S>(rates.alpha, rates.gamma);
    d.B_R = (S(1) / d.r) * left_generator<S>(rates.alpha, rates.gamma);
    d.equivalent = {rates.alpha, rates.gamma / d.r, rates.gamma, rates.alpha / d.r};
  }
  return d;
}

/// Seeded rejection sampler for boundary rates. Rejects near-equilibrium sets
/// (the representation is singular there) and sets whose atom s = u + w is
/// close to an integer (r_{-s} = 0 would put a pole inside the usable window).
class RateSampler {
 public:
  explicit RateSampler(std::uint64_t seed) : rng_(seed) {}

  BoundaryRates<double> next() {
    std::uniform_real_distribution<double> dist(0.05, 3.0);
    for (int tries = 0; tries < 100000; ++tries) {
      BoundaryRates<double> r{dist(rng_), dist(rng_), dist(rng_), dist(rng_)};
      if (acceptable(r)) return r;
    }
    throw ConfigError("rate sampler failed to find an acceptable rate set");
  }

  /// Rate set with prescribed boundary sums (needed for composition checks,
  /// where the two sets must share alpha+gamma and beta+delta).
  BoundaryRates<double> next_with_sums(double left_sum, double right_sum) {
    std::uniform_real_distribution<double> da(0.05, left_sum - 0.05);
    std::uniform_real_distribution<double> dd(0.05, right_sum - 0.05);
    for (int tries = 0; tries < 100000; ++tries) {
      const double alpha = da(rng_), delta = dd(rng_);
      BoundaryRates<double> r{alpha, right_sum - delta, left_sum - alpha, delta};
      if (std::fabs(r.mu()) >= 0.05) return r;
    }
    throw ConfigError("rate sampler failed under sum constraints");
  }

  /// Three rate sets sharing both boundary sums, with s = u + w kept away
  /// from integers so that no member has a pole in its window.
  std::array<BoundaryRates<double>, 3> next_constrained_triple() {
    std::uniform_real_distribution<double> dsum(0.6, 2.9);
    double ls = 0, rs = 0;
    for (int tries = 0; tries < 100000; ++tries) {
      ls = dsum(rng_);
      rs = dsum(rng_);
      const double s = 1.0 / ls + 1.0 / rs;
      if (std::fabs(s - std::round(s)) >= 0.1) break;
    }
    return {next_with_sums(ls, rs), next_with_sums(ls, rs), next_with_sums(ls, rs)};
  }

 private:
  static bool acceptable(const BoundaryRates<double>& r) {
    if (std::fabs(r.mu()) < 0.05) return false;
    const double s = 1.0 / r.left_sum() + 1.0 / r.right_sum();
    return std::fabs(s - std::round(s)) >= 0.05;
  }

  std::mt19937_64 rng_;
};

}  // namespace ssepdual
