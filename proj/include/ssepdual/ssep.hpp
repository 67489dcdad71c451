#pragma once

#include "ssepdual/dense.hpp"
#include "ssepdual/rates.hpp"

namespace ssepdual {

/// Basis convention: per-site state 0 = empty, 1 = occupied. Tensor factors
/// are ordered left-to-right, site 1 first (most significant bit of the
/// configuration index). The generator convention is d|P>/dt = H|P>, so every
/// assembled H has zero column sums and non-negative off-diagonals.

inline constexpr long kMaxSites = 12;

/// Symmetric nearest-neighbour hopping generator on a pair of sites.
template <class S>
Mat<S> build_bulk_h() {
  Mat<S> h = Mat<S>::Zero(4, 4);
  h(1, 1) = S(-1);
  h(2, 2) = S(-1);
  h(1, 2) = S(1);
  h(2, 1) = S(1);
  return h;
}

enum class Side { Left, Right };

/// Single-site boundary generator: injection fills, extraction empties.
template <class S>
Mat<S> build_boundary(Side side, const BoundaryRates<S>& rates) {
  rates.validate();
  return side == Side::Left ? left_generator<S>(rates.alpha, rates.gamma)
                            : right_generator<S>(rates.delta, rates.beta);
}

enum class BoundaryKind { NonEquilibrium, DualEquilibriumRight, DualEquilibriumLeft };

template <class S>
struct ProcessSpec {
  long N;
  BoundaryRates<S> rates;
  BoundaryKind kind = BoundaryKind::NonEquilibrium;
};

/// B_L at site 1 + sum of bulk hops + B_R at site N.
template <class S>
Mat<S> assemble_from_parts(long N, const Mat<S>& B_L, const Mat<S>& B_R) {
  if (N < 1 || N > kMaxSites) throw DimensionError("assemble: N out of range");
  Mat<S> H = embed_local<S>(B_L, 1, 1, N) + embed_local<S>(B_R, N, 1, N);
  const Mat<S> h = build_bulk_h<S>();
  for (long i = 1; i < N; ++i) H += embed_local<S>(h, i, 2, N);
  return H;
}

template <class S>
Mat<S> assemble_H(const ProcessSpec<S>& spec) {
  spec.rates.validate();
  switch (spec.kind) {
    case BoundaryKind::NonEquilibrium:
      return assemble_from_parts<S>(spec.N, build_boundary(Side::Left, spec.rates),
                                    build_boundary(Side::Right, spec.rates));
    case BoundaryKind::DualEquilibriumRight: {
      const auto d = build_dual_rates(spec.rates, Variant::YR);
      return assemble_from_parts<S>(spec.N, d.B_L, d.B_R);
    }
    case BoundaryKind::DualEquilibriumLeft: {
      const auto d = build_dual_rates(spec.rates, Variant::YL);
      return assemble_from_parts<S>(spec.N, d.B_L, d.B_R);
    }
  }
  throw ConfigError("assemble_H: unknown boundary kind");
}

template <class S>
Mat<S> nonequilibrium_H(const BoundaryRates<S>& rates, long N) {
  return assemble_H<S>({N, rates, BoundaryKind::NonEquilibrium});
}

template <class S>
Mat<S> equilibrium_H(const BoundaryRates<S>& rates, long N, Variant variant) {
  return assemble_H<S>({N, rates,
                        variant == Variant::YR ? BoundaryKind::DualEquilibriumRight
                                               : BoundaryKind::DualEquilibriumLeft});
}

/// Largest |column sum|; zero for a probability-conserving generator.
inline double max_column_sum(const Mat<double>& H) {
  double worst = 0.0;
  for (long j = 0; j < H.cols(); ++j) worst = std::max(worst, std::fabs(H.col(j).sum()));
  return worst;
}

/// Smallest off-diagonal entry; non-negative for a Markov generator.
inline double min_offdiagonal(const Mat<double>& H) {
  double worst = 0.0;
  for (long j = 0; j < H.cols(); ++j)
    for (long i = 0; i < H.rows(); ++i)
      if (i != j) worst = std::min(worst, H(i, j));
  return worst;
}

}  // namespace ssepdual
