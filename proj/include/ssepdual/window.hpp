#pragma once

#include "ssepdual/errors.hpp"

namespace ssepdual {

/// Finite realization range [n_min, n_max] of the bi-infinite auxiliary index.
/// Must contain the seed index 0 of the boundary vector |V> = |0>.
struct AuxWindow {
  long n_min, n_max;

  long size() const { return n_max - n_min + 1; }

  long index(long n) const {
    if (n < n_min || n > n_max) throw IndexError("auxiliary index outside window");
    return n - n_min;
  }

  bool contains(long n) const { return n >= n_min && n <= n_max; }

  /// Window for an N-site contraction: the reachable set [-N, N] plus `pad`
  /// guard rows per side. Default width 2N+3.
  static AuxWindow for_sites(long N, long pad = 1) { return {-N - pad, N + pad}; }
};

/// Auxiliary indices whose r_n value can influence an N-site contraction
/// seeded at |V> = |0>: the superdiagonal entries 1/r_n are consumed only for
/// n in [-N, N-1]. A vanishing r_n outside this set is masked as inert; inside
/// it, the construction is genuinely divergent.
struct ReachSet {
  long lo, hi;
  static ReachSet for_sites(long N) { return {-N, N - 1}; }
  bool contains(long n) const { return n >= lo && n <= hi; }
};

}  // namespace ssepdual
