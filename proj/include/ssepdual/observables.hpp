#pragma once

#include <vector>

#include "ssepdual/steady_state.hpp"

namespace ssepdual {

/// Occupation-product correlator specification: strictly increasing 1-based sites.
struct CorrelatorSpec {
  std::vector<long> sites;

  void validate(long N) const {
    long prev = 0;
    for (long s : sites) {
      if (s < 1 || s > N) throw IndexError("correlator: site out of range");
      if (s <= prev) throw ConfigError("correlator: sites must be strictly increasing");
      prev = s;
    }
  }
};

/// Expectation of the product of occupation indicators in a normalized state.
inline double occupation_product(const Vec<double>& state, long N, const CorrelatorSpec& spec) {
  spec.validate(N);
  double acc = 0.0;
  const long dim = 1L << N;
  for (long cfg = 0; cfg < dim; ++cfg) {
    bool all = true;
    for (long s : spec.sites)
      if (!((cfg >> (N - s)) & 1)) {
        all = false;
        break;
      }
    if (all) acc += state(cfg);
  }
  return acc;
}

/// Direct route: the correlator in the out-of-equilibrium steady state,
/// obtained from the brute-force null vector.
inline double correlate_direct(const BoundaryRates<double>& rates, long N,
                               const CorrelatorSpec& spec) {
  spec.validate(N);
  const auto ss = oracle_steady_state(nonequilibrium_H(rates, N));
  return occupation_product(ss.vector, N, spec);
}

/// Dual route: insert occupation tensors into the intertwiner and evaluate
/// against the Bernoulli measure of the dual equilibrium process,
///   <1| G_with_insertions |Bernoulli> / <1| G |Bernoulli>.
template <class S>
S correlate_dual(const BoundaryRates<S>& rates, long N, const CorrelatorSpec& spec,
                 Variant variant, XConvention conv) {
  spec.validate(N);
  const AuxWindow win = AuxWindow::for_sites(N, 1);
  const auto rep = build_rep(rates, win, /*negate=*/false, ReachSet::for_sites(N));
  const Mat<S> y = build_Y_factor(rates, variant);

  MpoIntertwiner<S> mpo;
  mpo.site = forward_site_tensor(rep, y);
  mpo.w = RowVec<S>::Constant(win.size(), S(1));
  mpo.v = Vec<S>::Zero(win.size());
  mpo.v(win.index(0)) = S(1);
  mpo.N = N;
  mpo.direction = Direction::NEtoE;

  const SiteTensor<S> ins = insertion_tensor(rep, y, conv);
  const std::set<long> sites(spec.sites.begin(), spec.sites.end());

  const auto dual = build_dual_rates(rates, variant);
  const Vec<S> bern = build_bernoulli(dual.equivalent, N).vector;
  const RowVec<S> onesrow = RowVec<S>::Constant(1L << N, S(1));

  const S num = (onesrow * (contract_with_insertions(mpo, ins, sites) * bern))(0);
  const S den = (onesrow * (contract(mpo) * bern))(0);
  if (den == S(0)) throw ZeroImageError("dual correlator: empty-insertion contraction vanished");
  return num / den;
}

/// Single-site densities from the direct route.
inline std::vector<double> density_profile(const BoundaryRates<double>& rates, long N) {
  const auto ss = oracle_steady_state(nonequilibrium_H(rates, N));
  std::vector<double> rho;
  rho.reserve(N);
  for (long i = 1; i <= N; ++i) rho.push_back(occupation_product(ss.vector, N, {{i}}));
  return rho;
}

}  // namespace ssepdual
