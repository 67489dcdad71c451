#pragma once

// Named verification checks. Every check builds one or more defect matrices
// (left-hand side minus right-hand side of an identity), reduces them to a
// single scalar residual, and reports it against a pinned tolerance. The
// defect builders are generic over the scalar type so the same construction
// serves both floating-point and exact-rational verification.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ssepdual/dense.hpp"
#include "ssepdual/errors.hpp"
#include "ssepdual/mpo.hpp"
#include "ssepdual/observables.hpp"
#include "ssepdual/rates.hpp"
#include "ssepdual/rep.hpp"
#include "ssepdual/scalar.hpp"
#include "ssepdual/site_tensor.hpp"
#include "ssepdual/ssep.hpp"
#include "ssepdual/steady_state.hpp"
#include "ssepdual/window.hpp"

namespace ssepdual {

struct CheckReport {
  std::string name;
  long N = 0;
  std::string rates;
  double residual = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  bool passed = false;
  std::string details;

  static CheckReport make(std::string name, long N, std::string rates, double residual,
                          double tolerance, std::string details = {}) {
    CheckReport r;
    r.name = std::move(name);
    r.N = N;
    r.rates = std::move(rates);
    r.residual = residual;
    r.tolerance = tolerance;
    r.passed = std::isfinite(residual) && residual <= tolerance;
    r.details = std::move(details);
    return r;
  }

  static CheckReport errored(std::string name, long N, std::string rates, double tolerance,
                             const std::string& message) {
    CheckReport r;
    r.name = std::move(name);
    r.N = N;
    r.rates = std::move(rates);
    r.residual = std::numeric_limits<double>::quiet_NaN();
    r.tolerance = tolerance;
    r.passed = false;
    r.details = "error: " + message;
    return r;
  }
};

template <class S>
std::string rates_to_string(const BoundaryRates<S>& r) {
  std::ostringstream os;
  os.precision(10);
  os << ScalarTraits<S>::to_double(r.alpha) << "," << ScalarTraits<S>::to_double(r.beta) << ","
     << ScalarTraits<S>::to_double(r.gamma) << "," << ScalarTraits<S>::to_double(r.delta);
  return os.str();
}

namespace detail {

/// Auxiliary window whose ladder entries are all finite for the given rates,
/// i.e. one that avoids the vanishing point of the ladder denominators while
/// still containing the aperture index 0. The denominators vanish at
/// n = -(sum of inverse boundary sums), negated for the reverse family; when
/// that value is (near-)integral the window is shifted to one side of it.
inline AuxWindow pole_free_window(const BoundaryRates<double>& rates, bool negate,
                                  long half_width = 4) {
  const auto atoms = RateAtoms<double>::from(rates, negate);
  const double s = atoms.s;
  const double pole = -s;  // index where s + n vanishes
  const double nearest = std::round(pole);
  AuxWindow w{-half_width, half_width};
  if (std::abs(pole - nearest) > 0.25) return w;  // no integer pole anywhere
  const long p = static_cast<long>(nearest);
  if (p > half_width || p < -half_width) return w;
  // Slide the window to whichever side of the pole still contains 0.
  const long width = 2 * half_width;
  if (p >= 1) return AuxWindow{p - 1 - width, p - 1};
  return AuxWindow{p + 1, p + 1 + width};
}

inline ReachSet empty_reach() { return ReachSet{1, 0}; }

/// Defects of the three structure relations of the ladder matrices, evaluated
/// on the interior of the window (two guard indices trimmed at each end).
template <class S>
std::array<Mat<S>, 3> rep_algebra_defects(const RepMatrices<S>& rep) {
  const long sz = rep.window.size();
  if (sz < 5) throw DimensionError("rep_algebra_defects: window too small");
  const auto& D = rep.D;
  const auto& E = rep.E;
  const auto& F = rep.F;
  const Mat<S> c_ef = E * F - F * E - F;
  const Mat<S> c_df = D * F - F * D + F;
  const Mat<S> c_de = D * E - E * D - D - E;
  const long lo = 2, n = sz - 4;
  return {Mat<S>(c_ef.block(lo, lo, n, n)), Mat<S>(c_df.block(lo, lo, n, n)),
          Mat<S>(c_de.block(lo, lo, n, n))};
}

/// Defects of the boundary absorption relations. The uniform covector absorbs
/// alpha E - gamma D on the left (interior columns only; one guard trimmed at
/// each end) and the seed vector absorbs beta D - delta E on the right. For
/// the reverse family, built from negated rates, both eigenvalues flip sign.
template <class S>
std::pair<RowVec<S>, Vec<S>> boundary_defects(const RepMatrices<S>& rep,
                                              const BoundaryRates<S>& rates, bool negated) {
  const long sz = rep.window.size();
  if (sz < 3) throw DimensionError("boundary_defects: window too small");
  const S sigma = negated ? S(-1) : S(1);
  RowVec<S> w = RowVec<S>::Ones(sz);
  Vec<S> v = Vec<S>::Zero(sz);
  v(rep.window.index(0)) = S(1);
  RowVec<S> left = w * (rates.alpha * rep.E - rates.gamma * rep.D) - sigma * w;
  Vec<S> right = (rates.beta * rep.D - rates.delta * rep.E) * v - sigma * v;
  RowVec<S> left_interior = left.segment(1, sz - 2);
  return {left_interior, right};
}

/// Two-site tensor of a site tensor with itself: index pairs of physical legs.
template <class S>
using PairBlocks = std::array<std::array<Mat<S>, 4>, 4>;

template <class S>
PairBlocks<S> pair_product(const SiteTensor<S>& t) {
  PairBlocks<S> p;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          t.blk[static_cast<std::size_t>(a >> 1)][static_cast<std::size_t>(b >> 1)] *
          t.blk[static_cast<std::size_t>(a & 1)][static_cast<std::size_t>(b & 1)];
  return p;
}

/// Defect blocks of the bulk exchange relation
///   h (T T) - (T T) h = (T Z) - (Z T)
/// where h is the two-site hopping generator and Z the divergence tensor.
/// Sixteen blocks, each restricted to the interior of the auxiliary window.
template <class S>
std::vector<Mat<S>> bulk_exchange_defects(const SiteTensor<S>& site, const SiteTensor<S>& zt,
                                          const Mat<S>& h) {
  const long sz = site.aux_dim();
  if (sz < 5) throw DimensionError("bulk_exchange_defects: window too small");
  const PairBlocks<S> tt = pair_product(site);
  std::vector<Mat<S>> out;
  out.reserve(16);
  const long lo = 2, n = sz - 4;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      Mat<S> lhs = Mat<S>::Zero(sz, sz);
      for (int c = 0; c < 4; ++c) {
        if (!(h(a, c) == S(0)))
          lhs += h(a, c) * tt[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)];
        if (!(h(c, b) == S(0)))
          lhs -= tt[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] * h(c, b);
      }
      const std::size_t a1 = static_cast<std::size_t>(a >> 1), a2 = static_cast<std::size_t>(a & 1);
      const std::size_t b1 = static_cast<std::size_t>(b >> 1), b2 = static_cast<std::size_t>(b & 1);
      Mat<S> rhs = site.blk[a1][b1] * zt.blk[a2][b2] - zt.blk[a1][b1] * site.blk[a2][b2];
      Mat<S> defect = lhs - rhs;
      out.emplace_back(defect.block(lo, lo, n, n));
    }
  }
  return out;
}

/// Dense operator of an auxiliary-chain transducer, with optional insertions.
template <class S>
Mat<S> dense_operator(const MpoIntertwiner<S>& mpo) {
  const long dim = 1L << mpo.N;
  Mat<S> G(dim, dim);
  for (long a = 0; a < dim; ++a)
    for (long b = 0; b < dim; ++b) G(a, b) = S(0);
  // contract() fills row by row through the shared sweep; reuse it per entry
  // would be exponentially wasteful, so contract the whole table at once.
  G = contract(mpo);
  return G;
}

template <class S>
double frob(const Mat<S>& m) {
  double acc = 0;
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) {
      const double x = ScalarTraits<S>::to_double(m(i, j));
      acc += x * x;
    }
  return std::sqrt(acc);
}

template <class S>
double frob(const RowVec<S>& m) {
  double acc = 0;
  for (long j = 0; j < m.cols(); ++j) {
    const double x = ScalarTraits<S>::to_double(m(j));
    acc += x * x;
  }
  return std::sqrt(acc);
}

template <class S>
double frob(const Vec<S>& m) {
  double acc = 0;
  for (long j = 0; j < m.rows(); ++j) {
    const double x = ScalarTraits<S>::to_double(m(j));
    acc += x * x;
  }
  return std::sqrt(acc);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual checks (floating point).
// ---------------------------------------------------------------------------

/// Markov validity of the assembled generator: every column sums to zero and
/// every off-diagonal entry is non-negative.
inline CheckReport check_generator_validity(const BoundaryRates<double>& rates, long N) {
  const Mat<double> H = nonequilibrium_H(rates, N);
  const double col = max_column_sum(H);
  const double neg = std::max(0.0, -min_offdiagonal(H));
  const double residual = std::max(col, neg);
  std::ostringstream d;
  d << "max |column sum| = " << col << ", worst off-diagonal negativity = " << neg;
  return CheckReport::make("generator_validity", N, rates_to_string(rates), residual,
                           tol::generator_column_sum, d.str());
}

/// Structure relations of the ladder matrices on the window interior,
/// together with the boundary absorption relations, for one family.
inline CheckReport check_rep_algebra(const BoundaryRates<double>& rates, Direction dir,
                                     long half_width = 5) {
  const bool negate = dir == Direction::EtoNE;
  const AuxWindow window = detail::pole_free_window(rates, negate, half_width);
  const auto rep = build_rep(rates, window, negate, detail::empty_reach());
  const auto defects = detail::rep_algebra_defects(rep);
  double scale = std::max({1.0, detail::frob(rep.D), detail::frob(rep.E), detail::frob(rep.F)});
  double worst = 0.0;
  for (const auto& m : defects) worst = std::max(worst, detail::frob(m) / scale);
  const auto [bl, br] = detail::boundary_defects(rep, rates, negate);
  worst = std::max(worst, detail::frob(bl) / scale);
  worst = std::max(worst, detail::frob(br) / scale);
  std::ostringstream d;
  d << "direction " << to_string(dir) << ", window [" << window.n_min << "," << window.n_max
    << "], commutator and boundary defects combined";
  return CheckReport::make(std::string("rep_algebra_") + to_string(dir), 0,
                           rates_to_string(rates), worst, tol::rep_relation, d.str());
}

/// Bulk exchange relation: the hopping generator moves through a pair of site
/// tensors up to the telescoping divergence term.
inline CheckReport check_bulk_exchange(const BoundaryRates<double>& rates, Direction dir,
                                       Variant variant, long half_width = 5) {
  const bool negate = dir == Direction::EtoNE;
  const AuxWindow window = detail::pole_free_window(rates, negate, half_width);
  const auto rep = build_rep(rates, window, negate, detail::empty_reach());
  const Mat<double> y = build_Y_factor(rates, variant);
  const SiteTensor<double> site =
      negate ? reverse_site_tensor(rep, y) : forward_site_tensor(rep, y);
  const SiteTensor<double> zt = telescope_tensor(dir, rates, variant, window.size());
  const Mat<double> h = build_bulk_h<double>();
  const auto defects = detail::bulk_exchange_defects(site, zt, h);
  double scale = 1.0;
  for (const auto& b : site.blk)
    for (const auto& m : b) scale = std::max(scale, detail::frob(m));
  double worst = 0.0;
  for (const auto& m : defects) worst = std::max(worst, detail::frob(m) / scale);
  std::ostringstream d;
  d << "direction " << to_string(dir) << ", variant " << to_string(variant) << ", window ["
    << window.n_min << "," << window.n_max << "]";
  return CheckReport::make(std::string("bulk_exchange_") + to_string(dir) + "_" +
                               to_string(variant),
                           0, rates_to_string(rates), worst, tol::exchange_relation, d.str());
}

/// Boundary exchange relation at the contracted level: the boundary generators
/// move through the edge site tensor onto their duals, up to the divergence
/// term absorbed by the edge vectors.
inline CheckReport check_boundary_exchange(const BoundaryRates<double>& rates, Direction dir,
                                           Variant variant, long half_width = 5) {
  const bool negate = dir == Direction::EtoNE;
  const AuxWindow window = detail::pole_free_window(rates, negate, half_width);
  const auto rep = build_rep(rates, window, negate, detail::empty_reach());
  const Mat<double> y = build_Y_factor(rates, variant);
  const SiteTensor<double> site =
      negate ? reverse_site_tensor(rep, y) : forward_site_tensor(rep, y);
  const SiteTensor<double> zt = telescope_tensor(dir, rates, variant, window.size());
  const auto dual = build_dual_rates(rates, variant);
  const Mat<double> A_L = left_generator(rates.alpha, rates.gamma);
  const Mat<double> A_R = right_generator(rates.delta, rates.beta);
  // In the reverse direction the roles of the two processes swap: the dual
  // boundary generators act on the physical legs and the physical ones are
  // recovered on the other side.
  const Mat<double> L_out = negate ? dual.B_L : A_L;
  const Mat<double> L_in = negate ? A_L : dual.B_L;
  const Mat<double> R_out = negate ? dual.B_R : A_R;
  const Mat<double> R_in = negate ? A_R : dual.B_R;
  const long sz = window.size();
  RowVec<double> w = RowVec<double>::Ones(sz);
  Vec<double> v = Vec<double>::Zero(sz);
  v(window.index(0)) = 1.0;
  double scale = 1.0;
  for (const auto& b : site.blk)
    for (const auto& m : b) scale = std::max(scale, detail::frob(m));
  // Left: <w| (L_out T - T L_in - Z) = 0 on interior auxiliary components.
  double worst = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      RowVec<double> acc = RowVec<double>::Zero(sz);
      for (int c = 0; c < 2; ++c) {
        acc += L_out(a, c) * (w * site.blk[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)]);
        acc -= (w * site.blk[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)]) * L_in(c, b);
      }
      acc -= w * zt.blk[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      RowVec<double> interior = acc.segment(1, sz - 2);
      worst = std::max(worst, detail::frob(interior) / scale);
    }
  }
  // Right: (R_out T - T R_in + Z) |v> = 0 exactly.
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Vec<double> acc = Vec<double>::Zero(sz);
      for (int c = 0; c < 2; ++c) {
        acc += R_out(a, c) * (site.blk[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)] * v);
        acc -= (site.blk[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] * v) * R_in(c, b);
      }
      acc += zt.blk[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * v;
      worst = std::max(worst, detail::frob(acc) / scale);
    }
  }
  std::ostringstream d;
  d << "direction " << to_string(dir) << ", variant " << to_string(variant) << ", window ["
    << window.n_min << "," << window.n_max << "]";
  return CheckReport::make(std::string("boundary_exchange_") + to_string(dir) + "_" +
                               to_string(variant),
                           0, rates_to_string(rates), worst, tol::exchange_relation, d.str());
}

/// Global intertwining: the transducer carries one full generator into the
/// other, H_ne G = G H_eq (forward) or H_eq G' = G' H_ne (reverse).
inline CheckReport check_intertwining(const BoundaryRates<double>& rates, long N, Direction dir,
                                      Variant variant) {
  const Mat<double> H_ne = nonequilibrium_H(rates, N);
  const Mat<double> H_eq = equilibrium_H(rates, N, variant);
  Mat<double> lhs, rhs;
  if (dir == Direction::NEtoE) {
    const auto mpo = build_G(rates, N, variant);
    const Mat<double> G = contract(mpo);
    lhs = H_ne * G;
    rhs = G * H_eq;
  } else {
    const auto mpo = build_G_prime(rates, N, variant);
    const Mat<double> Gp = contract(mpo);
    lhs = H_eq * Gp;
    rhs = Gp * H_ne;
  }
  const double r = relative_residual(lhs, rhs);
  std::ostringstream d;
  d << "direction " << to_string(dir) << ", variant " << to_string(variant);
  return CheckReport::make(std::string("intertwining_") + to_string(dir) + "_" +
                               to_string(variant),
                           N, rates_to_string(rates), r, tol::intertwining, d.str());
}

/// Window stability: enlarging the auxiliary window beyond the reachable set
/// must not change the contracted operator.
inline CheckReport check_window_stability(const BoundaryRates<double>& rates, long N,
                                          Variant variant) {
  const Mat<double> g1 = contract(build_G(rates, N, variant, 1));
  const Mat<double> g3 = contract(build_G(rates, N, variant, 3));
  const double r = relative_residual(g1, g3);
  return CheckReport::make(std::string("window_stability_") + to_string(variant), N,
                           rates_to_string(rates), r, tol::window_stability,
                           "padding 1 vs padding 3");
}

/// Product of the forward and reverse transducers against a multiple of the
/// identity, with the proportionality constant fitted by least squares.
inline CheckReport check_inverse(const BoundaryRates<double>& rates, long N, Variant variant) {
  const Mat<double> G = contract(build_G(rates, N, variant));
  const Mat<double> Gp = contract(build_G_prime(rates, N, variant));
  const Mat<double> P = G * Gp;
  const long dim = P.rows();
  const double tr = P.trace();
  const double pf = detail::frob(P);
  const double c = pf > 0 ? tr / (pf * pf) : 0.0;
  const Mat<double> I = Mat<double>::Identity(dim, dim);
  const double r = detail::frob(Mat<double>(c * P - I)) / std::sqrt(static_cast<double>(dim));
  Eigen::JacobiSVD<Mat<double>> svd(G);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  std::ostringstream d;
  d << "variant " << to_string(variant) << ", fitted scale = " << c
    << ", cond(G) = " << (smin > 0 ? smax / smin : std::numeric_limits<double>::infinity());
  return CheckReport::make(std::string("inverse_product_") + to_string(variant), N,
                           rates_to_string(rates), r, tol::inverse_fit, d.str());
}

/// Composition closure: chaining two composite transducers against the direct
/// one, raw and with a fitted scalar.
inline CheckReport check_closure(const BoundaryRates<double>& a, const BoundaryRates<double>& b,
                                 const BoundaryRates<double>& c, long N, Variant variant) {
  const Mat<double> gab = contract(compose_tilde_G(a, b, N, variant));
  const Mat<double> gbc = contract(compose_tilde_G(b, c, N, variant));
  const Mat<double> gac = contract(compose_tilde_G(a, c, N, variant));
  const Mat<double> prod = gab * gbc;
  const double raw = relative_residual(prod, gac);
  double dot = 0, nn = 0;
  for (long i = 0; i < prod.rows(); ++i)
    for (long j = 0; j < prod.cols(); ++j) {
      dot += gac(i, j) * prod(i, j);
      nn += gac(i, j) * gac(i, j);
    }
  const double fit = nn > 0 ? dot / nn : 0.0;
  const double fitted =
      detail::frob(Mat<double>(prod - fit * gac)) / std::max(1.0, detail::frob(prod));
  std::ostringstream d;
  d << "variant " << to_string(variant) << ", raw residual = " << raw
    << ", fitted scalar = " << fit;
  return CheckReport::make(std::string("closure_") + to_string(variant), N,
                           rates_to_string(a) + " | " + rates_to_string(b) + " | " +
                               rates_to_string(c),
                           fitted, tol::closure, d.str());
}

/// Intertwining of the composite transducer between two driven generators
/// sharing boundary rate sums.
inline CheckReport check_composite_intertwining(const BoundaryRates<double>& a,
                                                const BoundaryRates<double>& b, long N,
                                                Variant variant) {
  const auto mpo = compose_tilde_G(a, b, N, variant);
  const Mat<double> gt = contract(mpo);
  const Mat<double> Ha = nonequilibrium_H(a, N);
  const Mat<double> Hb = nonequilibrium_H(b, N);
  const double r = relative_residual(Mat<double>(Ha * gt), Mat<double>(gt * Hb));
  std::ostringstream d;
  d << "variant " << to_string(variant);
  return CheckReport::make(std::string("composite_intertwining_") + to_string(variant), N,
                           rates_to_string(a) + " | " + rates_to_string(b), r, tol::intertwining,
                           d.str());
}

/// Sorted spectra of the driven and dual-equilibrium generators must agree.
inline CheckReport check_spectra(const BoundaryRates<double>& rates, long N, Variant variant) {
  const Mat<double> H_ne = nonequilibrium_H(rates, N);
  const Mat<double> H_eq = equilibrium_H(rates, N, variant);
  Eigen::EigenSolver<Mat<double>> sa(H_ne), sb(H_eq);
  std::vector<std::complex<double>> ea, eb;
  for (long i = 0; i < sa.eigenvalues().size(); ++i) ea.push_back(sa.eigenvalues()(i));
  for (long i = 0; i < sb.eigenvalues().size(); ++i) eb.push_back(sb.eigenvalues()(i));
  auto lex = [](const std::complex<double>& x, const std::complex<double>& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  };
  std::sort(ea.begin(), ea.end(), lex);
  std::sort(eb.begin(), eb.end(), lex);
  double scale = 1.0, worst = 0.0;
  for (const auto& z : ea) scale = std::max(scale, std::abs(z));
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  std::ostringstream d;
  d << "variant " << to_string(variant) << ", " << ea.size() << " eigenvalues, scale " << scale;
  return CheckReport::make(std::string("spectra_") + to_string(variant), N,
                           rates_to_string(rates), worst / scale, tol::spectra, d.str());
}

/// Steady-state mapping: the transducer maps the Bernoulli steady state of the
/// dual-equilibrium process onto the driven steady state, and the exclusion
/// product-form state reproduces the driven steady state directly.
inline CheckReport check_steady_mapping(const BoundaryRates<double>& rates, long N,
                                        Variant variant) {
  const Mat<double> H_ne = nonequilibrium_H(rates, N);
  const auto oracle = oracle_steady_state(H_ne);
  const auto dual = build_dual_rates(rates, variant);
  const auto bern = build_bernoulli(dual.equivalent, N);
  const auto mpo = build_G(rates, N, variant);
  const auto mapped = map_through(mpo, bern);
  const double a1 = angle_between(mapped.state.vector, oracle.vector);
  const auto mps = build_dehp_mps(rates, N);
  const double a2 = angle_between(mps.vector, oracle.vector);
  std::ostringstream d;
  d << "variant " << to_string(variant) << ", mapped-vs-oracle angle = " << a1
    << ", product-form-vs-oracle angle = " << a2 << ", mapped scale = " << mapped.scale;
  return CheckReport::make(std::string("steady_mapping_") + to_string(variant), N,
                           rates_to_string(rates), std::max(a1, a2), tol::steady_angle, d.str());
}

/// The dual boundary rates satisfy the equilibrium condition identically, and
/// the Bernoulli product state is annihilated by the dual generator.
inline CheckReport check_dual_equilibrium(const BoundaryRates<double>& rates, long N,
                                          Variant variant) {
  // Exactness of the equilibrium condition, certified in exact arithmetic on
  // the same numerical inputs.
  BoundaryRates<Rational> rq{Rational(rates.alpha), Rational(rates.beta), Rational(rates.gamma),
                             Rational(rates.delta)};
  const auto dual_q = build_dual_rates(rq, variant);
  const Rational mu_q = dual_q.equivalent.mu();
  const bool mu_zero = mu_q == 0;
  const auto dual = build_dual_rates(rates, variant);
  const Mat<double> H_eq = equilibrium_H(rates, N, variant);
  const auto bern = build_bernoulli(dual.equivalent, N);
  const Vec<double> img = H_eq * bern.vector;
  const double null_res = detail::frob(img) / std::max(1.0, detail::frob(bern.vector));
  const double residual = mu_zero ? null_res : std::numeric_limits<double>::infinity();
  std::ostringstream d;
  d << "variant " << to_string(variant) << ", equilibrium condition exact: "
    << (mu_zero ? "yes" : "no") << ", Bernoulli annihilation residual = " << null_res;
  return CheckReport::make(std::string("dual_equilibrium_") + to_string(variant), N,
                           rates_to_string(rates), residual, tol::bernoulli_null, d.str());
}

/// Correlator duality: occupation correlators of the driven process computed
/// directly from its steady state and through the dual representation.
inline CheckReport check_correlator_duality(const BoundaryRates<double>& rates, long N,
                                            Variant variant) {
  std::vector<CorrelatorSpec> specs;
  for (long i = 1; i <= N; ++i) specs.push_back(CorrelatorSpec{{i}});
  for (long i = 1; i + 1 <= N; ++i) specs.push_back(CorrelatorSpec{{i, i + 1}});
  double worst_good = 0.0, worst_raw = 0.0;
  for (const auto& spec : specs) {
    const double direct = correlate_direct(rates, N, spec);
    const double via_scaled =
        correlate_dual(rates, N, spec, variant, XConvention::XTimesYinv);
    const double via_raw = correlate_dual(rates, N, spec, variant, XConvention::XRaw);
    worst_good = std::max(worst_good, std::abs(via_scaled - direct) / std::max(1.0, std::abs(direct)));
    worst_raw = std::max(worst_raw, std::abs(via_raw - direct) / std::max(1.0, std::abs(direct)));
  }
  std::ostringstream d;
  d << "variant " << to_string(variant) << ", convention " << to_string(XConvention::XTimesYinv)
    << " residual = " << worst_good << "; convention " << to_string(XConvention::XRaw)
    << " residual = " << worst_raw << "; recorded convention: "
    << to_string(XConvention::XTimesYinv);
  return CheckReport::make(std::string("correlator_duality_") + to_string(variant), N,
                           rates_to_string(rates), worst_good, tol::correlator, d.str());
}

// ---------------------------------------------------------------------------
// Exact-arithmetic certificates. Each returns true iff the corresponding
// defect vanishes identically over the rationals.
// ---------------------------------------------------------------------------

inline BoundaryRates<Rational> to_rational(const BoundaryRates<double>& r) {
  return BoundaryRates<Rational>{Rational(r.alpha), Rational(r.beta), Rational(r.gamma),
                                 Rational(r.delta)};
}

inline bool exact_rep_algebra(const BoundaryRates<Rational>& rates, bool negate,
                              const AuxWindow& window) {
  const auto rep = build_rep(rates, window, negate, detail::empty_reach());
  for (const auto& m : detail::rep_algebra_defects(rep))
    if (!is_exactly_zero(m)) return false;
  const auto [bl, br] = detail::boundary_defects(rep, rates, negate);
  for (long j = 0; j < bl.cols(); ++j)
    if (!(bl(j) == Rational(0))) return false;
  for (long i = 0; i < br.rows(); ++i)
    if (!(br(i) == Rational(0))) return false;
  return true;
}

inline bool exact_bulk_exchange(const BoundaryRates<Rational>& rates, Direction dir,
                                Variant variant, const AuxWindow& window) {
  const bool negate = dir == Direction::EtoNE;
  const auto rep = build_rep(rates, window, negate, detail::empty_reach());
  const Mat<Rational> y = build_Y_factor(rates, variant);
  const SiteTensor<Rational> site =
      negate ? reverse_site_tensor(rep, y) : forward_site_tensor(rep, y);
  const SiteTensor<Rational> zt = telescope_tensor(dir, rates, variant, window.size());
  const Mat<Rational> h = build_bulk_h<Rational>();
  for (const auto& m : detail::bulk_exchange_defects(site, zt, h))
    if (!is_exactly_zero(m)) return false;
  return true;
}

inline bool exact_boundary_exchange(const BoundaryRates<Rational>& rates, Direction dir,
                                    Variant variant, const AuxWindow& window) {
  const bool negate = dir == Direction::EtoNE;
  const auto rep = build_rep(rates, window, negate, detail::empty_reach());
  const Mat<Rational> y = build_Y_factor(rates, variant);
  const SiteTensor<Rational> site =
      negate ? reverse_site_tensor(rep, y) : forward_site_tensor(rep, y);
  const SiteTensor<Rational> zt = telescope_tensor(dir, rates, variant, window.size());
  const auto dual = build_dual_rates(rates, variant);
  const Mat<Rational> A_Lm = left_generator(rates.alpha, rates.gamma);
  const Mat<Rational> A_Rm = right_generator(rates.delta, rates.beta);
  const Mat<Rational> L_out = negate ? dual.B_L : A_Lm;
  const Mat<Rational> L_in = negate ? A_Lm : dual.B_L;
  const Mat<Rational> R_out = negate ? dual.B_R : A_Rm;
  const Mat<Rational> R_in = negate ? A_Rm : dual.B_R;
  const long sz = window.size();
  RowVec<Rational> w = RowVec<Rational>::Ones(sz);
  Vec<Rational> v = Vec<Rational>::Zero(sz);
  v(window.index(0)) = Rational(1);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      RowVec<Rational> acc = RowVec<Rational>::Zero(sz);
      Vec<Rational> acc2 = Vec<Rational>::Zero(sz);
      for (int c = 0; c < 2; ++c) {
        const auto cb = site.blk[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)];
        const auto ac = site.blk[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
        acc += L_out(a, c) * (w * cb) - (w * ac) * L_in(c, b);
        acc2 += R_out(a, c) * (cb * v) - (ac * v) * R_in(c, b);
      }
      acc -= w * zt.blk[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      acc2 += zt.blk[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * v;
      for (long j = 1; j < sz - 1; ++j)
        if (!(acc(j) == Rational(0))) return false;
      for (long i = 0; i < sz; ++i)
        if (!(acc2(i) == Rational(0))) return false;
    }
  }
  return true;
}

inline bool exact_intertwining(const BoundaryRates<Rational>& rates, long N, Direction dir,
                               Variant variant) {
  const Mat<Rational> H_ne = nonequilibrium_H(rates, N);
  const Mat<Rational> H_eq = equilibrium_H(rates, N, variant);
  Mat<Rational> lhs, rhs;
  if (dir == Direction::NEtoE) {
    const Mat<Rational> G = contract(build_G(rates, N, variant));
    lhs = H_ne * G;
    rhs = G * H_eq;
  } else {
    const Mat<Rational> Gp = contract(build_G_prime(rates, N, variant));
    lhs = H_eq * Gp;
    rhs = Gp * H_ne;
  }
  return is_exactly_zero(Mat<Rational>(lhs - rhs));
}

inline bool exact_dual_equilibrium(const BoundaryRates<Rational>& rates, Variant variant) {
  const auto dual = build_dual_rates(rates, variant);
  return dual.equivalent.mu() == Rational(0);
}

// ---------------------------------------------------------------------------
// Suite runner.
// ---------------------------------------------------------------------------

struct SuiteConfig {
  std::vector<BoundaryRates<double>> explicit_rates;
  int random_rate_sets = 3;
  std::uint64_t seed = 20260821;
  long n_min = 1;
  long n_max = 5;
  std::vector<Variant> variants = {Variant::YR, Variant::YL};
  std::map<std::string, double> tolerance_overrides;

  double tolerance_for(const std::string& key, double fallback) const {
    auto it = tolerance_overrides.find(key);
    return it == tolerance_overrides.end() ? fallback : it->second;
  }
};

namespace detail {

template <class Fn>
void guarded(std::vector<CheckReport>& out, const std::string& name, long N,
             const std::string& rates, double tolerance, Fn&& fn) {
  try {
    out.push_back(fn());
  } catch (const std::exception& e) {
    out.push_back(CheckReport::errored(name, N, rates, tolerance, e.what()));
  }
}

}  // namespace detail

/// Runs the full battery of checks over the configured rate sets and system
/// sizes. A failing check never aborts the suite: construction errors become
/// failed entries whose details carry the error message.
inline std::vector<CheckReport> run_suite(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  std::vector<BoundaryRates<double>> rate_sets = cfg.explicit_rates;
  RateSampler sampler(cfg.seed);
  for (int i = 0; i < cfg.random_rate_sets; ++i) rate_sets.push_back(sampler.next());

  for (const auto& rates : rate_sets) {
    const std::string rs = rates_to_string(rates);
    for (long N = cfg.n_min; N <= cfg.n_max; ++N) {
      detail::guarded(out, "generator_validity", N, rs, tol::generator_column_sum,
                      [&] { return check_generator_validity(rates, N); });
    }
    for (Direction dir : {Direction::NEtoE, Direction::EtoNE}) {
      detail::guarded(out, std::string("rep_algebra_") + to_string(dir), 0, rs,
                      tol::rep_relation, [&] { return check_rep_algebra(rates, dir); });
      for (Variant variant : cfg.variants) {
        detail::guarded(out,
                        std::string("bulk_exchange_") + to_string(dir) + "_" + to_string(variant),
                        0, rs, tol::exchange_relation,
                        [&] { return check_bulk_exchange(rates, dir, variant); });
        detail::guarded(
            out, std::string("boundary_exchange_") + to_string(dir) + "_" + to_string(variant), 0,
            rs, tol::exchange_relation,
            [&] { return check_boundary_exchange(rates, dir, variant); });
      }
    }
    for (Variant variant : cfg.variants) {
      for (long N = std::max(1L, cfg.n_min); N <= cfg.n_max; ++N) {
        for (Direction dir : {Direction::NEtoE, Direction::EtoNE}) {
          detail::guarded(
              out, std::string("intertwining_") + to_string(dir) + "_" + to_string(variant), N, rs,
              tol::intertwining, [&] { return check_intertwining(rates, N, dir, variant); });
        }
      }
      const long n_mid = std::min(cfg.n_max, 4L);
      detail::guarded(out, std::string("window_stability_") + to_string(variant), n_mid, rs,
                      tol::window_stability,
                      [&] { return check_window_stability(rates, n_mid, variant); });
      detail::guarded(out, std::string("steady_mapping_") + to_string(variant), n_mid, rs,
                      tol::steady_angle,
                      [&] { return check_steady_mapping(rates, n_mid, variant); });
      detail::guarded(out, std::string("dual_equilibrium_") + to_string(variant), n_mid, rs,
                      tol::bernoulli_null,
                      [&] { return check_dual_equilibrium(rates, n_mid, variant); });
      detail::guarded(out, std::string("spectra_") + to_string(variant), n_mid, rs, tol::spectra,
                      [&] { return check_spectra(rates, n_mid, variant); });
      detail::guarded(out, std::string("inverse_product_") + to_string(variant), n_mid, rs,
                      tol::inverse_fit, [&] { return check_inverse(rates, n_mid, variant); });
      const long n_corr = std::min(cfg.n_max, 3L);
      detail::guarded(out, std::string("correlator_duality_") + to_string(variant), n_corr, rs,
                      tol::correlator,
                      [&] { return check_correlator_duality(rates, n_corr, variant); });
    }
  }

  // Composition checks need rate tuples sharing boundary sums; draw dedicated
  // constrained triples rather than reusing the free samples.
  RateSampler triple_sampler(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  const auto triple = triple_sampler.next_constrained_triple();
  const long n_comp = std::min(cfg.n_max, 3L);
  for (Variant variant : cfg.variants) {
    detail::guarded(out, std::string("composite_intertwining_") + to_string(variant), n_comp,
                    rates_to_string(triple[0]) + " | " + rates_to_string(triple[1]),
                    tol::intertwining, [&] {
                      return check_composite_intertwining(triple[0], triple[1], n_comp, variant);
                    });
    detail::guarded(out, std::string("closure_") + to_string(variant), n_comp,
                    rates_to_string(triple[0]), tol::closure, [&] {
                      return check_closure(triple[0], triple[1], triple[2], n_comp, variant);
                    });
  }

  // Apply any tolerance overrides uniformly after the fact.
  for (auto& r : out) {
    const double t = cfg.tolerance_for(r.name, r.tolerance);
    if (t != r.tolerance) {
      r.tolerance = t;
      r.passed = std::isfinite(r.residual) && r.residual <= t;
    }
  }
  return out;
}

}  // namespace ssepdual
