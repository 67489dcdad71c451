// Acceptance battery: twelve numbered criteria, one line each, exit 0 only if
// every criterion passes. Tolerances are pinned here, next to each criterion.
//
// Criteria 8 and 9 are expected to FAIL: with the canonical uniform/seed
// boundary vectors on both transducers, the forward-reverse product is not
// proportional to the identity and composite transducers do not close under
// chaining. The residuals are reported as measured; see the project README.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "ssepdual/checks.hpp"

using namespace ssepdual;

namespace {

struct Criterion {
  int id;
  bool pass;
  std::string text;
};

std::vector<Criterion> results;

void record(int id, bool pass, const std::string& text) {
  results.push_back({id, pass, text});
  std::printf("[%2d] %s  %s\n", id, pass ? "PASS" : "FAIL", text.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

// 1. Markov validity of the assembled generator.
void criterion_1() {
  const double tol_col = 1e-13;
  RateSampler sampler(101);
  double worst_col = 0.0, worst_neg = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto r = sampler.next();
    for (long N = 1; N <= 8; ++N) {
      const Mat<double> H = nonequilibrium_H(r, N);
      worst_col = std::max(worst_col, max_column_sum(H));
      worst_neg = std::max(worst_neg, -min_offdiagonal(H));
    }
  }
  record(1, worst_col <= tol_col && worst_neg <= 0.0,
         "generator validity - max |column sum| = " + fmt(worst_col) +
             " (tol 1e-13), worst off-diagonal negativity = " + fmt(worst_neg) +
             ", 50 rate sets, N = 1..8");
}

// 2. Ladder-matrix structure and boundary absorption relations.
void criterion_2() {
  const double tol_rel = 1e-12;
  RateSampler sampler(102);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto r = sampler.next();
    for (Direction dir : {Direction::NEtoE, Direction::EtoNE})
      worst = std::max(worst, check_rep_algebra(r, dir).residual);
  }
  record(2, worst <= tol_rel,
         "ladder algebra and boundary absorption - worst residual = " + fmt(worst) +
             " (tol 1e-12), 50 rate sets, both families");
}

// 3. Generalized exchange relations, bulk and boundary, both directions.
void criterion_3() {
  const double tol_rel = 1e-12;
  RateSampler sampler(103);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto r = sampler.next();
    for (Direction dir : {Direction::NEtoE, Direction::EtoNE}) {
      for (Variant v : {Variant::YR, Variant::YL}) {
        worst = std::max(worst, check_bulk_exchange(r, dir, v).residual);
        worst = std::max(worst, check_boundary_exchange(r, dir, v).residual);
      }
    }
  }
  record(3, worst <= tol_rel,
         "exchange relations (bulk + boundary) - worst residual = " + fmt(worst) +
             " (tol 1e-12), 50 rate sets, both directions, both variants");
}

// 4. Global intertwining in both directions.
void criterion_4() {
  const double tol_rel = 1e-9;
  RateSampler sampler(104);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto r = sampler.next();
    for (long N = 2; N <= 8; ++N)
      for (Direction dir : {Direction::NEtoE, Direction::EtoNE})
        for (Variant v : {Variant::YR, Variant::YL})
          worst = std::max(worst, check_intertwining(r, N, dir, v).residual);
  }
  record(4, worst <= tol_rel,
         "global intertwining - worst relative residual = " + fmt(worst) +
             " (tol 1e-9), 5 rate sets, N = 2..8, both directions, both variants");
}

// 5. Stability of the contracted operator under window enlargement.
void criterion_5() {
  const double tol_rel = 1e-12;
  RateSampler sampler(105);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto r = sampler.next();
    for (long N = 1; N <= 6; ++N)
      for (Variant v : {Variant::YR, Variant::YL})
        worst = std::max(worst, check_window_stability(r, N, v).residual);
  }
  record(5, worst <= tol_rel,
         "window stability (+2 rows per side) - worst relative change = " + fmt(worst) +
             " (tol 1e-12), 5 rate sets, N = 1..6");
}

// 6. Steady-state mapping through the transducer, with the scale recorded.
void criterion_6() {
  const double tol_angle = 1e-9;
  RateSampler sampler(106);
  double worst = 0.0, scale_lo = 0.0, scale_hi = 0.0;
  bool first = true;
  for (int k = 0; k < 5; ++k) {
    const auto r = sampler.next();
    for (long N = 1; N <= 6; ++N) {
      for (Variant v : {Variant::YR, Variant::YL}) {
        worst = std::max(worst, check_steady_mapping(r, N, v).residual);
        const auto dual = build_dual_rates(r, v);
        const auto mapped = map_through(build_G(r, N, v), build_bernoulli(dual.equivalent, N));
        if (first || mapped.scale < scale_lo) scale_lo = mapped.scale;
        if (first || mapped.scale > scale_hi) scale_hi = mapped.scale;
        first = false;
      }
    }
  }
  record(6, worst <= tol_angle,
         "steady-state mapping - worst angle = " + fmt(worst) +
             " (tol 1e-9), 5 rate sets, N = 1..6; fitted scale range [" + fmt(scale_lo) + ", " +
             fmt(scale_hi) + "]");
}

// 7. The derived dual rates are exactly at equilibrium; Bernoulli is null.
void criterion_7() {
  const double tol_null = 1e-12;
  RateSampler sampler(107);
  double worst_null = 0.0;
  bool all_exact = true;
  for (int k = 0; k < 50; ++k) {
    const auto r = sampler.next();
    for (Variant v : {Variant::YR, Variant::YL}) {
      const auto rq = to_rational(r);
      if (!exact_dual_equilibrium(rq, v)) all_exact = false;
      worst_null = std::max(worst_null, check_dual_equilibrium(r, 4, v).residual);
    }
  }
  record(7, all_exact && worst_null <= tol_null,
         std::string("dual equilibrium - condition exact over rationals: ") +
             (all_exact ? "yes" : "NO") + ", worst Bernoulli annihilation residual = " +
             fmt(worst_null) + " (tol 1e-12), 50 rate sets");
}

// 8. Forward-reverse product against a multiple of the identity. EXPECTED TO
// FAIL: with canonical boundary vectors on both factors the product is far
// from scalar at every size; the post-fit residual stays order one.
void criterion_8() {
  const double tol_rel = 1e-10;
  RateSampler sampler(108);
  double worst = 0.0, best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 5; ++k) {
    const auto r = sampler.next();
    for (long N = 1; N <= 6; ++N) {
      for (Variant v : {Variant::YR, Variant::YL}) {
        const double resid = check_inverse(r, N, v).residual;
        worst = std::max(worst, resid);
        best = std::min(best, resid);
      }
    }
  }
  record(8, worst <= tol_rel,
         "forward-reverse product proportional to identity - post-fit residual in [" + fmt(best) +
             ", " + fmt(worst) + "] (tol 1e-10), 5 rate sets, N = 1..6; fails with canonical " +
             "boundary vectors on both factors");
}

// 9. Closure of composite transducers under chaining. EXPECTED TO FAIL: the
// chained product differs from the direct composite by more than a scalar.
void criterion_9() {
  const double tol_rel = 1e-8;
  RateSampler sampler(109);
  double worst_fit = 0.0, best_fit = std::numeric_limits<double>::infinity();
  double worst_raw = 0.0, best_raw = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10; ++k) {
    const auto t = sampler.next_constrained_triple();
    for (long N = 1; N <= 4; ++N) {
      const auto rep = check_closure(t[0], t[1], t[2], N, Variant::YR);
      worst_fit = std::max(worst_fit, rep.residual);
      best_fit = std::min(best_fit, rep.residual);
      // Raw residual is embedded in the details; recompute for the record.
      const Mat<double> gab = contract(compose_tilde_G(t[0], t[1], N, Variant::YR));
      const Mat<double> gbc = contract(compose_tilde_G(t[1], t[2], N, Variant::YR));
      const Mat<double> gac = contract(compose_tilde_G(t[0], t[2], N, Variant::YR));
      const double raw = relative_residual(Mat<double>(gab * gbc), gac);
      worst_raw = std::max(worst_raw, raw);
      best_raw = std::min(best_raw, raw);
    }
  }
  record(9, worst_fit <= tol_rel,
         "composite closure under chaining - raw residual in [" + fmt(best_raw) + ", " +
             fmt(worst_raw) + "], scalar-fitted residual in [" + fmt(best_fit) + ", " +
             fmt(worst_fit) + "] (tol 1e-8), 10 constrained triples, N = 1..4; fails with " +
             "canonical boundary vectors");
}

// 10. Isospectrality of the driven and dual-equilibrium generators.
void criterion_10() {
  const double tol_rel = 1e-8;
  RateSampler sampler(110);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto r = sampler.next();
    for (long N = 1; N <= 6; ++N)
      for (Variant v : {Variant::YR, Variant::YL})
        worst = std::max(worst, check_spectra(r, N, v).residual);
  }
  record(10, worst <= tol_rel,
         "isospectrality - worst sorted-eigenvalue mismatch = " + fmt(worst) +
             " (tol 1e-8), 5 rate sets, N = 1..6, both variants");
}

// 11. Correlator duality under exactly one insertion convention.
void criterion_11() {
  const double tol_rel = 1e-8;
  RateSampler sampler(111);
  double worst_scaled = 0.0, best_raw = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 20; ++k) {
    const auto r = sampler.next();
    for (long N = 1; N <= 5; ++N) {
      std::vector<CorrelatorSpec> specs;
      for (long i = 1; i <= N; ++i) specs.push_back(CorrelatorSpec{{i}});
      for (long i = 1; i + 1 <= N; ++i) specs.push_back(CorrelatorSpec{{i, i + 1}});
      for (const auto& spec : specs) {
        const double direct = correlate_direct(r, N, spec);
        const double scaled =
            correlate_dual(r, N, spec, Variant::YR, XConvention::XTimesYinv);
        const double raw = correlate_dual(r, N, spec, Variant::YR, XConvention::XRaw);
        worst_scaled = std::max(worst_scaled,
                                std::abs(scaled - direct) / std::max(1.0, std::abs(direct)));
        best_raw = std::min(best_raw, std::abs(raw - direct) / std::max(1.0, std::abs(direct)));
      }
    }
  }
  const bool exactly_one = worst_scaled <= tol_rel && best_raw > tol_rel;
  record(11, exactly_one,
         "correlator duality - scaled-insertion convention: worst residual = " +
             fmt(worst_scaled) + " (tol 1e-8); raw convention best residual = " + fmt(best_raw) +
             " (never passes); recorded convention: scaled insertion; 20 rate sets, N = 1..5");
}

// 12. Exact-rational certification of criteria 2, 3, 4, 7 at N <= 3.
void criterion_12() {
  const std::vector<BoundaryRates<Rational>> tuples = {
      BoundaryRates<Rational>{Rational(13) / 10, Rational(4) / 5, Rational(9) / 20,
                              Rational(3) / 10},
      BoundaryRates<Rational>{Rational(7) / 10, Rational(19) / 10, Rational(11) / 10,
                              Rational(1) / 4},
      BoundaryRates<Rational>{Rational(11) / 5, Rational(2) / 5, Rational(3) / 20,
                              Rational(17) / 10}};
  bool all = true;
  int certified = 0;
  for (const auto& rq : tuples) {
    const BoundaryRates<double> rd{
        ScalarTraits<Rational>::to_double(rq.alpha), ScalarTraits<Rational>::to_double(rq.beta),
        ScalarTraits<Rational>::to_double(rq.gamma), ScalarTraits<Rational>::to_double(rq.delta)};
    for (Direction dir : {Direction::NEtoE, Direction::EtoNE}) {
      const bool negate = dir == Direction::EtoNE;
      const AuxWindow w = detail::pole_free_window(rd, negate, 4);
      if (!exact_rep_algebra(rq, negate, w)) all = false;
      ++certified;
      for (Variant v : {Variant::YR, Variant::YL}) {
        if (!exact_bulk_exchange(rq, dir, v, w)) all = false;
        if (!exact_boundary_exchange(rq, dir, v, w)) all = false;
        certified += 2;
        for (long N = 1; N <= 3; ++N) {
          if (!exact_intertwining(rq, N, dir, v)) all = false;
          ++certified;
        }
      }
    }
    for (Variant v : {Variant::YR, Variant::YL}) {
      if (!exact_dual_equilibrium(rq, v)) all = false;
      ++certified;
    }
  }
  record(12, all,
         "exact-rational certification - " + std::to_string(certified) +
             " identities evaluated over the rationals at N <= 3, all defects " +
             (all ? "identically zero" : "NOT all zero"));
}

}  // namespace

int main() {
  std::printf("acceptance battery: 12 criteria, pinned tolerances, fixed seeds\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  int failed = 0;
  for (const auto& c : results)
    if (!c.pass) ++failed;
  std::printf("%d/12 criteria passed", 12 - failed);
  if (failed > 0)
    std::printf(" (%d failed; criteria 8 and 9 are documented structural failures)", failed);
  std::printf("\n");
  return failed == 0 ? 0 : 1;
}
