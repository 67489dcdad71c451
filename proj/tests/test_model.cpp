#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ssepdual/rates.hpp"
#include "ssepdual/ssep.hpp"

using namespace ssepdual;

TEST_CASE("bulk hop generator exchanges the two mixed configurations") {
  const Mat<double> h = build_bulk_h<double>();
  CHECK(h(1, 1) == -1.0);
  CHECK(h(2, 2) == -1.0);
  CHECK(h(1, 2) == 1.0);
  CHECK(h(2, 1) == 1.0);
  CHECK(h(0, 0) == 0.0);
  CHECK(h(3, 3) == 0.0);
  for (int j = 0; j < 4; ++j) {
    double col = 0;
    for (int i = 0; i < 4; ++i) col += h(i, j);
    CHECK(col == 0.0);
  }
  CHECK(frobenius_residual(h, Mat<double>(h.transpose())) == 0.0);
}

TEST_CASE("left boundary generator injects and ejects at the given rates") {
  BoundaryRates<double> r{1.0, 0.7, 0.0, 0.2};
  const Mat<double> b = build_boundary(Side::Left, r);
  CHECK(b(0, 0) == -1.0);  // leaves empty at rate alpha
  CHECK(b(1, 0) == 1.0);
  CHECK(b(0, 1) == 0.0);  // gamma = 0: no ejection
  CHECK(b(1, 1) == 0.0);
}

TEST_CASE("right boundary generator ejects at beta and injects at delta") {
  BoundaryRates<double> r{0.5, 1.0, 0.3, 0.0};
  const Mat<double> b = build_boundary(Side::Right, r);
  CHECK(b(0, 1) == 1.0);   // occupied empties at rate beta
  CHECK(b(1, 1) == -1.0);
  CHECK(b(0, 0) == 0.0);   // delta = 0: no injection
  CHECK(b(1, 0) == 0.0);
}

TEST_CASE("single-site driven generator combines the two reservoirs") {
  BoundaryRates<double> r{1.0, 1.0, 0.0, 0.0};
  const Mat<double> H = nonequilibrium_H(r, 1);
  Mat<double> expect(2, 2);
  expect << -1, 1, 1, -1;
  CHECK(frobenius_residual(H, expect) == 0.0);
}

TEST_CASE("driven generator is a valid Markov generator for sampled rates") {
  RateSampler sampler(321);
  for (int k = 0; k < 50; ++k) {
    const auto r = sampler.next();
    for (long N = 1; N <= 4; ++N) {
      const Mat<double> H = nonequilibrium_H(r, N);
      CHECK(max_column_sum(H) <= 1e-13);
      CHECK(min_offdiagonal(H) >= 0.0);
    }
  }
}

TEST_CASE("generator assembly is linear in the left boundary block") {
  BoundaryRates<double> r{1.3, 0.8, 0.45, 0.3};
  const Mat<double> bl = build_boundary(Side::Left, r);
  const Mat<double> br = build_boundary(Side::Right, r);
  const Mat<double> h1 = assemble_from_parts(3, bl, br);
  const Mat<double> h2 = assemble_from_parts(3, Mat<double>(2.0 * bl), br);
  const Mat<double> diff = h2 - h1;
  const Mat<double> expect = embed_local(bl, 1, 1, 3);
  CHECK(frobenius_residual(diff, expect) < 1e-14);
}

TEST_CASE("dual boundary rates at equal reservoir strength reuse the right reservoir") {
  // With alpha+gamma = beta+delta the scale factor is 1 and both dual blocks
  // coincide with the physical right-boundary generator.
  BoundaryRates<double> r{1.0, 1.0, 0.0, 0.0};
  const auto dual = build_dual_rates(r, Variant::YR);
  CHECK(dual.r == 1.0);
  Mat<double> expect(2, 2);
  expect << 0, 1, 0, -1;
  CHECK(frobenius_residual(dual.B_L, expect) == 0.0);
  CHECK(frobenius_residual(dual.B_R, expect) == 0.0);
}

TEST_CASE("right-anchored dual blocks differ by the reservoir ratio") {
  BoundaryRates<double> r{1.3, 0.8, 0.45, 0.3};
  const auto dual = build_dual_rates(r, Variant::YR);
  const double ratio = (r.alpha + r.gamma) / (r.beta + r.delta);
  CHECK(dual.r == doctest::Approx(ratio));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(dual.B_L(i, j) == doctest::Approx(ratio * dual.B_R(i, j)));
}

TEST_CASE("left-anchored dual blocks reuse the left reservoir scaled down") {
  BoundaryRates<double> r{2.0, 1.0, 0.0, 1.0};
  const auto dual = build_dual_rates(r, Variant::YL);
  const Mat<double> al = left_generator(r.alpha, r.gamma);
  CHECK(frobenius_residual(dual.B_L, al) == 0.0);
  Mat<double> expect(2, 2);
  expect << -2, 0, 2, 0;  // (1/r) * left generator with r = 1
  CHECK(frobenius_residual(dual.B_R, expect) < 1e-15);
}

TEST_CASE("dual rate tuples satisfy the equilibrium condition") {
  RateSampler sampler(99);
  for (int k = 0; k < 25; ++k) {
    const auto r = sampler.next();
    for (Variant v : {Variant::YR, Variant::YL}) {
      const auto dual = build_dual_rates(r, v);
      CHECK(std::abs(dual.equivalent.mu()) < 1e-13);
      CHECK(is_equilibrium(dual.equivalent));
      // The dual tuple preserves both boundary sums.
      CHECK(dual.equivalent.left_sum() == doctest::Approx(r.left_sum()));
      CHECK(dual.equivalent.right_sum() == doctest::Approx(r.right_sum()));
    }
  }
}

TEST_CASE("equilibrium detection distinguishes driven from undriven tuples") {
  CHECK(is_equilibrium(BoundaryRates<double>{1.0, 1.0, 1.0, 1.0}));
  CHECK(is_equilibrium(BoundaryRates<double>{0.5, 0.8, 2.0, 0.2}));
  CHECK(!is_equilibrium(BoundaryRates<double>{1.0, 1.0, 0.0, 0.0}));
}

TEST_CASE("dual-equilibrium generator with absorbing reservoirs fixes the empty chain") {
  // The dual of (1,1,0,0) has zero injection at both reservoirs, so the
  // all-empty configuration is absorbing: its column vanishes entirely.
  BoundaryRates<double> r{1.0, 1.0, 0.0, 0.0};
  const Mat<double> H = equilibrium_H(r, 2, Variant::YR);
  CHECK(max_column_sum(H) <= 1e-13);
  for (int i = 0; i < 4; ++i) CHECK(H(i, 0) == 0.0);
}

TEST_CASE("rate sampler avoids equilibrium and integral-sum tuples") {
  RateSampler sampler(7);
  for (int k = 0; k < 50; ++k) {
    const auto r = sampler.next();
    CHECK(r.alpha > 0.0);
    CHECK(r.beta > 0.0);
    CHECK(r.gamma > 0.0);
    CHECK(r.delta > 0.0);
    CHECK(std::abs(r.mu()) >= 0.045);
    const auto atoms = RateAtoms<double>::from(r, false);
    CHECK(std::abs(atoms.s - std::round(atoms.s)) >= 0.045);
  }
}

TEST_CASE("constrained triples share boundary sums pairwise") {
  RateSampler sampler(11);
  const auto t = sampler.next_constrained_triple();
  for (int i = 1; i < 3; ++i) {
    CHECK(t[static_cast<std::size_t>(i)].left_sum() == doctest::Approx(t[0].left_sum()));
    CHECK(t[static_cast<std::size_t>(i)].right_sum() == doctest::Approx(t[0].right_sum()));
  }
}

TEST_CASE("rate validation rejects negative and degenerate tuples") {
  CHECK_THROWS_AS(BoundaryRates<double>({-0.1, 1.0, 0.5, 0.5}).validate(), ConfigError);
  CHECK_THROWS_AS(BoundaryRates<double>({0.0, 1.0, 0.0, 0.5}).validate(), ConfigError);
}
