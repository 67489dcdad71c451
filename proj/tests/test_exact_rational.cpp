#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ssepdual/checks.hpp"

using namespace ssepdual;

namespace {

BoundaryRates<Rational> rational_rates() {
  // 13/10, 4/5, 9/20, 3/10: generic driven tuple with non-integral index sum.
  return BoundaryRates<Rational>{Rational(13) / 10, Rational(4) / 5, Rational(9) / 20,
                                 Rational(3) / 10};
}

BoundaryRates<Rational> rational_rates_2() {
  return BoundaryRates<Rational>{Rational(7) / 10, Rational(19) / 10, Rational(11) / 10,
                                 Rational(1) / 4};
}

BoundaryRates<double> to_double_rates(const BoundaryRates<Rational>& r) {
  return BoundaryRates<double>{ScalarTraits<Rational>::to_double(r.alpha),
                               ScalarTraits<Rational>::to_double(r.beta),
                               ScalarTraits<Rational>::to_double(r.gamma),
                               ScalarTraits<Rational>::to_double(r.delta)};
}

}  // namespace

TEST_CASE("rational arithmetic keeps exact fractions") {
  const Rational x = Rational(1) / 3;
  CHECK(x + x + x == Rational(1));
  CHECK(ScalarTraits<Rational>::is_exact);
  CHECK(!ScalarTraits<double>::is_exact);
}

TEST_CASE("kron is associative over the rationals") {
  Mat<Rational> a(2, 2), b(2, 2), c(2, 2);
  a << Rational(1) / 3, Rational(2), Rational(0), Rational(5) / 7;
  b << Rational(1), Rational(1) / 2, Rational(3), Rational(0);
  c << Rational(2) / 9, Rational(1), Rational(0), Rational(4);
  CHECK(is_exactly_zero(Mat<Rational>(kron(kron(a, b), c) - kron(a, kron(b, c)))));
}

TEST_CASE("structure relations vanish identically over the rationals") {
  for (const auto& rq : {rational_rates(), rational_rates_2()}) {
    const AuxWindow w = detail::pole_free_window(to_double_rates(rq), false, 4);
    CHECK(exact_rep_algebra(rq, false, w));
    const AuxWindow wr = detail::pole_free_window(to_double_rates(rq), true, 4);
    CHECK(exact_rep_algebra(rq, true, wr));
  }
}

TEST_CASE("bulk exchange relation vanishes identically over the rationals") {
  for (const auto& rq : {rational_rates(), rational_rates_2()}) {
    for (Direction dir : {Direction::NEtoE, Direction::EtoNE}) {
      const bool negate = dir == Direction::EtoNE;
      const AuxWindow w = detail::pole_free_window(to_double_rates(rq), negate, 4);
      for (Variant v : {Variant::YR, Variant::YL}) CHECK(exact_bulk_exchange(rq, dir, v, w));
    }
  }
}

TEST_CASE("boundary exchange relation vanishes identically over the rationals") {
  for (const auto& rq : {rational_rates(), rational_rates_2()}) {
    for (Direction dir : {Direction::NEtoE, Direction::EtoNE}) {
      const bool negate = dir == Direction::EtoNE;
      const AuxWindow w = detail::pole_free_window(to_double_rates(rq), negate, 4);
      for (Variant v : {Variant::YR, Variant::YL}) CHECK(exact_boundary_exchange(rq, dir, v, w));
    }
  }
}

TEST_CASE("global intertwining vanishes identically over the rationals") {
  const auto rq = rational_rates();
  for (long N = 1; N <= 3; ++N) {
    for (Direction dir : {Direction::NEtoE, Direction::EtoNE}) {
      for (Variant v : {Variant::YR, Variant::YL}) {
        CHECK_MESSAGE(exact_intertwining(rq, N, dir, v), "N=", N, " dir=", to_string(dir),
                      " variant=", to_string(v));
      }
    }
  }
}

TEST_CASE("dual rate tuples are exactly at equilibrium over the rationals") {
  for (const auto& rq : {rational_rates(), rational_rates_2()}) {
    for (Variant v : {Variant::YR, Variant::YL}) CHECK(exact_dual_equilibrium(rq, v));
  }
}

TEST_CASE("exact mode certifies a second tuple end to end at one size") {
  const auto rq = rational_rates_2();
  CHECK(exact_intertwining(rq, 2, Direction::NEtoE, Variant::YR));
  CHECK(exact_intertwining(rq, 2, Direction::EtoNE, Variant::YL));
}
