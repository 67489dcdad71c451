#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ssepdual/dense.hpp"
#include "ssepdual/rates.hpp"
#include "ssepdual/site_tensor.hpp"
#include "ssepdual/ssep.hpp"

using namespace ssepdual;

TEST_CASE("kron of identities is the identity") {
  const Mat<double> i2 = identity<double>(2);
  const Mat<double> k = kron(i2, i2);
  CHECK(k.rows() == 4);
  CHECK(k.cols() == 4);
  CHECK(frobenius_residual(k, identity<double>(4)) == doctest::Approx(0.0));
}

TEST_CASE("kron of diagonal matrices multiplies the diagonals") {
  Mat<double> a(2, 2), b(2, 2);
  a << 2, 0, 0, 3;
  b << 5, 0, 0, 7;
  const Mat<double> k = kron(a, b);
  CHECK(k(0, 0) == 10.0);
  CHECK(k(1, 1) == 14.0);
  CHECK(k(2, 2) == 15.0);
  CHECK(k(3, 3) == 21.0);
  CHECK(k(0, 1) == 0.0);
  CHECK(k(3, 0) == 0.0);
}

TEST_CASE("kron places the right factor inside blocks of the left factor") {
  Mat<double> x(2, 2), m(2, 2);
  x << 0, 1, 1, 0;
  m << 1, 2, 3, 4;
  const Mat<double> k = kron(x, m);
  CHECK(k(0, 2) == 1.0);
  CHECK(k(0, 3) == 2.0);
  CHECK(k(1, 2) == 3.0);
  CHECK(k(1, 3) == 4.0);
  CHECK(k(2, 0) == 1.0);
  CHECK(k(0, 0) == 0.0);
}

TEST_CASE("kron is associative") {
  Mat<double> a(2, 2), b(2, 2), c(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 1;
  c << 2, 0, 5, 1;
  const Mat<double> left = kron(kron(a, b), c);
  const Mat<double> right = kron(a, kron(b, c));
  CHECK(frobenius_residual(left, right) == doctest::Approx(0.0));
}

TEST_CASE("embedding with identity factors matches explicit kron") {
  Mat<double> a(2, 2);
  a << -1.0, 0.5, 1.0, -0.5;
  const Mat<double> e = embed_local(a, 2, 1, 3);
  const Mat<double> expect = kron(identity<double>(2), kron(a, identity<double>(2)));
  CHECK(frobenius_residual(e, expect) == doctest::Approx(0.0));
}

TEST_CASE("embedding a two-site operator over the whole chain is the operator itself") {
  const Mat<double> h = build_bulk_h<double>();
  const Mat<double> e = embed_local(h, 1, 2, 2);
  CHECK(frobenius_residual(e, h) == doctest::Approx(0.0));
}

TEST_CASE("embedding rejects out-of-range placements") {
  Mat<double> a(2, 2);
  a << 1, 0, 0, 1;
  CHECK_THROWS_AS(embed_local(a, 0, 1, 3), IndexError);
  CHECK_THROWS_AS(embed_local(a, 3, 2, 3), IndexError);
  Mat<double> bad(2, 3);
  bad.setZero();
  CHECK_THROWS_AS(embed_local(bad, 1, 1, 3), ShapeError);
}

TEST_CASE("null space of the zero matrix is the full space") {
  Mat<double> z = Mat<double>::Zero(3, 3);
  CHECK(null_space(z).size() == 3);
}

TEST_CASE("null space of the identity is empty") {
  CHECK(null_space(identity<double>(4)).empty());
}

TEST_CASE("null space of a single-site symmetric hop generator is the uniform vector") {
  Mat<double> H(2, 2);
  H << -1, 1, 1, -1;
  const auto ns = null_space(H);
  REQUIRE(ns.size() == 1);
  CHECK(std::abs(ns[0](0) - ns[0](1)) < 1e-12);
  CHECK(std::abs(std::abs(ns[0](0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("residual norms behave as advertised") {
  Mat<double> a(2, 2), z(2, 2);
  a << 3, 4, 0, 0;
  z.setZero();
  CHECK(frobenius_residual(a, a) == 0.0);
  CHECK(frobenius_residual(a, z) == doctest::Approx(1.0));
  CHECK(relative_residual(a, z) == doctest::Approx(1.0));
  Mat<double> tiny(2, 2);
  tiny << 0.1, 0, 0, 0;
  // Denominator saturates at 1 for small matrices.
  CHECK(frobenius_residual(tiny, z) == doctest::Approx(0.1));
  CHECK(max_abs(a) == 4.0);
}

TEST_CASE("exact zero detection over doubles requires literal zeros") {
  Mat<double> a(2, 2);
  a.setZero();
  CHECK(is_exactly_zero(a));
  a(1, 0) = 1e-300;
  CHECK(!is_exactly_zero(a));
}
