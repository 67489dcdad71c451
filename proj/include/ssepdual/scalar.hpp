#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <ostream>

#include <Eigen/Core>

namespace ssepdual {

/// Exact scalar for zero-tolerance certification runs at small N.
///
/// Thin value wrapper around an arbitrary-precision rational. The wrapper
/// exists so that only these exact-match operators participate in overload
/// resolution inside Eigen expressions; the underlying library's generic
/// operator templates would otherwise be pulled in by ADL and probe traits
/// that do not instantiate cleanly against Eigen expression types.
class Rational {
 public:
  using rep_t = boost::multiprecision::cpp_rational;

  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(n) {}
  Rational(long long n) : v_(n) {}
  explicit Rational(double d) : v_(d) {}  // exact: doubles are dyadic rationals
  explicit Rational(const rep_t& v) : v_(v) {}

  const rep_t& rep() const { return v_; }
  double to_double() const { return v_.template convert_to<double>(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(a.v_ / b.v_); }
  Rational operator-() const { return Rational(-v_); }
  const Rational& operator+() const { return *this; }

  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    v_ /= o.v_;
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend Rational abs(const Rational& x) { return x.v_ < 0 ? Rational(-x.v_) : x; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.v_; }

 private:
  rep_t v_;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool is_exact = false;
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::fabs(x); }
  static double from_fraction(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static double to_double(const Rational& x) { return x.to_double(); }
  static Rational abs(const Rational& x) { return x < Rational(0) ? -x : x; }
  static Rational from_fraction(long num, long den) {
    return Rational(Rational::rep_t(num) / Rational::rep_t(den));
  }
};

/// Pinned tolerances. Residuals are relative unless stated otherwise.
namespace tol {
inline constexpr double generator_column_sum = 1e-13;  // absolute
inline constexpr double rep_relation = 1e-12;
inline constexpr double exchange_relation = 1e-12;
inline constexpr double intertwining = 1e-9;
inline constexpr double window_stability = 1e-12;
inline constexpr double steady_angle = 1e-9;
inline constexpr double bernoulli_null = 1e-12;
inline constexpr double inverse_fit = 1e-10;
inline constexpr double closure = 1e-8;
inline constexpr double spectra = 1e-8;
inline constexpr double correlator = 1e-8;
inline constexpr double default_relation = 1e-10;
inline constexpr double float_zero = 1e-9;  // detects a vanishing ladder entry in float mode
}  // namespace tol

}  // namespace ssepdual

namespace Eigen {

template <>
struct NumTraits<ssepdual::Rational> {
  using Real = ssepdual::Rational;
  using NonInteger = ssepdual::Rational;
  using Literal = ssepdual::Rational;
  using Nested = ssepdual::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 30
  };
  static ssepdual::Rational epsilon() { return ssepdual::Rational(0); }
  static ssepdual::Rational dummy_precision() { return ssepdual::Rational(0); }
  static ssepdual::Rational highest() { return ssepdual::Rational(0); }
  static ssepdual::Rational lowest() { return ssepdual::Rational(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
