#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <string>
#include <string_view>

namespace ptc {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

// Relative tolerance used by every float-mode comparison.
double tolerance();
void set_tolerance(double tol);

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(double x);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& a) { return a.convert_to<double>(); }
  static Rational from_rational(const Rational& a) { return a; }
  static Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double to_double(double a) { return a; }
  static double from_rational(const Rational& a) { return a.convert_to<double>(); }
  static double abs(double a) { return std::fabs(a); }
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

inline bool is_zero(const Rational& a) { return a == 0; }
inline bool is_zero(double a, double scale = 1.0) {
  return std::fabs(a) <= tolerance() * std::max(1.0, std::fabs(scale));
}

inline bool approx_equal(const Rational& a, const Rational& b) { return a == b; }
inline bool approx_equal(double a, double b) {
  return std::fabs(a - b) <= tolerance() * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline int sign(const Rational& a) { return a.sign(); }
// Sign with zero band relative to `scale`.
inline int sign(double a, double scale = 1.0) {
  if (is_zero(a, scale)) return 0;
  return a > 0 ? 1 : -1;
}

// Zero test: exact in exact mode, relative to `scale` in float mode.
template <class T>
bool negligible(const T& a, double scale = 1.0) {
  if constexpr (is_exact_v<T>) {
    return a == 0;
  } else {
    return is_zero(a, scale);
  }
}

template <class T>
double to_double(const T& a) {
  return ScalarTraits<T>::to_double(a);
}

bool is_integer(const Rational& a);

}  // namespace ptc
