#pragma once

#include "ptc/curve.hpp"
#include "ptc/tree.hpp"

#include <complex>
#include <map>
#include <string>
#include <variant>

namespace ptc {

// [x]_hbar = sin(pi hbar x / 2) / sin(pi hbar / 2), and [x]_0 = x. Throws PoleAtHbar at nonzero even hbar.
double quantum_number(double x, double hbar);
void check_hbar(double hbar);

// Laurent polynomial in y with half-integral exponents; q = y^(1/2) = exp(i pi hbar / 2).
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly constant(const Rational& c);
  // Quantum integer [k]: q^(k-1) + q^(k-3) + ... + q^(1-k), odd in k.
  static LaurentPoly quantum_integer(long k);

  // Coefficients keyed by the exponent of q (twice the exponent of y).
  const std::map<int, Rational>& terms() const { return terms_; }
  void add_term(int q_exponent, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool palindromic() const;
  bool integral_exponents() const;
  Rational at_one() const;
  Rational at_minus_one() const;  // requires integral exponents
  std::complex<double> evaluate(double hbar) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Rational& c, const LaurentPoly& a);
  friend LaurentPoly operator/(const LaurentPoly& a, const Rational& c);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // "y^-1 + 10 + y"; half exponents print as y^(1/2).
  std::string str() const;
  static LaurentPoly parse(const std::string& text);

 private:
  std::map<int, Rational> terms_;
};

// Numeric: double at a fixed hbar. Exact: rationals at hbar = 0. Laurent: polynomials in y.
struct WeightMode {
  enum class Kind { Numeric, Exact, Laurent };
  Kind kind = Kind::Exact;
  double hbar = 0;

  static WeightMode numeric(double h) { return {Kind::Numeric, h}; }
  static WeightMode exact() { return {Kind::Exact, 0}; }
  static WeightMode laurent() { return {Kind::Laurent, 0}; }
  std::string str() const;
};

// Coefficient of a cycle or value of a count, in one of the three modes.
class Weight {
 public:
  using Value = std::variant<double, Rational, LaurentPoly>;

  Weight() : value_(Rational(0)) {}
  explicit Weight(Value v) : value_(std::move(v)) {}
  static Weight zero(const WeightMode& mode);
  static Weight one(const WeightMode& mode);

  const Value& value() const { return value_; }
  bool is_zero() const;
  // Exact equality, relative tolerance for doubles.
  bool approx_equal(const Weight& o, double rel = 0) const;
  std::string str() const;
  double to_double() const;  // Laurent values at y = 1

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  Weight& operator*=(const Weight& o);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(Weight a, const Weight& b) { return a *= b; }
  Weight operator-() const;
  Weight scaled(int s) const;
  Weight divided(const Rational& d) const;

 private:
  Value value_;
};

// [c]_hbar of an exact cross product in the given mode. Laurent mode requires an integer.
Weight quantum_weight(const Rational& c, const WeightMode& mode);
Weight quantum_weight(double c, const WeightMode& mode);

// Product over unmarked vertices of [xi(e1) x xi(e2)] in the stored orientation.
template <class T>
Weight lie_weight(const MarkedType& t, const DeltaSet<T>& delta, const WeightMode& mode);

}  // namespace ptc
