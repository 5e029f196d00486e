#include "ptc/scalar.hpp"

#include "ptc/error.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace ptc {

namespace {
std::atomic<double> g_tolerance{1e-9};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer pow10(long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}
}  // namespace

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  g_tolerance.store(tol, std::memory_order_relaxed);
}

namespace {

// GMP would read a leading zero as an octal prefix.
Integer decimal_integer(std::string_view digits) {
  digits.remove_prefix(std::min(digits.find_first_not_of('0'), digits.size() - 1));
  return Integer(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&] { return Error(ErrorCode::ParseError, "not a rational number: '" + std::string(text) + "'"); };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw fail();

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw fail();
    Integer d = decimal_integer(den);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    value = Rational(decimal_integer(num), d);
  } else {
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = body.substr(e + 1);
      if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
      if (ec != std::errc() || ptr != exp_text.data() + exp_text.size()) throw fail();
      body = body.substr(0, e);
    }
    std::string digits;
    auto dot = body.find('.');
    auto int_part = body.substr(0, dot);
    auto frac_part = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw fail();
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
      throw fail();
    digits.append(int_part);
    digits.append(frac_part);
    exponent -= static_cast<long>(frac_part.size());
    Integer mantissa = decimal_integer(digits);
    if (std::labs(exponent) > 10000) throw fail();
    if (exponent >= 0)
      value = Rational(mantissa * pow10(exponent));
    else
      value = Rational(mantissa, pow10(-exponent));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_integer(const Rational& a) { return denominator(a) == 1; }

}  // namespace ptc
