#include "ptc/weights.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ptc {

void check_hbar(double hbar) {
  if (!std::isfinite(hbar)) throw Error(ErrorCode::InvalidArgument, "hbar must be finite");
  const double k = std::round(hbar / 2);
  if (k != 0 && std::fabs(hbar - 2 * k) < 1e-12) throw Error(ErrorCode::PoleAtHbar, "hbar = " + to_string(hbar));
}

double quantum_number(double x, double hbar) {
  check_hbar(hbar);
  if (hbar == 0) return x;
  const double half = std::numbers::pi * hbar / 2;
  return std::sin(half * x) / std::sin(half);
}

LaurentPoly LaurentPoly::constant(const Rational& c) {
  LaurentPoly p;
  p.add_term(0, c);
  return p;
}

LaurentPoly LaurentPoly::quantum_integer(long k) {
  LaurentPoly p;
  const long a = k < 0 ? -k : k;
  for (long e = a - 1; e >= 1 - a; e -= 2) p.add_term(static_cast<int>(e), Rational(1));
  return k < 0 ? -p : p;
}

void LaurentPoly::add_term(int q_exponent, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(q_exponent, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool LaurentPoly::palindromic() const {
  for (const auto& [e, c] : terms_) {
    auto it = terms_.find(-e);
    if (it == terms_.end() || it->second != c) return false;
  }
  return true;
}

bool LaurentPoly::integral_exponents() const {
  for (const auto& [e, c] : terms_)
    if (e % 2 != 0) return false;
  return true;
}

Rational LaurentPoly::at_one() const {
  Rational s(0);
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

Rational LaurentPoly::at_minus_one() const {
  if (!integral_exponents()) throw Error(ErrorCode::InvalidArgument, "half-integral exponents at y = -1");
  Rational s(0);
  for (const auto& [e, c] : terms_) s += (e / 2) % 2 == 0 ? c : Rational(-c);
  return s;
}

std::complex<double> LaurentPoly::evaluate(double hbar) const {
  std::complex<double> s(0, 0);
  for (const auto& [e, c] : terms_) s += c.convert_to<double>() * std::polar(1.0, std::numbers::pi * hbar * e / 2);
  return s;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator-(const LaurentPoly& a) {
  LaurentPoly r;
  for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [e1, c1] : a.terms_)
    for (const auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, c1 * c2);
  return r;
}

LaurentPoly operator*(const Rational& c, const LaurentPoly& a) {
  LaurentPoly r;
  for (const auto& [e, x] : a.terms_) r.add_term(e, c * x);
  return r;
}

LaurentPoly operator/(const LaurentPoly& a, const Rational& c) {
  if (c == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  LaurentPoly r;
  for (const auto& [e, x] : a.terms_) r.add_term(e, x / c);
  return r;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << to_string(mag);
      continue;
    }
    if (mag != 1) os << to_string(mag) << " ";
    os << "y";
    if (e % 2 != 0) {
      os << "^(" << e << "/2)";
    } else if (e != 2) {
      os << "^" << e / 2;
    }
  }
  return os.str();
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
  LaurentPoly p;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> void {
    throw Error(ErrorCode::ParseError, "Laurent polynomial '" + text + "': " + why);
  };
  skip();
  if (text.substr(i) == "0") return p;
  bool first = true;
  while (i < text.size()) {
    int sgn = 1;
    skip();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      sgn = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Rational coef(1);
    size_t j = i;
    const size_t start = i;
    while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/' || text[j] == '.')) ++j;
    if (j > i) {
      coef = parse_rational(text.substr(i, j - i));
      i = j;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    int exponent = 0;
    if (i < text.size() && text[i] == 'y') {
      ++i;
      exponent = 2;
      if (i < text.size() && text[i] == '^') {
        ++i;
        bool paren = i < text.size() && text[i] == '(';
        if (paren) ++i;
        size_t k = i;
        if (k < text.size() && text[k] == '-') ++k;
        while (k < text.size() && (std::isdigit(static_cast<unsigned char>(text[k])) || text[k] == '/')) ++k;
        if (k == i) fail("missing exponent");
        Rational ex = parse_rational(text.substr(i, k - i));
        i = k;
        if (paren) {
          if (i >= text.size() || text[i] != ')') fail("missing )");
          ++i;
        }
        Rational twice = ex * 2;
        if (!is_integer(twice)) fail("exponent must be a multiple of 1/2");
        exponent = twice.convert_to<int>();
      }
    } else if (j == start) {
      fail("expected a term");
    }
    p.add_term(exponent, sgn < 0 ? Rational(-coef) : coef);
    skip();
  }
  return p;
}

std::string WeightMode::str() const {
  switch (kind) {
    case Kind::Numeric:
      return "hbar=" + to_string(hbar);
    case Kind::Exact:
      return "exact";
    case Kind::Laurent:
      return "laurent";
  }
  return "";
}

Weight Weight::zero(const WeightMode& mode) {
  switch (mode.kind) {
    case WeightMode::Kind::Numeric:
      return Weight(0.0);
    case WeightMode::Kind::Exact:
      return Weight(Rational(0));
    case WeightMode::Kind::Laurent:
      return Weight(LaurentPoly());
  }
  return Weight();
}

Weight Weight::one(const WeightMode& mode) {
  switch (mode.kind) {
    case WeightMode::Kind::Numeric:
      return Weight(1.0);
    case WeightMode::Kind::Exact:
      return Weight(Rational(1));
    case WeightMode::Kind::Laurent:
      return Weight(LaurentPoly::constant(1));
  }
  return Weight();
}

bool Weight::is_zero() const {
  return std::visit(
      [](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LaurentPoly>) {
          return v.is_zero();
        } else {
          return v == 0;
        }
      },
      value_);
}

double Weight::to_double() const {
  return std::visit(
      [](const auto& v) -> double {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LaurentPoly>) {
          return v.at_one().template convert_to<double>();
        } else if constexpr (std::is_same_v<V, Rational>) {
          return v.template convert_to<double>();
        } else {
          return v;
        }
      },
      value_);
}

std::string Weight::str() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LaurentPoly>) {
          return v.str();
        } else {
          return to_string(v);
        }
      },
      value_);
}

namespace {

// Brings both operands to a common kind: Rational joins either side.
void unify(Weight::Value& a, Weight::Value& b) {
  if (a.index() == b.index()) return;
  auto lift = [](Weight::Value& x, size_t target) {
    const Rational& q = std::get<Rational>(x);
    if (target == 0) {
      x = q.convert_to<double>();
    } else {
      x = LaurentPoly::constant(q);
    }
  };
  if (std::holds_alternative<Rational>(a)) {
    lift(a, b.index());
  } else if (std::holds_alternative<Rational>(b)) {
    lift(b, a.index());
  } else {
    throw Error(ErrorCode::InvalidArgument, "cannot mix numeric and Laurent weights");
  }
}

}  // namespace

bool Weight::approx_equal(const Weight& o, double rel) const {
  Value a = value_, b = o.value_;
  unify(a, b);
  if (auto* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    const double tol = rel > 0 ? rel : tolerance();
    return std::fabs(*x - y) <= tol * std::max({1.0, std::fabs(*x), std::fabs(y)});
  }
  return a == b;
}

Weight& Weight::operator+=(const Weight& o) {
  Value b = o.value_;
  unify(value_, b);
  std::visit([&](auto& x) { x += std::get<std::decay_t<decltype(x)>>(b); }, value_);
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  Value b = o.value_;
  unify(value_, b);
  std::visit([&](auto& x) { x -= std::get<std::decay_t<decltype(x)>>(b); }, value_);
  return *this;
}

Weight& Weight::operator*=(const Weight& o) {
  Value b = o.value_;
  unify(value_, b);
  std::visit([&](auto& x) { x = x * std::get<std::decay_t<decltype(x)>>(b); }, value_);
  return *this;
}

Weight Weight::operator-() const {
  return std::visit([](const auto& x) { return Weight(Value(-x)); }, value_);
}

Weight Weight::scaled(int s) const {
  return std::visit(
      [s](const auto& x) {
        using V = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<V, double>) {
          return Weight(Value(x * s));
        } else if constexpr (std::is_same_v<V, Rational>) {
          return Weight(Value(Rational(x * s)));
        } else {
          return Weight(Value(Rational(s) * x));
        }
      },
      value_);
}

Weight Weight::divided(const Rational& d) const {
  return std::visit(
      [&d](const auto& x) {
        using V = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<V, double>) {
          return Weight(Value(x / d.convert_to<double>()));
        } else {
          return Weight(Value(V(x / d)));
        }
      },
      value_);
}

Weight quantum_weight(const Rational& c, const WeightMode& mode) {
  switch (mode.kind) {
    case WeightMode::Kind::Numeric:
      return Weight(quantum_number(c.convert_to<double>(), mode.hbar));
    case WeightMode::Kind::Exact:
      return Weight(c);
    case WeightMode::Kind::Laurent:
      if (!is_integer(c)) throw Error(ErrorCode::NonIntegralCross, "cross product " + to_string(c) + " is not an integer");
      return Weight(LaurentPoly::quantum_integer(c.convert_to<long>()));
  }
  return Weight();
}

Weight quantum_weight(double c, const WeightMode& mode) {
  switch (mode.kind) {
    case WeightMode::Kind::Numeric:
      return Weight(quantum_number(c, mode.hbar));
    case WeightMode::Kind::Exact:
      return Weight(c);
    case WeightMode::Kind::Laurent: {
      const double r = std::round(c);
      if (!is_zero(c - r, c)) throw Error(ErrorCode::NonIntegralCross, "cross product " + to_string(c) + " is not an integer");
      return Weight(LaurentPoly::quantum_integer(static_cast<long>(r)));
    }
  }
  return Weight();
}

template <class T>
Weight lie_weight(const MarkedType& t, const DeltaSet<T>& delta, const WeightMode& mode) {
  auto s = analyze(t);
  if (delta.size() != t.n) throw Error(ErrorCode::InvalidArgument, "delta size differs from leg count");
  auto sums = subset_sums(delta);
  const int L = t.leaves();
  Weight w = Weight::one(mode);
  for (int v : s.unmarked) {
    const int o = s.out_slot[v - L];
    const auto& side = s.side[v - L];
    const T c = cross(sums[side[(o + 1) % 3] & s.unmarked_mask], sums[side[(o + 2) % 3] & s.unmarked_mask]);
    w *= quantum_weight(c, mode);
  }
  return w;
}

template Weight lie_weight<Rational>(const MarkedType&, const DeltaSet<Rational>&, const WeightMode&);
template Weight lie_weight<double>(const MarkedType&, const DeltaSet<double>&, const WeightMode&);

}  // namespace ptc
