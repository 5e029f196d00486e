#pragma once

#include "ptc/scalar.hpp"

#include <ostream>

namespace ptc {

template <class T>
struct Vec2 {
  T x{0};
  T y{0};

  Vec2() = default;
  Vec2(T x_, T y_) : x(std::move(x_)), y(std::move(y_)) {}

  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend Vec2 operator-(const Vec2& a) { return Vec2(-a.x, -a.y); }
  friend Vec2 operator*(const T& s, const Vec2& a) { return Vec2(s * a.x, s * a.y); }
  friend Vec2 operator*(const Vec2& a, const T& s) { return Vec2(a.x * s, a.y * s); }
  friend Vec2 operator/(const Vec2& a, const T& s) { return Vec2(a.x / s, a.y / s); }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Vec2& a) {
    return os << '(' << a.x << ", " << a.y << ')';
  }
};

template <class T>
T cross(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.y - a.y * b.x;
}

template <class T>
T dot(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.x + a.y * b.y;
}

// Rotation by 90 degrees counterclockwise (multiplication by i).
template <class T>
Vec2<T> rot90(const Vec2<T>& a) {
  return Vec2<T>(-a.y, a.x);
}

template <class T>
bool is_zero(const Vec2<T>& a) {
  if constexpr (is_exact_v<T>) {
    return a.x == 0 && a.y == 0;
  } else {
    return is_zero(a.x) && is_zero(a.y);
  }
}

template <class T>
bool approx_equal(const Vec2<T>& a, const Vec2<T>& b) {
  return approx_equal(a.x, b.x) && approx_equal(a.y, b.y);
}

template <class T>
double norm(const Vec2<T>& a) {
  double x = to_double(a.x), y = to_double(a.y);
  return std::hypot(x, y);
}

// Sign of cross(a, b) with a zero band proportional to |a||b| in float mode.
template <class T>
int cross_sign(const Vec2<T>& a, const Vec2<T>& b) {
  if constexpr (is_exact_v<T>) {
    return sign(cross(a, b));
  } else {
    return sign(cross(a, b), norm(a) * norm(b));
  }
}

// Upper half plane (including the positive x axis) sorts first.
template <class T>
int half_plane(const Vec2<T>& a) {
  if (a.y > 0 || (a.y == 0 && a.x > 0)) return 0;
  return 1;
}

// Strict weak order by polar angle in [0, 2pi); vectors must be nonzero.
template <class T>
bool angle_less(const Vec2<T>& a, const Vec2<T>& b) {
  int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

template <class T>
Vec2<T> convert_vec(const Vec2<Rational>& a) {
  return Vec2<T>(ScalarTraits<T>::from_rational(a.x), ScalarTraits<T>::from_rational(a.y));
}

}  // namespace ptc
