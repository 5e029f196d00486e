#pragma once

#include "ptc/scalar.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ptc {

template <class T>
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c), T(0)) {}

  T& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
};

// Exact: rows scaled to integers, then fraction-free (Bareiss) elimination.
Rational determinant(const Matrix<Rational>& a);
// Float: partial pivoting LU.
double determinant(const Matrix<double>& a);

// Bareiss on a row-major n x n integer matrix; nullopt if an intermediate overflows 64 bits.
std::optional<std::int64_t> determinant_i64(const std::int64_t* a, int n);

// Solves A X = B for square nonsingular A. Returns nullopt when A is singular.
std::optional<Matrix<Rational>> solve(const Matrix<Rational>& a, const Matrix<Rational>& b);
std::optional<Matrix<double>> solve(const Matrix<double>& a, const Matrix<double>& b);

// Rank over the rationals.
int rank(Matrix<Rational> a);
// Numerical rank with the global relative tolerance.
int rank(const Matrix<double>& a);

}  // namespace ptc
