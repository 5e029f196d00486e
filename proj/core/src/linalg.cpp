#include "ptc/linalg.hpp"

#include <Eigen/Dense>

#include <utility>

namespace ptc {

namespace {

// Multiplies each row by the lcm of its denominators.
std::vector<Integer> integer_rows(const Matrix<Rational>& a, Rational& scale) {
  std::vector<Integer> out(a.data.size());
  scale = 1;
  for (int i = 0; i < a.rows; ++i) {
    Integer l = 1;
    for (int j = 0; j < a.cols; ++j) l = boost::multiprecision::lcm(l, denominator(a(i, j)));
    for (int j = 0; j < a.cols; ++j) {
      const Rational& q = a(i, j);
      out[static_cast<size_t>(i) * a.cols + j] = numerator(q) * (l / denominator(q));
    }
    scale *= l;
  }
  return out;
}

// Fraction-free forward elimination on the first `pivot_cols` columns.
// Returns the number of row swaps, or -1 if a pivot column is all zero.
int bareiss(std::vector<Integer>& m, int rows, int cols, int pivot_cols) {
  auto at = [&](int i, int j) -> Integer& { return m[static_cast<size_t>(i) * cols + j]; };
  Integer prev = 1;
  int swaps = 0;
  for (int k = 0; k < pivot_cols; ++k) {
    int p = k;
    while (p < rows && at(p, k) == 0) ++p;
    if (p == rows) return -1;
    if (p != k) {
      for (int j = 0; j < cols; ++j) std::swap(at(p, j), at(k, j));
      ++swaps;
    }
    for (int i = k + 1; i < rows; ++i) {
      for (int j = k + 1; j < cols; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return swaps;
}

}  // namespace

Rational determinant(const Matrix<Rational>& a) {
  if (a.rows != a.cols) throw std::invalid_argument("determinant of a non-square matrix");
  if (a.rows == 0) return Rational(1);
  Rational scale;
  auto m = integer_rows(a, scale);
  int swaps = bareiss(m, a.rows, a.cols, a.cols);
  if (swaps < 0) return Rational(0);
  Rational det(m.back());
  if (swaps % 2) det = -det;
  return det / scale;
}

double determinant(const Matrix<double>& a) {
  if (a.rows != a.cols) throw std::invalid_argument("determinant of a non-square matrix");
  if (a.rows == 0) return 1.0;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(a.data.data(), a.rows,
                                                                                             a.cols);
  return m.partialPivLu().determinant();
}

std::optional<std::int64_t> determinant_i64(const std::int64_t* src, int n) {
  if (n == 0) return 1;
  std::int64_t m[32 * 32];
  if (n > 32) return std::nullopt;
  for (int i = 0; i < n * n; ++i) m[i] = src[i];
  std::int64_t prev = 1;
  bool negate = false;
  for (int k = 0; k < n; ++k) {
    int p = k;
    while (p < n && m[p * n + k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (int j = k; j < n; ++j) std::swap(m[p * n + j], m[k * n + j]);
      negate = !negate;
    }
    const std::int64_t pivot = m[k * n + k];
    for (int i = k + 1; i < n; ++i) {
      const std::int64_t lead = m[i * n + k];
      for (int j = k + 1; j < n; ++j) {
        std::int64_t x, y, z;
        if (__builtin_mul_overflow(m[i * n + j], pivot, &x) || __builtin_mul_overflow(lead, m[k * n + j], &y) ||
            __builtin_sub_overflow(x, y, &z))
          return std::nullopt;
        m[i * n + j] = prev == 1 ? z : z / prev;
      }
    }
    prev = pivot;
  }
  std::int64_t det = m[n * n - 1];
  return negate ? -det : det;
}

std::optional<Matrix<Rational>> solve(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  const int n = a.rows;
  if (a.cols != n || b.rows != n) throw std::invalid_argument("solve: shape mismatch");
  const int w = n + b.cols;
  Matrix<Rational> aug(n, w);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (int j = 0; j < b.cols; ++j) aug(i, n + j) = b(i, j);
  }
  Rational scale;
  auto m = integer_rows(aug, scale);
  if (bareiss(m, n, w, n) < 0) return std::nullopt;
  auto at = [&](int i, int j) -> const Integer& { return m[static_cast<size_t>(i) * w + j]; };
  Matrix<Rational> x(n, b.cols);
  for (int c = 0; c < b.cols; ++c) {
    for (int i = n - 1; i >= 0; --i) {
      Rational acc(at(i, n + c));
      for (int j = i + 1; j < n; ++j) acc -= Rational(at(i, j)) * x(j, c);
      x(i, c) = acc / Rational(at(i, i));
    }
  }
  return x;
}

std::optional<Matrix<double>> solve(const Matrix<double>& a, const Matrix<double>& b) {
  const int n = a.rows;
  if (a.cols != n || b.rows != n) throw std::invalid_argument("solve: shape mismatch");
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> am(a.data.data(), n, n);
  Eigen::Map<const RowMat> bm(b.data.data(), n, b.cols);
  Eigen::FullPivLU<RowMat> lu(am);
  lu.setThreshold(tolerance());
  if (!lu.isInvertible()) return std::nullopt;
  RowMat xm = lu.solve(bm);
  Matrix<double> x(n, b.cols);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < b.cols; ++j) x(i, j) = xm(i, j);
  return x;
}

int rank(Matrix<Rational> a) {
  int r = 0;
  for (int c = 0; c < a.cols && r < a.rows; ++c) {
    int p = r;
    while (p < a.rows && a(p, c) == 0) ++p;
    if (p == a.rows) continue;
    if (p != r)
      for (int j = 0; j < a.cols; ++j) std::swap(a(p, j), a(r, j));
    for (int i = r + 1; i < a.rows; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (int j = c; j < a.cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

int rank(const Matrix<double>& a) {
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> am(a.data.data(), a.rows, a.cols);
  Eigen::FullPivLU<RowMat> lu(am);
  lu.setThreshold(tolerance());
  return static_cast<int>(lu.rank());
}

}  // namespace ptc
