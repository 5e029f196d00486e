#include "ptc/curve.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <set>

namespace ptc {

template <class T>
DeltaSet<T> validate_delta(std::vector<Vec2<T>> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::InvalidArgument, "empty delta-set");
  Vec2<T> sum;
  double scale = 0;
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (is_zero(vectors[i])) throw Error(ErrorCode::ZeroVector, "vector " + std::to_string(i) + " is zero");
    sum += vectors[i];
    scale = std::max(scale, norm(vectors[i]));
  }
  bool balanced;
  if constexpr (is_exact_v<T>) {
    balanced = is_zero(sum);
  } else {
    balanced = is_zero(sum.x, scale) && is_zero(sum.y, scale);
  }
  if (!balanced) throw Error(ErrorCode::Unbalanced, "delta vectors do not sum to zero");
  return DeltaSet<T>{std::move(vectors)};
}

template <class T>
std::vector<Vec2<T>> subset_sums(const DeltaSet<T>& delta) {
  const int n = delta.size();
  std::vector<Vec2<T>> sums(size_t{1} << n);
  for (unsigned mask = 1; mask < sums.size(); ++mask) {
    int low = std::countr_zero(mask);
    sums[mask] = sums[mask & (mask - 1)] + delta[low];
  }
  return sums;
}

template <class T>
DeltaInfo delta_info(const DeltaSet<T>& delta) {
  DeltaInfo info;
  const int n = delta.size();
  std::vector<bool> used(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::uint64_t k = 0;
    for (int j = i; j < n; ++j) {
      if (!used[j] && approx_equal(delta[i], delta[j])) {
        used[j] = true;
        ++k;
      }
    }
    for (std::uint64_t f = 2; f <= k; ++f) info.aut_size *= f;
  }

  if (n < 3 || n > 16) {
    info.three_independent = false;
    return info;
  }
  // Label assignments with block 0 holding index 0 and blocks opened in order.
  auto sums = subset_sums(delta);
  const unsigned full = (1u << n) - 1;
  bool independent = true;
  for (unsigned a = 1; a < full && independent; ++a) {
    if (!(a & 1u)) continue;
    unsigned rest = full & ~a;
    for (unsigned b = rest; b; b = (b - 1) & rest) {
      unsigned c = rest & ~b;
      if (c == 0 || b > c) continue;
      if (cross_sign(sums[a], sums[b]) == 0) {
        independent = false;
        break;
      }
    }
  }
  info.three_independent = independent;
  return info;
}

template <class T>
bool is_st_independent(const DeltaSet<T>& delta, int s, int t) {
  const int n = delta.size();
  if (s < 0 || t < 0 || s >= n || t >= n || s == t) throw Error(ErrorCode::InvalidArgument, "bad (s,t) pair");
  auto sums = subset_sums(delta);
  for (int k = 0; k < n; ++k) {
    if (k == s || k == t) continue;
    unsigned free = ((1u << n) - 1) & ~((1u << s) | (1u << t) | (1u << k));
    for (unsigned sub = free;; sub = (sub - 1) & free) {
      unsigned block1 = sub | (1u << s);
      if (cross_sign(sums[block1], delta[k]) == 0) return false;
      if (sub == 0) break;
    }
  }
  return true;
}

template <class T>
bool AbstractCurve<T>::connected() const {
  if (num_vertices <= 1) return true;
  std::vector<std::vector<int>> adj(static_cast<size_t>(num_vertices));
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<bool> seen(static_cast<size_t>(num_vertices), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push(w);
      }
  }
  return count == num_vertices;
}

template <class T>
void AbstractCurve<T>::check() const {
  if (num_vertices <= 0) throw Error(ErrorCode::InvalidArgument, "curve has no vertices");
  std::set<std::pair<int, int>> seen;
  for (size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.a < 0 || e.b < 0 || e.a >= num_vertices || e.b >= num_vertices)
      throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(i) + " has a bad endpoint");
    if (e.a == e.b) throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(i) + " is a loop");
    if (!(e.length > 0)) throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(i) + " has length <= 0");
    if (!seen.insert(std::minmax(e.a, e.b)).second)
      throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(i) + " repeats an earlier edge");
  }
  for (size_t i = 0; i < legs.size(); ++i)
    if (legs[i].vertex < 0 || legs[i].vertex >= num_vertices)
      throw Error(ErrorCode::InvalidArgument, "leg " + std::to_string(i) + " has a bad vertex");
}

template <class T>
double PlaneCurve<T>::balance_residual() const {
  std::vector<Vec2<T>> acc(static_cast<size_t>(base.num_vertices));
  for (size_t i = 0; i < base.edges.size(); ++i) {
    acc[base.edges[i].a] += edge_slopes[i];
    acc[base.edges[i].b] -= edge_slopes[i];
  }
  for (size_t i = 0; i < base.legs.size(); ++i) acc[base.legs[i].vertex] += leg_slopes[i];
  double worst = 0;
  for (const auto& v : acc) worst = std::max(worst, norm(v));
  return worst;
}

template <class T>
double PlaneCurve<T>::geometry_residual() const {
  double worst = 0;
  for (size_t i = 0; i < base.edges.size(); ++i) {
    const auto& e = base.edges[i];
    Vec2<T> r = positions[e.b] - positions[e.a] - e.length * edge_slopes[i];
    worst = std::max(worst, norm(r));
  }
  return worst;
}

template <class T>
bool PlaneCurve<T>::balanced() const {
  if constexpr (is_exact_v<T>) {
    return balance_residual() == 0;
  } else {
    return balance_residual() <= tolerance();
  }
}

#define PTC_INSTANTIATE(T)                                                   \
  template DeltaSet<T> validate_delta<T>(std::vector<Vec2<T>>);              \
  template DeltaInfo delta_info<T>(const DeltaSet<T>&);                      \
  template std::vector<Vec2<T>> subset_sums<T>(const DeltaSet<T>&);          \
  template bool is_st_independent<T>(const DeltaSet<T>&, int, int);          \
  template struct AbstractCurve<T>;                                          \
  template struct PlaneCurve<T>;

PTC_INSTANTIATE(Rational)
PTC_INSTANTIATE(double)
#undef PTC_INSTANTIATE

}  // namespace ptc
