#pragma once

#include "ptc/error.hpp"
#include "ptc/vec2.hpp"

#include <cstdint>
#include <vector>

namespace ptc {

template <class T>
struct DeltaSet {
  std::vector<Vec2<T>> vectors;

  int size() const { return static_cast<int>(vectors.size()); }
  const Vec2<T>& operator[](int i) const { return vectors[static_cast<size_t>(i)]; }
};

struct DeltaInfo {
  std::uint64_t aut_size = 1;
  bool three_independent = false;
};

// Throws ZeroVector or Unbalanced.
template <class T>
DeltaSet<T> validate_delta(std::vector<Vec2<T>> vectors);

template <class T>
DeltaInfo delta_info(const DeltaSet<T>& delta);

// Sum of delta vectors over the index set encoded in `mask`.
template <class T>
std::vector<Vec2<T>> subset_sums(const DeltaSet<T>& delta);

// No three-block partition with one singleton block, s and t in the other two, is all parallel.
template <class T>
bool is_st_independent(const DeltaSet<T>& delta, int s, int t);

template <class T>
DeltaSet<T> convert_delta(const DeltaSet<Rational>& d) {
  DeltaSet<T> out;
  for (const auto& v : d.vectors) out.vectors.push_back(convert_vec<T>(v));
  return out;
}


template <class T>
struct AbstractCurve {
  struct Edge {
    int a = 0;  // e-
    int b = 0;  // e+
    T length{1};
  };
  struct Leg {
    int vertex = 0;
  };

  int num_vertices = 0;
  std::vector<Edge> edges;
  std::vector<Leg> legs;

  bool connected() const;
  // Throws InvalidArgument on loops, repeated edges, bad indices or nonpositive lengths.
  void check() const;
};

template <class T>
struct PlaneCurve {
  AbstractCurve<T> base;
  std::vector<Vec2<T>> positions;
  std::vector<Vec2<T>> edge_slopes;  // oriented a -> b
  std::vector<Vec2<T>> leg_slopes;   // pointing to infinity

  // Largest |sum of outgoing slopes| over vertices (0 when exactly balanced).
  double balance_residual() const;
  // Largest |h(b) - h(a) - l*xi| over bounded edges.
  double geometry_residual() const;
  bool balanced() const;
};

template <class T>
PlaneCurve<T> translate(PlaneCurve<T> c, const Vec2<T>& offset) {
  for (auto& p : c.positions) p += offset;
  return c;
}

}  // namespace ptc
