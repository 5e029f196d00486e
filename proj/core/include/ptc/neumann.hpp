#pragma once

#include "ptc/curve.hpp"
#include "ptc/linalg.hpp"
#include "ptc/tree.hpp"

#include <vector>

namespace ptc {

// One value per leg; marked legs carry zero.
template <class T>
using BoundaryCurrent = std::vector<Vec2<T>>;

// One value per vertex.
template <class T>
using Potential = std::vector<Vec2<T>>;

template <class T>
struct LaplacianSystem {
  Matrix<T> laplacian;
  std::vector<Vec2<T>> rhs;
};

template <class T>
LaplacianSystem<T> laplacian_system(const AbstractCurve<T>& g, const BoundaryCurrent<T>& xi);

// Potential with phi(root) = 0 solving L phi = b. Throws NotConnected, NoSolution.
template <class T>
Potential<T> solve_neumann(const AbstractCurve<T>& g, const BoundaryCurrent<T>& xi, int root);

// Global current (phi(b) - phi(a)) / l on each bounded edge.
template <class T>
std::vector<Vec2<T>> global_current(const AbstractCurve<T>& g, const Potential<T>& phi);

// Legs beyond delta.size() are marked and get zero current.
template <class T>
PlaneCurve<T> realize(const AbstractCurve<T>& g, const DeltaSet<T>& delta, int root, const Vec2<T>& root_pos);

template <class T>
PlaneCurve<T> realize_current(const AbstractCurve<T>& g, const BoundaryCurrent<T>& xi, int root,
                              const Vec2<T>& root_pos);

// Balanced slopes of a tree type. slope(v, k) points from internal node v towards its k-th neighbour.
template <class T>
struct SlopeAssignment {
  int leaves = 0;
  std::vector<std::array<Vec2<T>, 3>> out;

  const Vec2<T>& slope(int v, int k) const { return out[static_cast<size_t>(v - leaves)][k]; }
};

template <class T>
SlopeAssignment<T> propagate_slopes(const MarkedType& t, const DeltaSet<T>& delta);

// Replaces the star of a leg-free vertex by the complete graph on its neighbours.
// Lengths follow the Schur complement: l_ij = l_i l_j (1/l_1 + ... + 1/l_s).
// Vertex v is removed; later vertices shift down by one.
template <class T>
PlaneCurve<T> star_mesh(const PlaneCurve<T>& c, int v);

// Inverse of star_mesh for a triangle i, j, k; the new centre is appended as the last vertex.
template <class T>
PlaneCurve<T> delta_y(const PlaneCurve<T>& c, int i, int j, int k);

}  // namespace ptc
