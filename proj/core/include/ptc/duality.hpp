#pragma once

#include "ptc/curve.hpp"

#include <vector>

namespace ptc {

// Convex polygon, vertices counterclockwise. May degenerate to a segment or a point.
template <class T>
struct Polygon {
  std::vector<Vec2<T>> vertices;

  T area() const;
  std::vector<Vec2<T>> edge_vectors() const;
};

// Drops repeated and collinear vertices.
template <class T>
Polygon<T> simplify(const Polygon<T>& p);

// Overlay graph of an immersed curve: curve vertices plus crossing points.
template <class T>
struct Overlay {
  struct Direction {
    Vec2<T> slope;   // outgoing slope vector
    int target = -1;  // neighbouring overlay vertex, -1 for a leg
  };
  std::vector<Vec2<T>> points;
  // Outgoing directions per vertex, sorted counterclockwise.
  std::vector<std::vector<Direction>> star;
};

// Throws DegenerateImmersion when pieces overlap along an interval.
template <class T>
Overlay<T> overlay(const PlaneCurve<T>& c);

template <class T>
struct DualSubdivision {
  Overlay<T> graph;
  Polygon<T> outer;
  std::vector<Polygon<T>> cells;  // one per overlay vertex
};

// Built along a spanning tree of the overlay started at `root`.
template <class T>
DualSubdivision<T> dual_subdivision(const PlaneCurve<T>& c, int root = 0);

// 2 Area of the dual polygon; the degree is its square root.
template <class T>
T degree_squared(const PlaneCurve<T>& c);
template <class T>
double degree(const PlaneCurve<T>& c);

template <class T>
Polygon<T> minkowski_sum(const Polygon<T>& a, const Polygon<T>& b);
template <class T>
T mixed_area(const Polygon<T>& a, const Polygon<T>& b);
// Equal up to translation and one positive scale factor.
template <class T>
bool homothetic(const Polygon<T>& a, const Polygon<T>& b);

template <class T>
struct IntersectionPoint {
  Vec2<T> point;
  int piece1 = 0;  // bounded edge index, or -(leg + 1)
  int piece2 = 0;
  T multiplicity{0};
};

template <class T>
struct IntersectionReport {
  std::vector<IntersectionPoint<T>> points;
  T total{0};
  T mixed_area{0};
  T degree_squared1{0}, degree_squared2{0};
  bool total_matches_mixed_area = false;  // I = 2 MA
  bool bezout_holds = false;              // I >= deg1 deg2
  bool equality = false;                  // I = deg1 deg2
  bool homothetic = false;
};

// Throws NotGeneralPosition unless all crossings are transversal and away from vertices.
template <class T>
IntersectionReport<T> intersect(const PlaneCurve<T>& c1, const PlaneCurve<T>& c2);

// Both curves in one plane curve, vertices of c2 after those of c1.
template <class T>
PlaneCurve<T> disjoint_union(const PlaneCurve<T>& c1, const PlaneCurve<T>& c2);

}  // namespace ptc
