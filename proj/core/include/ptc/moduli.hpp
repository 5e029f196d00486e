#pragma once

#include "ptc/curve.hpp"
#include "ptc/linalg.hpp"
#include "ptc/neumann.hpp"
#include "ptc/tree.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ptc {

// mult(mu, or) = product over unmarked vertices of det(xi_v(e1), xi_v(e2)).
template <class T>
T multiplicity(const MarkedType& t, const DeltaSet<T>& delta);

// Matrix of (lengths, root position) -> (h(z_1), ..., h(z_m)).
// Columns: e1(v), e2(v) for unmarked vertices in ascending node order, then x, y of the root z_m.
template <class T>
struct EvaluationMatrix {
  Matrix<T> matrix;
  T determinant{0};
  std::vector<int> column_edges;  // bounded edge index (TypeStructure::edges) per length column
  int root = 0;                   // internal node used as root
};

template <class T>
EvaluationMatrix<T> ev_matrix(const MarkedType& t, const DeltaSet<T>& delta);

// Precomputed index data for evaluating mult and the evaluation matrix of one type
// against many integer delta-sets given by their subset sums.
class EvaluationPlan {
 public:
  explicit EvaluationPlan(const MarkedType& t);

  int dimension() const { return dim_; }
  // sums[mask] = sum of delta vectors over mask (bits 0..n-1).
  std::int64_t multiplicity(const std::vector<Vec2<std::int64_t>>& sums) const;
  // Fills a dim x dim row-major matrix.
  void fill(const std::vector<Vec2<std::int64_t>>& sums, std::int64_t* out) const;
  // det of the evaluation matrix. The root rows and columns form an identity block,
  // so only the length block of the other points is eliminated. nullopt on overflow.
  std::optional<std::int64_t> determinant(const std::vector<Vec2<std::int64_t>>& sums) const;

 private:
  struct Term {
    int row;  // point index
    int col;
    std::uint32_t mask;
  };
  int dim_ = 0;
  std::vector<std::array<std::uint32_t, 2>> vertex_masks_;
  std::vector<Term> terms_;
};

template <class T>
struct CurveSolution {
  MarkedType type;
  std::vector<T> lengths;  // aligned with analyze(type).edges
  Vec2<T> root_pos;        // position of the last marked point
};

// Curve with one vertex per internal node (index node - leaves), bounded edges in analyze() order,
// legs: unmarked legs first, then marked legs.
template <class T>
AbstractCurve<T> to_abstract_curve(const MarkedType& t, const std::vector<T>& lengths);

template <class T>
PlaneCurve<T> realize_solution(const CurveSolution<T>& s, const DeltaSet<T>& delta);

// All rigid curves through the points, found by decomposing curves into flows towards the last leg.
// Orientation of each returned type is the planar counterclockwise order (blackboard).
// Throws NonGenericConfiguration on coincidences.
template <class T>
std::vector<CurveSolution<T>> curves_through(const DeltaSet<T>& delta, const std::vector<Vec2<T>>& points);

// Same result by solving ev(l, r) = p for every enumerated type (small n only).
// Orientation of each returned type is the catalogue orientation.
template <class T>
std::vector<CurveSolution<T>> curves_through_by_types(const DeltaSet<T>& delta, const std::vector<Vec2<T>>& points);

}  // namespace ptc
