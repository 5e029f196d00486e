#pragma once

#include "ptc/curve.hpp"
#include "ptc/weights.hpp"

#include <cstddef>
#include <vector>

namespace ptc {

// Split of the legs into s, t and ordered blocks, with eta_j = -(sum of block j).
struct AdmissiblePartition {
  int s = 0;
  int t = 0;
  std::vector<std::vector<int>> blocks;
  std::vector<Vec2<Rational>> eta;
};

// Throws NonGenericDirection if xi0 is parallel to a nonzero proper subset sum.
void check_direction(const DeltaSet<Rational>& delta, const Vec2<Rational>& xi0);

// First rational rotation of the first vector that is generic for delta.
Vec2<Rational> default_direction(const DeltaSet<Rational>& delta);

// Admissible partitions for the direction xi0: (xi_s, xi0, xi_t) and (xi_s, eta_1, ..., eta_k, xi_t)
// counterclockwise, pairwise determinants non-negative. Blocks with parallel eta are listed once,
// ordered by smallest leg. Blocks summing to zero and opposite eta pairs are left out; such terms
// carry a vanishing weight.
std::vector<AdmissiblePartition> admissible_partitions(const DeltaSet<Rational>& delta, const Vec2<Rational>& xi0);

// Number of ways to distribute n-2 labelled points into blocks of the given sizes.
Integer multinomial(const std::vector<int>& sizes);

struct RecursionResult {
  Weight value;
  Vec2<Rational> xi0;
  std::size_t subproblems = 0;  // distinct delta sets evaluated
  std::size_t terms = 0;        // admissible partitions visited
};

RecursionResult recursive_count(const DeltaSet<Rational>& delta, const Vec2<Rational>& xi0, const WeightMode& mode);
RecursionResult recursive_count(const DeltaSet<Rational>& delta, const WeightMode& mode);

}  // namespace ptc
