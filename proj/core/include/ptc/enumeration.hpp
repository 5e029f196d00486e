#pragma once

#include "ptc/jacobi.hpp"
#include "ptc/moduli.hpp"
#include "ptc/weights.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ptc {

struct CountEntry {
  std::string key;   // canonical form of the curve's type, blackboard orientation
  int realized = 1;  // N_delta(mu, p)
  Weight coefficient;  // cycle coefficient in the blackboard orientation
  std::vector<Rational> lengths;  // empty when the search ran in float mode
};

struct CountResult {
  Weight value;  // normalised when `normalized`
  Weight raw;    // sum over curves before normalisation
  std::vector<CountEntry> ledger;  // realised types only
  std::vector<Vec2<Rational>> points;
  bool normalized = false;
  std::uint64_t aut_size = 1;
  int attempts = 1;
  std::string mode;
};

// Sum of z over the types of curves through the points. Throws CycleNotVerified, NonGenericConfiguration.
template <class T>
CountResult weighted_count(const DeltaSet<T>& delta, const Cycle& z, const std::vector<Vec2<T>>& points);

struct CountOptions {
  enum class Search { Auto, Exact, Float };
  WeightMode mode = WeightMode::exact();
  std::uint64_t seed = 1;
  bool normalize = false;
  int max_attempts = 25;
  Search search = Search::Auto;  // Auto: exact below 8 legs
};

// Seeded point configuration in a box scaled to the delta set; `attempt` perturbs the draw.
std::vector<Vec2<Rational>> random_configuration(const DeltaSet<Rational>& delta, std::uint64_t seed, int attempt = 0);

// Curves through the points, searched in the requested precision. Types carry blackboard orientation.
std::vector<MarkedType> curve_types_through(const DeltaSet<Rational>& delta, const std::vector<Vec2<Rational>>& points,
                                            CountOptions::Search search);

// Blackboard Lie weight of a type: product of [|a x b|] over unmarked vertices.
Weight blackboard_lie_weight(const MarkedType& t, const DeltaSet<Rational>& delta, const WeightMode& mode);

// Count with the Lie cycle at a seeded generic configuration, retrying on non-generic draws.
CountResult refined_invariant(const DeltaSet<Rational>& delta, const CountOptions& options);
// Same, at given points.
CountResult refined_invariant_at(const DeltaSet<Rational>& delta, const std::vector<Vec2<Rational>>& points,
                                 const CountOptions& options);

}  // namespace ptc
