#include "ptc/enumeration.hpp"

#include <algorithm>
#include <random>

namespace ptc {

namespace {

void require_cycle(const Cycle& z, int n) {
  if (z.n != n) throw Error(ErrorCode::InvalidArgument, "cycle and delta set have different leg counts");
  if (!z.verified) {
    auto check = verify_cycle(z);
    if (!check.ok)
      throw Error(ErrorCode::CycleNotVerified, std::to_string(check.violated) + " violated faces, e.g. " + check.examples.front());
  }
}

template <class T>
void require_regular_support(const Cycle& z, const DeltaSet<T>& delta) {
  const auto& cat = type_catalog(z.n);
  for (size_t i = 0; i < z.coefficients.size(); ++i) {
    if (z.coefficients[i].is_zero()) continue;
    if (negligible(multiplicity(cat.type(static_cast<int>(i)), delta), 1.0))
      throw Error(ErrorCode::CycleNotVerified, "cycle is supported on the degenerate type " + canonical_form(cat.type(static_cast<int>(i))));
  }
}

template <class T>
std::vector<Rational> exact_lengths(const std::vector<T>& l) {
  std::vector<Rational> out;
  if constexpr (is_exact_v<T>) out = l;
  return out;
}

}  // namespace

template <class T>
CountResult weighted_count(const DeltaSet<T>& delta, const Cycle& z, const std::vector<Vec2<T>>& points) {
  require_cycle(z, delta.size());
  require_regular_support(z, delta);
  CountResult r;
  Weight zero = z.coefficients.empty() ? Weight() : z.coefficients[0] - z.coefficients[0];
  r.raw = zero;
  for (const auto& sol : curves_through(delta, points)) {
    CountEntry e;
    e.key = canonical_form(sol.type);
    e.coefficient = z.coefficient(sol.type);
    e.lengths = exact_lengths(sol.lengths);
    r.raw += e.coefficient;
    r.ledger.push_back(std::move(e));
  }
  // Double configurations are recorded by their exact binary values.
  for (const auto& p : points) r.points.emplace_back(Rational(p.x), Rational(p.y));
  r.value = r.raw;
  r.aut_size = delta_info(delta).aut_size;
  std::sort(r.ledger.begin(), r.ledger.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  return r;
}

std::vector<Vec2<Rational>> random_configuration(const DeltaSet<Rational>& delta, std::uint64_t seed, int attempt) {
  double scale = 1;
  for (const auto& v : delta.vectors) scale = std::max(scale, norm(v));
  const long range = static_cast<long>(std::ceil(10 * scale * delta.size()));
  std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(attempt));
  // Denominators are distinct primes so coordinates avoid coincidences with small lattices.
  const long den_x = 10007, den_y = 10009;
  std::uniform_int_distribution<long> u(-range * den_x, range * den_x);
  std::vector<Vec2<Rational>> p;
  for (int i = 0; i + 1 < delta.size(); ++i) p.emplace_back(Rational(u(rng), den_x), Rational(u(rng), den_y));
  return p;
}

std::vector<MarkedType> curve_types_through(const DeltaSet<Rational>& delta, const std::vector<Vec2<Rational>>& points,
                                            CountOptions::Search search) {
  const bool exact = search == CountOptions::Search::Exact || (search == CountOptions::Search::Auto && delta.size() < 8);
  std::vector<MarkedType> out;
  if (exact) {
    for (auto& s : curves_through(delta, points)) out.push_back(std::move(s.type));
  } else {
    std::vector<Vec2<double>> pd;
    for (const auto& p : points) pd.push_back(convert_vec<double>(p));
    for (auto& s : curves_through(convert_delta<double>(delta), pd)) out.push_back(std::move(s.type));
  }
  return out;
}

Weight blackboard_lie_weight(const MarkedType& t, const DeltaSet<Rational>& delta, const WeightMode& mode) {
  auto s = analyze(t);
  auto sums = subset_sums(delta);
  const int L = t.leaves();
  Weight w = Weight::one(mode);
  for (int v : s.unmarked) {
    const auto& side = s.side[v - L];
    Rational c = cross(sums[side[0] & s.unmarked_mask], sums[side[1] & s.unmarked_mask]);
    if (c < 0) c = -c;
    w *= quantum_weight(c, mode);
  }
  return w;
}

CountResult refined_invariant_at(const DeltaSet<Rational>& delta, const std::vector<Vec2<Rational>>& points,
                                 const CountOptions& options) {
  CountResult r;
  r.raw = Weight::zero(options.mode);
  for (const auto& t : curve_types_through(delta, points, options.search)) {
    CountEntry e;
    e.key = canonical_form(t);
    e.coefficient = blackboard_lie_weight(t, delta, options.mode);
    r.raw += e.coefficient;
    r.ledger.push_back(std::move(e));
  }
  std::sort(r.ledger.begin(), r.ledger.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  r.points = points;
  r.aut_size = delta_info(delta).aut_size;
  r.normalized = options.normalize;
  r.value = options.normalize ? r.raw.divided(Rational(static_cast<long long>(r.aut_size))) : r.raw;
  r.mode = options.mode.str();
  return r;
}

CountResult refined_invariant(const DeltaSet<Rational>& delta, const CountOptions& options) {
  if (options.mode.kind == WeightMode::Kind::Numeric) check_hbar(options.mode.hbar);
  for (int attempt = 0;; ++attempt) {
    auto points = random_configuration(delta, options.seed, attempt);
    try {
      auto r = refined_invariant_at(delta, points, options);
      r.attempts = attempt + 1;
      return r;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonGenericConfiguration || attempt + 1 >= options.max_attempts) throw;
    }
  }
}

template CountResult weighted_count<Rational>(const DeltaSet<Rational>&, const Cycle&, const std::vector<Vec2<Rational>>&);
template CountResult weighted_count<double>(const DeltaSet<double>&, const Cycle&, const std::vector<Vec2<double>>&);

}  // namespace ptc
