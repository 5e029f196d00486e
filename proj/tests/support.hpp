#pragma once

#include <ptc/curve.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace ptc::testing {

// Random balanced set of n small integer vectors, none zero.
inline DeltaSet<Rational> random_delta(std::mt19937_64& rng, int n, int range = 4) {
  std::uniform_int_distribution<int> d(-range, range);
  for (;;) {
    std::vector<Vec2<Rational>> v;
    Vec2<Rational> sum;
    for (int i = 0; i + 1 < n; ++i) {
      Vec2<Rational> x(d(rng), d(rng));
      v.push_back(x);
      sum += x;
    }
    v.push_back(-sum);
    bool ok = true;
    for (auto& x : v) ok = ok && !is_zero(x);
    if (ok) return DeltaSet<Rational>{v};
  }
}

// Random balanced set with non-integral rational entries.
inline DeltaSet<Rational> random_real_delta(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-40, 40), den(1, 7);
  for (;;) {
    std::vector<Vec2<Rational>> v;
    Vec2<Rational> sum;
    for (int i = 0; i + 1 < n; ++i) {
      Vec2<Rational> x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
      v.push_back(x);
      sum += x;
    }
    v.push_back(-sum);
    bool ok = true;
    for (auto& x : v) ok = ok && !is_zero(x);
    if (ok) return DeltaSet<Rational>{v};
  }
}

inline std::vector<Vec2<Rational>> random_points(std::mt19937_64& rng, int m, int range = 1000) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<Vec2<Rational>> p;
  for (int i = 0; i < m; ++i) p.emplace_back(Rational(d(rng), 7), Rational(d(rng), 11));
  return p;
}

}  // namespace ptc::testing

#include <ptc/moduli.hpp>
#include <ptc/neumann.hpp>

namespace ptc::testing {

// Random trivalent tree with the given leg slopes, random lengths, one vertex at `at`.
template <class T = Rational>
PlaneCurve<T> random_curve(std::mt19937_64& rng, const DeltaSet<Rational>& delta, const Vec2<Rational>& at) {
  auto trees = enumerate_trivalent_trees(delta.size());
  std::uniform_int_distribution<size_t> pick(0, trees.size() - 1);
  std::uniform_int_distribution<int> len(1, 60);
  const auto& t = trees[pick(rng)];
  std::vector<T> lengths(analyze(t).edges.size());
  for (auto& l : lengths) l = T(Rational(len(rng), 13));
  auto g = to_abstract_curve(t, lengths);
  return realize(g, convert_delta<T>(delta), 0, convert_vec<T>(at));
}

// Connected graph with cycles: a random spanning tree plus extra non-parallel edges, legs scattered.
inline AbstractCurve<Rational> random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(1, 12), len(1, 40);
  AbstractCurve<Rational> g;
  g.num_vertices = nv(rng);
  std::set<std::pair<int, int>> used;
  for (int v = 1; v < g.num_vertices; ++v) {
    int u = static_cast<int>(rng() % static_cast<unsigned>(v));
    g.edges.push_back({u, v, Rational(len(rng), 7)});
    used.insert({u, v});
  }
  const int extra = g.num_vertices > 2 ? static_cast<int>(rng() % 4) : 0;
  for (int k = 0; k < extra; ++k) {
    int a = static_cast<int>(rng() % g.num_vertices), b = static_cast<int>(rng() % g.num_vertices);
    if (a == b) continue;
    auto key = std::minmax(a, b);
    if (!used.insert(key).second) continue;
    g.edges.push_back({key.first, key.second, Rational(len(rng), 5)});
  }
  for (int v = 0; v < g.num_vertices; ++v) {
    const int legs = static_cast<int>(rng() % 5);
    for (int k = 0; k < legs; ++k) g.legs.push_back({v});
  }
  if (g.legs.size() < 2) g.legs = {{0}, {g.num_vertices - 1}};
  return g;
}

inline BoundaryCurrent<Rational> random_balanced_current(std::mt19937_64& rng, size_t legs) {
  std::uniform_int_distribution<int> u(-9, 9);
  BoundaryCurrent<Rational> xi;
  Vec2<Rational> sum;
  for (size_t i = 0; i + 1 < legs; ++i) {
    xi.emplace_back(Rational(u(rng), 3), Rational(u(rng), 2));
    sum += xi.back();
  }
  xi.push_back(-sum);
  return xi;
}

inline DeltaSet<Rational> tropical_delta(int d) {
  DeltaSet<Rational> out;
  for (int k = 0; k < d; ++k) {
    out.vectors.push_back({-1, 0});
    out.vectors.push_back({0, -1});
    out.vectors.push_back({1, 1});
  }
  return out;
}

}  // namespace ptc::testing

namespace ptc::testing {

inline PlaneCurve<double> convert_curve(const PlaneCurve<Rational>& c) {
  PlaneCurve<double> out;
  out.base.num_vertices = c.base.num_vertices;
  for (auto& e : c.base.edges) out.base.edges.push_back({e.a, e.b, e.length.convert_to<double>()});
  for (auto& l : c.base.legs) out.base.legs.push_back({l.vertex});
  for (auto& p : c.positions) out.positions.push_back(convert_vec<double>(p));
  for (auto& p : c.edge_slopes) out.edge_slopes.push_back(convert_vec<double>(p));
  for (auto& p : c.leg_slopes) out.leg_slopes.push_back(convert_vec<double>(p));
  return out;
}

}  // namespace ptc::testing
