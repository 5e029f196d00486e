#include <doctest.h>
#include <ptc/moduli.hpp>
#include <ptc/neumann.hpp>

#include <random>

#include "support.hpp"

using namespace ptc;
using namespace ptc::testing;
using Q = Rational;

namespace {

template <class T>
BoundaryCurrent<T> convert_current(const BoundaryCurrent<Q>& xi) {
  BoundaryCurrent<T> out;
  for (const auto& v : xi) out.push_back(convert_vec<T>(v));
  return out;
}

AbstractCurve<double> convert_graph(const AbstractCurve<Q>& g) {
  AbstractCurve<double> out;
  out.num_vertices = g.num_vertices;
  for (const auto& e : g.edges) out.edges.push_back({e.a, e.b, e.length.convert_to<double>()});
  for (const auto& l : g.legs) out.legs.push_back({l.vertex});
  return out;
}

template <class F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("path example") {
  AbstractCurve<Q> g;
  g.num_vertices = 2;
  g.edges = {{0, 1, Q(2)}};
  g.legs = {{0}, {1}};
  auto phi = solve_neumann(g, BoundaryCurrent<Q>{{-1, 0}, {1, 0}}, 0);
  CHECK(phi[0] == Vec2<Q>(0, 0));
  CHECK(phi[1] == Vec2<Q>(2, 0));
  auto zero = solve_neumann(g, BoundaryCurrent<Q>{{0, 0}, {0, 0}}, 1);
  CHECK(is_zero(zero[0]));
  CHECK(is_zero(zero[1]));
  CHECK(code_of([&] { solve_neumann(g, BoundaryCurrent<Q>{{1, 0}, {0, 0}}, 0); }) == ErrorCode::NoSolution);
  g.num_vertices = 3;
  g.legs = {{0}, {2}};
  CHECK(code_of([&] { solve_neumann(g, BoundaryCurrent<Q>{{1, 0}, {-1, 0}}, 0); }) == ErrorCode::NotConnected);
}

TEST_CASE("tripod and H-tree") {
  AbstractCurve<Q> tripod;
  tripod.num_vertices = 1;
  tripod.legs = {{0}, {0}, {0}};
  auto c = realize(tripod, tropical_delta(1), 0, Vec2<Q>{});
  CHECK(c.positions == std::vector<Vec2<Q>>{{0, 0}});
  CHECK(c.balanced());

  AbstractCurve<Q> h;
  h.num_vertices = 2;
  h.edges = {{0, 1, Q(1)}};
  h.legs = {{0}, {0}, {1}, {1}};
  auto d = validate_delta(std::vector<Vec2<Q>>{{-1, 0}, {0, -1}, {1, 0}, {0, 1}});
  auto hc = realize(h, d, 0, Vec2<Q>{});
  CHECK(hc.positions[1] - hc.positions[0] == Vec2<Q>(1, 1));
  CHECK(hc.edge_slopes[0] == Vec2<Q>(1, 1));
}

TEST_CASE("laplacian structure") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_graph(rng);
    auto sys = laplacian_system(g, random_balanced_current(rng, g.legs.size()));
    const int n = g.num_vertices;
    for (int i = 0; i < n; ++i) {
      Q row = 0;
      for (int j = 0; j < n; ++j) {
        row += sys.laplacian(i, j);
        CHECK(sys.laplacian(i, j) == sys.laplacian(j, i));
      }
      CHECK(row == 0);
    }
    for (const auto& e : g.edges) CHECK(sys.laplacian(e.a, e.b) == -Q(1) / e.length);
    Vec2<Q> total;
    for (const auto& b : sys.rhs) total += b;
    CHECK(is_zero(total));
  }
}

TEST_CASE("random graphs realize balanced curves") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_graph(rng);
    auto xi = random_balanced_current(rng, g.legs.size());
    const int r1 = static_cast<int>(rng() % g.num_vertices), r2 = static_cast<int>(rng() % g.num_vertices);
    auto a = realize_current(g, xi, r1, Vec2<Q>(Q(1, 2), 3));
    auto b = realize_current(g, xi, r2, Vec2<Q>{});
    CHECK(a.balance_residual() == 0);
    CHECK(a.geometry_residual() == 0);
    CHECK(a.balanced());
    const Vec2<Q> shift = a.positions[0] - b.positions[0];
    for (int v = 0; v < g.num_vertices; ++v) CHECK(a.positions[v] - b.positions[v] == shift);
    CHECK(a.positions[r1] == Vec2<Q>(Q(1, 2), 3));

    auto f = realize_current(convert_graph(g), convert_current<double>(xi), r1, Vec2<double>(0.5, 3));
    CHECK(f.balance_residual() < 1e-9);
    for (int v = 0; v < g.num_vertices; ++v) {
      CHECK(f.positions[v].x == doctest::Approx(to_double(a.positions[v].x)).epsilon(1e-9));
      CHECK(f.positions[v].y == doctest::Approx(to_double(a.positions[v].y)).epsilon(1e-9));
    }

    auto bad = xi;
    bad[0] += Vec2<Q>(1, 0);
    CHECK(code_of([&] { realize_current(g, bad, 0, Vec2<Q>{}); }) == ErrorCode::NoSolution);
  }
}

TEST_CASE("tree slopes do not depend on the metric") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 5;
    auto d = random_real_delta(rng, n);
    auto trees = enumerate_trivalent_trees(n);
    const auto& t = trees[rng() % trees.size()];
    auto s = analyze(t);
    std::vector<Q> lengths(s.edges.size());
    for (auto& l : lengths) l = Q(static_cast<long>(rng() % 30 + 1), 11);
    auto g = to_abstract_curve(t, lengths);
    auto c = realize(g, d, 0, Vec2<Q>{});
    auto scaled_lengths = lengths;
    for (auto& l : scaled_lengths) l *= 10;
    auto c10 = realize(to_abstract_curve(t, scaled_lengths), d, 0, Vec2<Q>{});
    CHECK(c.edge_slopes == c10.edge_slopes);

    auto slopes = propagate_slopes(t, d);
    const int L = t.leaves();
    for (size_t e = 0; e < s.edges.size(); ++e) {
      // Edge slope points from e.a to e.b, i.e. out of a through slot_a.
      CHECK(slopes.slope(s.edges[e].a, s.edges[e].slot_a) == c.edge_slopes[e]);
      CHECK(slopes.slope(s.edges[e].b, s.edges[e].slot_b) == -c.edge_slopes[e]);
    }
    for (int v = L; v < t.node_count(); ++v) {
      Vec2<Q> sum;
      for (int k = 0; k < 3; ++k) sum += slopes.slope(v, k);
      CHECK(is_zero(sum));
    }
  }
}

TEST_CASE("caterpillar slopes") {
  auto t = type_from_edges(4, 0, {{0, 4}, {1, 4}, {4, 5}, {2, 5}, {3, 5}});
  auto d = validate_delta(std::vector<Vec2<Q>>{{-1, 0}, {-1, 0}, {-1, 0}, {3, 0}});
  auto slopes = propagate_slopes(t, d);
  auto s = analyze(t);
  REQUIRE(s.edges.size() == 1);
  // Leaving the vertex with legs 1, 2 towards the rest: the sum of the far legs.
  const int a = s.edges[0].a;
  const bool a_holds_first = t.attach[0] == a;
  CHECK(slopes.slope(a, s.edges[0].slot_a) == (a_holds_first ? Vec2<Q>(2, 0) : Vec2<Q>(-2, 0)));

  auto t5 = type_from_edges(5, 0, {{0, 5}, {1, 5}, {5, 6}, {2, 6}, {6, 7}, {3, 7}, {4, 7}});
  auto d5 = validate_delta(std::vector<Vec2<Q>>{{-1, 0}, {-1, 0}, {-1, 0}, {-1, 0}, {4, 0}});
  auto s5 = propagate_slopes(t5, d5);
  auto body = [&](int from, int to) {
    for (int k = 0; k < 3; ++k)
      if (t5.neighbours(from)[k] == to) return s5.slope(from, k);
    return Vec2<Q>{};
  };
  CHECK(body(5, 6) == Vec2<Q>(2, 0));
  CHECK(body(6, 7) == Vec2<Q>(3, 0));
}

TEST_CASE("star-mesh transforms") {
  // Series edges.
  AbstractCurve<Q> path;
  path.num_vertices = 3;
  path.edges = {{0, 1, Q(2)}, {1, 2, Q(3)}};
  path.legs = {{0}, {2}};
  auto p = realize_current(path, BoundaryCurrent<Q>{{-1, 1}, {1, -1}}, 0, Vec2<Q>{});
  auto series = star_mesh(p, 1);
  REQUIRE(series.base.edges.size() == 1);
  CHECK(series.base.edges[0].length == 5);
  CHECK(series.positions[1] == p.positions[2]);

  // Unit star: mesh lengths are l_i l_j (1/l_1 + 1/l_2 + 1/l_3) = 3.
  AbstractCurve<Q> star;
  star.num_vertices = 4;
  star.edges = {{0, 1, Q(1)}, {0, 2, Q(1)}, {0, 3, Q(1)}};
  star.legs = {{1}, {2}, {3}};
  auto sc = realize(star, tropical_delta(1), 1, Vec2<Q>{});
  auto tri = star_mesh(sc, 0);
  REQUIRE(tri.base.edges.size() == 3);
  for (const auto& e : tri.base.edges) CHECK(e.length == 3);
  CHECK(tri.balanced());
  CHECK(tri.geometry_residual() == 0);
  CHECK(code_of([&] { star_mesh(sc, 1); }) == ErrorCode::VertexHasLeg);

  auto back = delta_y(tri, 0, 1, 2);
  CHECK(back.positions.back() == sc.positions[0]);
  for (const auto& e : back.base.edges) CHECK(e.length == 1);
}

TEST_CASE("star-mesh agrees with a fresh solve") {
  std::mt19937_64 rng(4);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 60; ++trial) {
    auto g = random_graph(rng);
    auto c = realize_current(g, random_balanced_current(rng, g.legs.size()), 0, Vec2<Q>{});
    for (int v = 0; v < g.num_vertices; ++v) {
      bool leg = false;
      for (const auto& l : g.legs) leg = leg || l.vertex == v;
      int degree = 0;
      for (const auto& e : g.edges) degree += (e.a == v) + (e.b == v);
      if (leg || degree < 2) continue;
      auto m = star_mesh(c, v);
      CHECK(m.balanced());
      CHECK(m.geometry_residual() == 0);
      // Schur complement: the reduced network carries the same potentials.
      auto fresh = realize_current(m.base, c.leg_slopes, 0, m.positions[0]);
      CHECK(fresh.positions == m.positions);
      if (degree == 3) {
        auto re = [v](int u) { return u > v ? u - 1 : u; };  // numbering after removal
        std::vector<int> nb;
        std::set<std::pair<int, int>> kept;
        for (const auto& e : g.edges) {
          if (e.a == v || e.b == v)
            nb.push_back(re(e.a == v ? e.b : e.a));
          else
            kept.insert(std::minmax(re(e.a), re(e.b)));
        }
        // Only invert when the triangle was created entirely by the transform.
        bool fresh_triangle = true;
        for (int i = 0; i < 3; ++i) fresh_triangle = fresh_triangle && !kept.count(std::minmax(nb[i], nb[(i + 1) % 3]));
        if (fresh_triangle) {
          auto y = delta_y(m, nb[0], nb[1], nb[2]);
          CHECK(y.positions.back() == c.positions[v]);
          CHECK(y.balanced());
        }
      }
      ++checked;
      break;
    }
  }
  CHECK(checked >= 30);
}
