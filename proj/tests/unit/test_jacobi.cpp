#include <doctest.h>
#include <ptc/jacobi.hpp>
#include <ptc/linalg.hpp>
#include <ptc/moduli.hpp>
#include <ptc/neumann.hpp>

#include <random>

#include "support.hpp"

using namespace ptc;
using namespace ptc::testing;
using Q = Rational;

namespace {

DeltaSet<Q> independent_delta(std::mt19937_64& rng, int n, int s, int t) {
  for (;;) {
    auto d = random_real_delta(rng, n);
    if (is_st_independent(d, s, t)) return d;
  }
}

// Unmarked vertices on the path between legs s and t, found by walking the tree.
bool oracle_caterpillar(const MarkedType& t, int s, int tt) {
  std::vector<int> parent(static_cast<size_t>(t.node_count()), -2);
  std::vector<int> stack{s};
  parent[s] = -1;
  auto nbrs = [&](int v) {
    std::vector<int> out;
    if (t.is_leaf(v)) {
      out.push_back(t.attach[v]);
    } else {
      for (int w : t.neighbours(v)) out.push_back(w);
    }
    return out;
  };
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : nbrs(v))
      if (parent[w] == -2) {
        parent[w] = v;
        stack.push_back(w);
      }
  }
  std::set<int> path;
  for (int v = tt; v != -1; v = parent[v]) path.insert(v);
  for (int v = t.leaves(); v < t.node_count(); ++v)
    if (t.is_unmarked_vertex(v) && !path.count(v)) return false;
  return true;
}

}  // namespace

TEST_CASE("Jacobi space dimensions") {
  const int expected[] = {1, 2, 6, 24};
  for (int n = 3; n <= 6; ++n) {
    auto r = relation_rank(n);
    CHECK(r.dimension == expected[n - 3]);
    CHECK(r.generators - r.rank == r.dimension);
  }
  for (int n = 3; n <= 5; ++n) CHECK(marked_relation_rank(n).dimension == expected[n - 3]);
}

TEST_CASE("face structure") {
  const auto& bc = boundary_complex(4);
  for (size_t f = 0; f < bc.face_count(); ++f) {
    if (bc.kind(f) == BoundaryComplex::Kind::Jacobi) {
      CHECK(bc.size(f) == 3);
    } else {
      CHECK(bc.size(f) == 2);
    }
  }
}

TEST_CASE("blackboard chain for three legs is a cycle") {
  DeltaSet<Q> d{{{2, 1}, {-1, 3}, {-1, -4}}};
  auto z = blackboard_chain(3, d);
  CHECK(verify_cycle(z).ok);
  // Blackboard orientation makes every type positive.
  for (const auto& t : type_catalog(3).types()) CHECK(z.coefficient(t).to_double() * multiplicity(t, d).convert_to<double>() > 0);
}

TEST_CASE("a single type is not a cycle") {
  auto z = Cycle::zero(4, WeightMode::exact());
  const auto& bc = boundary_complex(4);
  size_t f = 0;
  while (bc.kind(f) != BoundaryComplex::Kind::Jacobi) ++f;
  z.coefficients[bc.begin(f)->type] = Weight(Q(1));
  auto r = verify_cycle(z);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.examples.empty());
  bool ihx = false;
  for (auto& e : r.examples) ihx = ihx || e.rfind("IHX", 0) == 0;
  CHECK(ihx);
}

TEST_CASE("unknown keys are rejected") {
  std::map<std::string, Weight> m{{"n4m3:nonsense:+", Weight(Q(1))}};
  CHECK_THROWS_AS(Cycle::from_keys(4, m, WeightMode::exact()), Error);
  auto z = lie_cycle(4, DeltaSet<Q>{{{1, 0}, {0, 1}, {-1, 2}, {0, -3}}}, WeightMode::exact());
  auto back = Cycle::from_keys(4, z.to_keys(), WeightMode::exact());
  for (size_t i = 0; i < z.coefficients.size(); ++i) CHECK(back.coefficients[i].approx_equal(z.coefficients[i]));
}

TEST_CASE("lie cycles close up") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> h(-1.9, 1.9);
  for (int n = 4; n <= 5; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      auto d = random_real_delta(rng, n);
      CHECK(verify_cycle(lie_cycle(n, d, WeightMode::exact())).ok);
      CHECK(verify_cycle(lie_cycle(n, d, WeightMode::numeric(h(rng)))).ok);
      CHECK(verify_cycle(lie_cycle(n, convert_delta<double>(d), WeightMode::numeric(h(rng)))).ok);
    }
  }
}

TEST_CASE("caterpillars: support, signs, cycles") {
  std::mt19937_64 rng(10);
  for (int n = 3; n <= 5; ++n) {
    for (int s = 0; s < n; ++s) {
      for (int t = s + 1; t < n; ++t) {
        auto d = independent_delta(rng, n, s, t);
        auto z = caterpillar_cycle(n, s, t, d);
        CHECK(verify_cycle(z).ok);
        const auto& cat = type_catalog(n);
        for (int i = 0; i < cat.size(); ++i) {
          const bool cat_type = oracle_caterpillar(cat.type(i), s, t);
          CHECK(cat_type == !z.coefficients[i].is_zero());
          if (n == 3) CHECK(cat_type);
        }
      }
    }
  }
}

TEST_CASE("caterpillar sign equals right-hand approaches of a plane representative") {
  std::mt19937_64 rng(14);
  int checked = 0;
  for (int n = 3; n <= 5; ++n) {
    for (int trial = 0; trial < 8; ++trial) {
      const int s = 0, t = 1;
      auto d = independent_delta(rng, n, s, t);
      std::vector<CurveSolution<Q>> sols;
      try {
        sols = curves_through(d, random_points(rng, n - 1));
      } catch (const Error&) {
        continue;
      }
      for (const auto& sol : sols) {
        const auto& ty = sol.type;
        if (!oracle_caterpillar(ty, s, t)) continue;
        auto c = realize_solution(sol, d);
        const int L = ty.leaves();
        auto pos = [&](int node, int from) {
          // Position of a node, or a point along the leg for leaves.
          if (node >= L) return c.positions[node - L];
          return c.positions[from - L] + (node < ty.n ? d[node] : Vec2<Q>());
        };
        // Walk the body from leg s to leg t.
        std::vector<int> path;
        std::vector<int> prev(static_cast<size_t>(ty.node_count()), -2);
        std::vector<int> stack{ty.attach[s]};
        prev[ty.attach[s]] = s;
        while (!stack.empty()) {
          int v = stack.back();
          stack.pop_back();
          for (int w : ty.neighbours(v))
            if (w >= L && prev[w] == -2) {
              prev[w] = v;
              stack.push_back(w);
            }
        }
        for (int v = ty.attach[t]; v != s; v = prev[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        path.push_back(t);
        int right = 0;
        for (size_t k = 0; k + 1 < path.size(); ++k) {
          const int v = path[k];
          if (!ty.is_unmarked_vertex(v)) continue;
          const int before = k == 0 ? s : path[k - 1];
          const int after = path[k + 1];
          int hang = -1;
          for (int w : ty.neighbours(v))
            if (w != before && w != after) hang = w;
          Vec2<Q> travel = pos(after, v) - c.positions[v - L];
          Vec2<Q> h = pos(hang, v) - c.positions[v - L];
          right += cross(travel, h) < 0;
        }
        const int eps = right % 2 ? -1 : 1;
        // Found curves carry the planar orientation, positive multiplicity.
        CHECK(caterpillar_sign(ty, s, t, d) == eps);
        ++checked;
      }
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("caterpillar cycles span the Jacobi space for five legs") {
  std::mt19937_64 rng(15);
  DeltaSet<Q> d;
  for (;;) {
    d = random_real_delta(rng, 5);
    bool ok = true;
    for (int s = 0; s < 5; ++s)
      for (int t = s + 1; t < 5; ++t) ok = ok && is_st_independent(d, s, t);
    if (ok) break;
  }
  std::vector<Cycle> cycles;
  for (int s = 0; s < 5; ++s)
    for (int t = s + 1; t < 5; ++t) cycles.push_back(caterpillar_cycle(5, s, t, d));
  auto rank_of = [](const std::vector<Cycle>& zs) {
    Matrix<Q> m(static_cast<int>(zs.size()), static_cast<int>(zs[0].coefficients.size()));
    for (size_t i = 0; i < zs.size(); ++i)
      for (size_t j = 0; j < zs[i].coefficients.size(); ++j)
        m(static_cast<int>(i), static_cast<int>(j)) = std::get<Q>(zs[i].coefficients[j].value());
    return rank(m);
  };
  CHECK(rank_of(cycles) == 6);
  // The four cycles through leg 1 satisfy one linear relation.
  std::vector<Cycle> first(cycles.begin(), cycles.begin() + 4);  // (1,2) .. (1,5)
  CHECK(rank_of(first) == 3);
}

TEST_CASE("top epsilon coefficient is the caterpillar cycle") {
  std::mt19937_64 rng(16);
  for (int n = 4; n <= 5; ++n) {
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        if (s == t) continue;
        auto d = independent_delta(rng, n, std::min(s, t), std::max(s, t));
        const int deg = n - 2;
        std::vector<Cycle> samples;
        for (int e = 0; e <= deg; ++e) {
          DeltaSet<Q> de = d;
          de.vectors[s] = Q(1 + e) * d[s];
          de.vectors[t] = d[t] - Q(e) * d[s];
          samples.push_back(lie_cycle(n, de, WeightMode::exact()));
        }
        Q factor = 1;
        for (int i = 0; i < n; ++i)
          if (i != s && i != t) factor *= cross(d[i], d[s]);
        // The body is walked from s to t, so the order matters.
        auto z = caterpillar_cycle(n, s, t, d);
        for (size_t k = 0; k < z.coefficients.size(); ++k) {
          // Leading Lagrange coefficient over nodes 0..deg.
          Q top = 0;
          for (int e = 0; e <= deg; ++e) {
            Q w = 1;
            for (int j = 0; j <= deg; ++j)
              if (j != e) w /= Q(e - j);
            top += w * std::get<Q>(samples[e].coefficients[k].value());
          }
          CHECK(top == factor * std::get<Q>(z.coefficients[k].value()));
        }
      }
    }
  }
}
