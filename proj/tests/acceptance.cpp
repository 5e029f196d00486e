// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <ptc/duality.hpp>
#include <ptc/enumeration.hpp>
#include <ptc/jacobi.hpp>
#include <ptc/linalg.hpp>
#include <ptc/moduli.hpp>
#include <ptc/neumann.hpp>
#include <ptc/recursion.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "support.hpp"

using namespace ptc;
using namespace ptc::testing;
using Q = Rational;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Vec2<double> to_d(const Vec2<Q>& v) { return convert_vec<double>(v); }

Outcome neumann() {
  Outcome o;
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_graph(rng);
    auto xi = random_balanced_current(rng, g.legs.size());
    const int r2 = static_cast<int>(rng() % static_cast<unsigned>(g.num_vertices));
    auto a = realize_current(g, xi, 0, Vec2<Q>{});
    auto b = realize_current(g, xi, r2, Vec2<Q>(Q(5, 3), Q(-2)));
    o.require(a.balance_residual() == 0 && a.geometry_residual() == 0, "exact residual on graph " + std::to_string(trial));
    const auto shift = b.positions[0] - a.positions[0];
    for (int v = 0; v < g.num_vertices; ++v)
      o.require(b.positions[v] - a.positions[v] == shift, "roots differ by more than a translation");

    AbstractCurve<double> gd;
    gd.num_vertices = g.num_vertices;
    for (const auto& e : g.edges) gd.edges.push_back({e.a, e.b, e.length.convert_to<double>()});
    for (const auto& l : g.legs) gd.legs.push_back({l.vertex});
    BoundaryCurrent<double> xd;
    for (const auto& x : xi) xd.push_back(to_d(x));
    o.require(realize_current(gd, xd, 0, Vec2<double>{}).balance_residual() < 1e-9, "float residual");

    auto bad = xi;
    bad.back() += Vec2<Q>(Q(1, 2), 0);
    bool rejected = false;
    try {
      realize_current(g, bad, 0, Vec2<Q>{});
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::NoSolution;
    }
    o.require(rejected, "unbalanced current accepted");
  }
  o.detail = o.pass ? "200 graphs, exact residual 0, float < 1e-9" : o.detail;
  return o;
}

Outcome determinant_identity() {
  Outcome o;
  std::mt19937_64 rng(102);
  std::size_t checked = 0;
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::vector<Vec2<std::int64_t>>> sums;
    std::vector<DeltaSet<Q>> deltas;
    for (int k = 0; k < 100; ++k) {
      deltas.push_back(random_delta(rng, n, 5));
      std::vector<Vec2<std::int64_t>> s;
      for (const auto& v : subset_sums(deltas.back())) s.emplace_back(v.x.convert_to<long long>(), v.y.convert_to<long long>());
      sums.push_back(std::move(s));
    }
    const auto& cat = type_catalog(n);
    std::vector<std::int64_t> buf;
    for (const auto& t : cat.types()) {
      EvaluationPlan plan(t);
      buf.resize(static_cast<size_t>(plan.dimension()) * plan.dimension());
      for (size_t k = 0; k < sums.size(); ++k) {
        const std::int64_t mult = plan.multiplicity(sums[k]);
        const std::int64_t expect = (n % 2) ? -mult : mult;
        auto det = plan.determinant(sums[k]);
        const bool ok = det ? *det == expect : ev_matrix(t, deltas[k]).determinant == Q(static_cast<long long>(expect));
        if (!ok) o.require(false, "identity fails for " + canonical_form(t));
        ++checked;
      }
      // The reduced integer determinant is cross-checked against the full rational evaluation map.
      if (&t == &cat.types().front() || (checked % 997) == 0) {
        auto ev = ev_matrix(t, deltas[0]);
        o.require(plan.determinant(sums[0]) && ev.determinant == Q(static_cast<long long>(*plan.determinant(sums[0]))),
                  "reduced and full evaluation maps disagree");
        plan.fill(sums[0], buf.data());
        o.require(determinant_i64(buf.data(), plan.dimension()) == plan.determinant(sums[0]),
                  "reduced and full integer determinants disagree");
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " (type, delta) pairs, n = 2..6";
  return o;
}

Outcome bezout() {
  Outcome o;
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<int> off(-50, 50);
  int random_pairs = 0, homothetic_pairs = 0;
  for (int trial = 0; trial < 1000 && random_pairs < 50; ++trial) {
    auto d1 = random_delta(rng, 3 + trial % 4), d2 = random_delta(rng, 3 + (trial / 4) % 4);
    auto c1 = random_curve(rng, d1, Vec2<Q>{});
    auto c2 = random_curve(rng, d2, Vec2<Q>(Q(off(rng), 7), Q(off(rng), 9)));
    try {
      auto r = intersect(c1, c2);
      ++random_pairs;
      o.require(r.total == 2 * r.mixed_area, "I != 2 MA");
      o.require(r.total * r.total >= r.degree_squared1 * r.degree_squared2, "I < deg1 deg2");
      auto rf = intersect(convert_curve(c1), convert_curve(c2));
      o.require(std::abs(rf.total - to_double(r.total)) <= 1e-9 * std::max(1.0, to_double(r.total)), "float total differs");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotGeneralPosition && e.code() != ErrorCode::DegenerateImmersion) throw;
    }
  }
  for (int trial = 0; trial < 200 && homothetic_pairs < 10; ++trial) {
    auto d = random_delta(rng, 3 + trial % 4);
    DeltaSet<Q> scaled = d;
    const Q k(1 + trial % 3, 1 + trial % 2);
    for (auto& v : scaled.vectors) v = k * v;
    try {
      auto r = intersect(random_curve(rng, d, Vec2<Q>{}), random_curve(rng, scaled, Vec2<Q>(Q(off(rng), 11), Q(off(rng), 13))));
      ++homothetic_pairs;
      o.require(r.homothetic && r.equality && r.total * r.total == r.degree_squared1 * r.degree_squared2,
                "homothetic pair misses equality");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotGeneralPosition && e.code() != ErrorCode::DegenerateImmersion) throw;
    }
  }
  o.require(random_pairs == 50, "fewer than 50 general-position pairs");
  o.require(homothetic_pairs == 10, "fewer than 10 homothetic pairs");
  if (o.pass) o.detail = "50 random pairs, 10 homothetic pairs at equality";
  return o;
}

Outcome jacobi_dimensions() {
  Outcome o;
  const int expect[] = {1, 2, 6, 24};
  std::string dims;
  for (int n = 3; n <= 6; ++n) {
    const int d = relation_rank(n).dimension;
    dims += (dims.empty() ? "" : ", ") + std::to_string(d);
    o.require(d == expect[n - 3], "dimension for n = " + std::to_string(n) + " is " + std::to_string(d));
  }
  if (o.pass) o.detail = "dimensions " + dims;
  return o;
}

Outcome cycle_property() {
  Outcome o;
  std::mt19937_64 rng(105);
  int cycles = 0;
  for (int n = 3; n <= 6; ++n) {
    for (int k = 0; k < 10; ++k) {
      auto d = random_real_delta(rng, n);
      for (double h : {0.0, 1.0 / 3, 0.5, 1.0}) {
        auto mode = h == 0 ? WeightMode::exact() : WeightMode::numeric(h);
        auto check = verify_cycle(lie_cycle(n, d, mode), 1e-9);
        o.require(check.ok, "Lie cycle fails, n = " + std::to_string(n));
        ++cycles;
      }
    }
    DeltaSet<Q> d;
    do {
      d = random_real_delta(rng, n);
    } while (!delta_info(d).three_independent);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        if (s == t) continue;
        o.require(verify_cycle(caterpillar_cycle(n, s, t, d)).ok, "caterpillar fails, n = " + std::to_string(n));
        ++cycles;
      }
  }
  if (o.pass) o.detail = std::to_string(cycles) + " cycles verified";
  return o;
}

Outcome count_invariance() {
  Outcome o;
  std::mt19937_64 rng(106);
  int runs = 0;
  for (int n = 3; n <= 6; ++n)
    for (int k = 0; k < 2; ++k) {
      auto d = random_real_delta(rng, n);
      for (auto mode : {WeightMode::exact(), WeightMode::numeric(1.0 / 3)}) {
        CountOptions opt;
        opt.mode = mode;
        std::optional<Weight> first;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
          opt.seed = seed;
          auto v = refined_invariant(d, opt).value;
          ++runs;
          if (!first) first = v;
          o.require(v.approx_equal(*first, 1e-6), "configurations disagree for n = " + std::to_string(n));
        }
      }
    }
  if (o.pass) o.detail = std::to_string(runs) + " counts, 5 configurations each";
  return o;
}

Outcome recursion_direct() {
  Outcome o;
  std::mt19937_64 rng(107);
  int pairs = 0;
  for (int n = 4; n <= 6; ++n)
    for (int k = 0; k < 3; ++k) {
      auto d = random_real_delta(rng, n);
      for (auto mode : {WeightMode::exact(), WeightMode::numeric(0.5)}) {
        CountOptions opt;
        opt.mode = mode;
        opt.seed = static_cast<std::uint64_t>(k + 11);
        auto direct = refined_invariant(d, opt).value;
        auto rec = recursive_count(d, mode).value;
        o.require(direct.approx_equal(rec, 1e-6), "n = " + std::to_string(n) + ": " + direct.str() + " vs " + rec.str());
        ++pairs;
      }
    }
  if (o.pass) o.detail = std::to_string(pairs) + " comparisons, n = 4..6";
  return o;
}

Outcome tropical() {
  Outcome o;
  const char* expect[] = {"1", "1", "y^-1 + 10 + y"};
  std::string values;
  for (int deg = 1; deg <= 3; ++deg) {
    auto delta = tropical_delta(deg);
    CountOptions opt;
    opt.mode = WeightMode::laurent();
    opt.normalize = true;
    opt.seed = 7;
    auto direct = refined_invariant(delta, opt).value;
    auto rec = recursive_count(delta, WeightMode::laurent()).value.divided(Q(static_cast<long long>(delta_info(delta).aut_size)));
    o.require(direct.str() == expect[deg - 1], "direct d=" + std::to_string(deg) + " gives " + direct.str());
    o.require(rec.str() == expect[deg - 1], "recursion d=" + std::to_string(deg) + " gives " + rec.str());
    values += (values.empty() ? "" : "; ") + direct.str();
    if (deg == 3) {
      const auto& p = std::get<LaurentPoly>(direct.value());
      o.require(p.at_one() == 12 && p.at_minus_one() == 8, "specialisations are not 12 and 8");
      opt.mode = WeightMode::numeric(0);
      o.require(std::abs(refined_invariant(delta, opt).value.to_double() - 12) < 1e-9, "numeric direct at hbar 0");
      o.require(std::abs(recursive_count(delta, WeightMode::numeric(1)).value.to_double() / 216 - 8) < 1e-9,
                "numeric recursion at hbar 1");
    }
  }
  if (o.pass) o.detail = "d = 1, 2, 3: " + values + " (both pipelines)";
  return o;
}

Outcome epsilon_deformation() {
  Outcome o;
  std::mt19937_64 rng(109);
  int checked = 0;
  for (int n = 4; n <= 5; ++n)
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        if (s == t) continue;
        DeltaSet<Q> d;
        do {
          d = random_real_delta(rng, n);
        } while (!is_st_independent(d, std::min(s, t), std::max(s, t)));
        const int deg = n - 2;
        // Z_{Delta_eps} is polynomial of degree n-2 in eps; sample at eps = 0..deg.
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
        auto z = caterpillar_cycle(n, s, t, d);
        for (size_t k = 0; k < z.coefficients.size(); ++k) {
          Q top = 0;
          for (int e = 0; e <= deg; ++e) {
            Q w = 1;
            for (int j = 0; j <= deg; ++j)
              if (j != e) w /= Q(e - j);
            top += w * std::get<Q>(samples[e].coefficients[k].value());
          }
          o.require(top == factor * std::get<Q>(z.coefficients[k].value()), "coefficient mismatch");
          ++checked;
        }
      }
  if (o.pass) o.detail = std::to_string(checked) + " type coefficients, all ordered (s,t)";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"Neumann realization", 10, neumann},
      {"evaluation determinant identity", 120, determinant_identity},
      {"Bezout-Bernstein", 60, bezout},
      {"Jacobi dimensions", 60, jacobi_dimensions},
      {"cycle property", 120, cycle_property},
      {"count invariance", 300, count_invariance},
      {"recursion equals direct count", 300, recursion_direct},
      {"tropical benchmarks", 600, tropical},
      {"epsilon-deformation", 60, epsilon_deformation},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget)) + " s budget)";
    }
    failed += !o.pass;
    std::printf("%s criterion %d: %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
