#include "ptc/neumann.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace ptc {

template <class T>
LaplacianSystem<T> laplacian_system(const AbstractCurve<T>& g, const BoundaryCurrent<T>& xi) {
  const int n = g.num_vertices;
  LaplacianSystem<T> sys{Matrix<T>(n, n), std::vector<Vec2<T>>(static_cast<size_t>(n))};
  for (const auto& e : g.edges) {
    T w = T(1) / e.length;
    sys.laplacian(e.a, e.a) += w;
    sys.laplacian(e.b, e.b) += w;
    sys.laplacian(e.a, e.b) -= w;
    sys.laplacian(e.b, e.a) -= w;
  }
  for (size_t i = 0; i < g.legs.size(); ++i) sys.rhs[g.legs[i].vertex] += xi[i];
  return sys;
}

template <class T>
Potential<T> solve_neumann(const AbstractCurve<T>& g, const BoundaryCurrent<T>& xi, int root) {
  g.check();
  if (xi.size() != g.legs.size())
    throw Error(ErrorCode::InvalidArgument, "boundary current needs one value per leg");
  if (root < 0 || root >= g.num_vertices) throw Error(ErrorCode::InvalidArgument, "root out of range");
  if (!g.connected()) throw Error(ErrorCode::NotConnected, "graph is not connected");

  Vec2<T> total;
  double scale = 0;
  for (const auto& v : xi) {
    total += v;
    scale = std::max(scale, norm(v));
  }
  bool balanced;
  if constexpr (is_exact_v<T>) {
    balanced = is_zero(total);
  } else {
    balanced = is_zero(total.x, scale) && is_zero(total.y, scale);
  }
  if (!balanced) throw Error(ErrorCode::NoSolution, "boundary currents do not sum to zero");

  const int n = g.num_vertices;
  Potential<T> phi(static_cast<size_t>(n));
  if (n == 1) return phi;

  auto sys = laplacian_system(g, xi);
  Matrix<T> a(n - 1, n - 1), b(n - 1, 2);
  auto idx = [&](int v) { return v < root ? v : v - 1; };
  for (int i = 0; i < n; ++i) {
    if (i == root) continue;
    for (int j = 0; j < n; ++j)
      if (j != root) a(idx(i), idx(j)) = sys.laplacian(i, j);
    b(idx(i), 0) = sys.rhs[i].x;
    b(idx(i), 1) = sys.rhs[i].y;
  }
  auto x = solve(a, b);
  if (!x) throw Error(ErrorCode::NotConnected, "reduced Laplacian is singular");
  for (int i = 0; i < n; ++i)
    if (i != root) phi[i] = Vec2<T>((*x)(idx(i), 0), (*x)(idx(i), 1));
  return phi;
}

template <class T>
std::vector<Vec2<T>> global_current(const AbstractCurve<T>& g, const Potential<T>& phi) {
  std::vector<Vec2<T>> out;
  out.reserve(g.edges.size());
  for (const auto& e : g.edges) out.push_back((phi[e.b] - phi[e.a]) / e.length);
  return out;
}

template <class T>
PlaneCurve<T> realize_current(const AbstractCurve<T>& g, const BoundaryCurrent<T>& xi, int root,
                              const Vec2<T>& root_pos) {
  auto phi = solve_neumann(g, xi, root);
  PlaneCurve<T> c;
  c.base = g;
  c.edge_slopes = global_current(g, phi);
  c.positions.reserve(phi.size());
  for (const auto& p : phi) c.positions.push_back(p + root_pos);
  c.leg_slopes = xi;
  return c;
}

template <class T>
PlaneCurve<T> realize(const AbstractCurve<T>& g, const DeltaSet<T>& delta, int root, const Vec2<T>& root_pos) {
  if (static_cast<int>(g.legs.size()) < delta.size())
    throw Error(ErrorCode::InvalidArgument, "fewer legs than delta vectors");
  BoundaryCurrent<T> xi(g.legs.size());
  for (int i = 0; i < delta.size(); ++i) xi[i] = delta[i];
  return realize_current(g, xi, root, root_pos);
}

template <class T>
SlopeAssignment<T> propagate_slopes(const MarkedType& t, const DeltaSet<T>& delta) {
  if (delta.size() != t.n) throw Error(ErrorCode::InvalidArgument, "delta size differs from leg count");
  auto s = analyze(t);
  SlopeAssignment<T> out;
  out.leaves = t.leaves();
  out.out.resize(s.side.size());
  for (size_t v = 0; v < s.side.size(); ++v) {
    for (int k = 0; k < 3; ++k) {
      std::uint32_t mask = s.side[v][k] & s.unmarked_mask;
      Vec2<T> sum;
      while (mask) {
        sum += delta[std::countr_zero(mask)];
        mask &= mask - 1;
      }
      out.out[v][k] = sum;
    }
  }
  return out;
}

template <class T>
PlaneCurve<T> star_mesh(const PlaneCurve<T>& c, int v) {
  const auto& g = c.base;
  if (v < 0 || v >= g.num_vertices) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
  for (const auto& leg : g.legs)
    if (leg.vertex == v) throw Error(ErrorCode::VertexHasLeg, "vertex " + std::to_string(v) + " carries a leg");

  auto re = [v](int u) { return u < v ? u : u - 1; };
  struct Spoke {
    int w;
    T length;
  };
  std::vector<Spoke> spokes;
  PlaneCurve<T> out;
  out.base.num_vertices = g.num_vertices - 1;
  std::map<std::pair<int, int>, size_t> edge_index;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.a == v || e.b == v) {
      spokes.push_back({e.a == v ? e.b : e.a, e.length});
      continue;
    }
    edge_index[std::minmax(re(e.a), re(e.b))] = out.base.edges.size();
    out.base.edges.push_back({re(e.a), re(e.b), e.length});
    out.edge_slopes.push_back(c.edge_slopes[i]);
  }
  for (const auto& leg : g.legs) out.base.legs.push_back({re(leg.vertex)});
  out.leg_slopes = c.leg_slopes;
  for (int u = 0; u < g.num_vertices; ++u)
    if (u != v) out.positions.push_back(c.positions[u]);

  T conductance(0);
  for (const auto& s : spokes) conductance += T(1) / s.length;
  for (size_t i = 0; i < spokes.size(); ++i) {
    for (size_t j = i + 1; j < spokes.size(); ++j) {
      if (spokes[i].w == spokes[j].w) throw Error(ErrorCode::InvalidArgument, "star has repeated neighbours");
      int a = re(spokes[i].w), b = re(spokes[j].w);
      T length = spokes[i].length * spokes[j].length * conductance;
      auto key = std::minmax(a, b);
      auto it = edge_index.find(key);
      if (it != edge_index.end()) {
        auto& e = out.base.edges[it->second];
        e.length = T(1) / (T(1) / e.length + T(1) / length);
        out.edge_slopes[it->second] = (out.positions[e.b] - out.positions[e.a]) / e.length;
      } else {
        edge_index[key] = out.base.edges.size();
        out.base.edges.push_back({a, b, length});
        out.edge_slopes.push_back((out.positions[b] - out.positions[a]) / length);
      }
    }
  }
  return out;
}

template <class T>
PlaneCurve<T> delta_y(const PlaneCurve<T>& c, int i, int j, int k) {
  const auto& g = c.base;
  auto find = [&](int a, int b) -> int {
    for (size_t e = 0; e < g.edges.size(); ++e)
      if ((g.edges[e].a == a && g.edges[e].b == b) || (g.edges[e].a == b && g.edges[e].b == a))
        return static_cast<int>(e);
    throw Error(ErrorCode::InvalidArgument, "triangle edge missing");
  };
  if (i == j || j == k || i == k) throw Error(ErrorCode::InvalidArgument, "triangle needs three vertices");
  const int eij = find(i, j), ejk = find(j, k), eki = find(k, i);
  // Slope leaving `from` along edge e.
  auto leaving = [&](int e, int from) { return g.edges[e].a == from ? c.edge_slopes[e] : -c.edge_slopes[e]; };
  const T lij = g.edges[eij].length, ljk = g.edges[ejk].length, lki = g.edges[eki].length;
  const T total = lij + ljk + lki;

  PlaneCurve<T> out;
  out.base.num_vertices = g.num_vertices + 1;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (static_cast<int>(e) == eij || static_cast<int>(e) == ejk || static_cast<int>(e) == eki) continue;
    out.base.edges.push_back(g.edges[e]);
    out.edge_slopes.push_back(c.edge_slopes[e]);
  }
  out.base.legs = g.legs;
  out.leg_slopes = c.leg_slopes;
  out.positions = c.positions;

  const int w = g.num_vertices;
  struct Arm {
    int v;
    T length;
    Vec2<T> slope;  // leaving v towards the centre
  };
  Arm arms[3] = {
      {i, lij * lki / total, leaving(eij, i) + leaving(eki, i)},
      {j, lij * ljk / total, leaving(eij, j) + leaving(ejk, j)},
      {k, ljk * lki / total, leaving(ejk, k) + leaving(eki, k)},
  };
  out.positions.push_back(c.positions[i] + arms[0].length * arms[0].slope);
  for (const auto& arm : arms) {
    out.base.edges.push_back({w, arm.v, arm.length});
    out.edge_slopes.push_back(-arm.slope);
  }
  return out;
}

#define PTC_INSTANTIATE(T)                                                                                   \
  template LaplacianSystem<T> laplacian_system<T>(const AbstractCurve<T>&, const BoundaryCurrent<T>&);      \
  template Potential<T> solve_neumann<T>(const AbstractCurve<T>&, const BoundaryCurrent<T>&, int);          \
  template std::vector<Vec2<T>> global_current<T>(const AbstractCurve<T>&, const Potential<T>&);            \
  template PlaneCurve<T> realize<T>(const AbstractCurve<T>&, const DeltaSet<T>&, int, const Vec2<T>&);      \
  template PlaneCurve<T> realize_current<T>(const AbstractCurve<T>&, const BoundaryCurrent<T>&, int,        \
                                            const Vec2<T>&);                                                \
  template SlopeAssignment<T> propagate_slopes<T>(const MarkedType&, const DeltaSet<T>&);                   \
  template PlaneCurve<T> star_mesh<T>(const PlaneCurve<T>&, int);                                           \
  template PlaneCurve<T> delta_y<T>(const PlaneCurve<T>&, int, int, int);

PTC_INSTANTIATE(Rational)
PTC_INSTANTIATE(double)
#undef PTC_INSTANTIATE

}  // namespace ptc
