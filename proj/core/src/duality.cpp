#include "ptc/duality.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace ptc {

template <class T>
T Polygon<T>::area() const {
  T twice(0);
  const size_t k = vertices.size();
  for (size_t i = 0; i < k; ++i) twice += cross(vertices[i], vertices[(i + 1) % k]);
  return twice / T(2);
}

template <class T>
std::vector<Vec2<T>> Polygon<T>::edge_vectors() const {
  std::vector<Vec2<T>> e;
  const size_t k = vertices.size();
  if (k < 2) return e;
  for (size_t i = 0; i < k; ++i) e.push_back(vertices[(i + 1) % k] - vertices[i]);
  return e;
}

namespace {

template <class T>
double magnitude(const Vec2<T>& v) {
  return std::max(1.0, norm(v));
}

template <class T>
bool same_point(const Vec2<T>& a, const Vec2<T>& b) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return is_zero(norm(a - b), std::max(magnitude(a), magnitude(b)));
  }
}

template <class T>
bool parallel(const Vec2<T>& a, const Vec2<T>& b) {
  return cross_sign(a, b) == 0;
}

// Polygon from edge vectors already sorted by angle.
template <class T>
Polygon<T> chain(const Vec2<T>& start, const std::vector<Vec2<T>>& edges) {
  Polygon<T> p;
  Vec2<T> q = start;
  for (const auto& e : edges) {
    p.vertices.push_back(q);
    q += e;
  }
  return simplify(p);
}

}  // namespace

template <class T>
Polygon<T> simplify(const Polygon<T>& p) {
  std::vector<Vec2<T>> v;
  for (const auto& q : p.vertices)
    if (v.empty() || !same_point(v.back(), q)) v.push_back(q);
  while (v.size() > 1 && same_point(v.front(), v.back())) v.pop_back();
  bool changed = true;
  while (changed && v.size() > 2) {
    changed = false;
    for (size_t i = 0; i < v.size() && v.size() > 2; ++i) {
      const auto& a = v[(i + v.size() - 1) % v.size()];
      const auto& b = v[i];
      const auto& c = v[(i + 1) % v.size()];
      if (parallel(b - a, c - b) && dot(b - a, c - b) > 0) {
        v.erase(v.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return Polygon<T>{v};
}

namespace {

template <class T>
struct Piece {
  Vec2<T> p;
  Vec2<T> d;
  T end{0};
  bool ray = false;
  int source = 0;

  Vec2<T> at(const T& u) const { return p + u * d; }
};

template <class T>
std::vector<Piece<T>> pieces_of(const PlaneCurve<T>& c) {
  std::vector<Piece<T>> out;
  const auto& g = c.base;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    Piece<T> pc;
    pc.p = c.positions[g.edges[e].a];
    pc.d = c.edge_slopes[e];
    pc.end = g.edges[e].length;
    pc.source = static_cast<int>(e);
    if (is_zero(pc.d)) throw Error(ErrorCode::DegenerateImmersion, "bounded edge with zero slope");
    out.push_back(pc);
  }
  for (size_t k = 0; k < g.legs.size(); ++k) {
    if (is_zero(c.leg_slopes[k])) continue;  // marked leg
    Piece<T> pc;
    pc.p = c.positions[g.legs[k].vertex];
    pc.d = c.leg_slopes[k];
    pc.ray = true;
    pc.source = -static_cast<int>(k) - 1;
    out.push_back(pc);
  }
  return out;
}

template <class T>
bool within(const T& u, const Piece<T>& pc) {
  return u >= 0 && (pc.ray || u <= pc.end);
}

template <class T>
struct Crossing {
  T u1, u2;
};

// Common points of two pieces; throws `code` if they overlap along an interval.
template <class T>
std::optional<Crossing<T>> cross_pieces(const Piece<T>& a, const Piece<T>& b, ErrorCode code) {
  const Vec2<T> w = b.p - a.p;
  const T den = cross(a.d, b.d);
  const double scale = norm(a.d) * norm(b.d);
  if (negligible(den, scale)) {
    if (!negligible(cross(w, a.d), std::max(1.0, norm(w)) * norm(a.d))) return std::nullopt;
    // Collinear: compare parameter intervals along a.
    const T dd = dot(a.d, a.d);
    const T s0 = dot(w, a.d) / dd;
    const T dir = dot(b.d, a.d);
    T lo = s0, hi = s0;
    bool lo_inf = false, hi_inf = false;
    if (b.ray) {
      (dir > 0 ? hi_inf : lo_inf) = true;
    } else {
      T s1 = s0 + b.end * dir / dd;
      lo = std::min(s0, s1);
      hi = std::max(s0, s1);
    }
    T alo(0), ahi = a.end;
    const bool ahi_inf = a.ray;
    // Overlap is [max(lo, 0), min(hi, end)].
    T olo = lo_inf ? alo : std::max(lo, alo);
    bool ohi_inf = hi_inf && ahi_inf;
    T ohi = ohi_inf ? T(0) : (hi_inf ? ahi : (ahi_inf ? hi : std::min(hi, ahi)));
    if (ohi_inf || (ohi > olo && !negligible(T(ohi - olo), 1.0))) throw Error(code, "pieces overlap along an interval");
    return std::nullopt;
  }
  T u1 = cross(w, b.d) / den;
  T u2 = cross(w, a.d) / den;
  auto clamp = [](T& u, const Piece<T>& pc) {
    if constexpr (!is_exact_v<T>) {
      const double tol = tolerance() * std::max(1.0, std::fabs(u));
      if (std::fabs(u) <= tol) u = 0;
      if (!pc.ray && std::fabs(u - pc.end) <= tol * std::max(1.0, std::fabs(pc.end))) u = pc.end;
    }
  };
  clamp(u1, a);
  clamp(u2, b);
  if (!within(u1, a) || !within(u2, b)) return std::nullopt;
  return Crossing<T>{u1, u2};
}

template <class T>
class PointRegistry {
 public:
  int id(const Vec2<T>& p) {
    if constexpr (is_exact_v<T>) {
      auto [it, fresh] = index_.emplace(std::make_pair(p.x, p.y), static_cast<int>(points.size()));
      if (fresh) points.push_back(p);
      return it->second;
    } else {
      for (size_t i = 0; i < points.size(); ++i)
        if (same_point(points[i], p)) return static_cast<int>(i);
      points.push_back(p);
      return static_cast<int>(points.size()) - 1;
    }
  }
  std::vector<Vec2<T>> points;

 private:
  std::map<std::pair<T, T>, int> index_;
};

}  // namespace

template <class T>
Overlay<T> overlay(const PlaneCurve<T>& c) {
  auto pcs = pieces_of(c);
  std::vector<std::vector<T>> params(pcs.size());
  for (size_t i = 0; i < pcs.size(); ++i) {
    params[i].push_back(T(0));
    if (!pcs[i].ray) params[i].push_back(pcs[i].end);
  }
  for (size_t i = 0; i < pcs.size(); ++i) {
    for (size_t j = i + 1; j < pcs.size(); ++j) {
      auto hit = cross_pieces(pcs[i], pcs[j], ErrorCode::DegenerateImmersion);
      if (!hit) continue;
      params[i].push_back(hit->u1);
      params[j].push_back(hit->u2);
    }
  }
  PointRegistry<T> reg;
  for (const auto& p : c.positions) reg.id(p);
  struct Link {
    int from, to;
    Vec2<T> slope;
  };
  std::vector<Link> links;
  for (size_t i = 0; i < pcs.size(); ++i) {
    auto& u = params[i];
    std::sort(u.begin(), u.end());
    std::vector<int> ids;
    for (const auto& x : u) {
      int v = reg.id(pcs[i].at(x));
      if (ids.empty() || ids.back() != v) ids.push_back(v);
    }
    for (size_t k = 0; k + 1 < ids.size(); ++k) links.push_back({ids[k], ids[k + 1], pcs[i].d});
    if (pcs[i].ray) links.push_back({ids.back(), -1, pcs[i].d});
  }
  Overlay<T> ov;
  ov.points = reg.points;
  ov.star.resize(ov.points.size());
  for (const auto& l : links) {
    ov.star[l.from].push_back({l.slope, l.to});
    if (l.to >= 0) ov.star[l.to].push_back({-l.slope, l.from});
  }
  for (auto& st : ov.star) {
    std::stable_sort(st.begin(), st.end(), [](const auto& a, const auto& b) { return angle_less(a.slope, b.slope); });
    for (size_t k = 0; k + 1 < st.size(); ++k) {
      const auto& a = st[k].slope;
      const auto& b = st[k + 1].slope;
      if (parallel(a, b) && dot(a, b) > 0) throw Error(ErrorCode::DegenerateImmersion, "two pieces leave a point in one direction");
    }
    if (st.size() > 1) {
      const auto& a = st.back().slope;
      const auto& b = st.front().slope;
      if (parallel(a, b) && dot(a, b) > 0) throw Error(ErrorCode::DegenerateImmersion, "two pieces leave a point in one direction");
    }
  }
  return ov;
}

template <class T>
DualSubdivision<T> dual_subdivision(const PlaneCurve<T>& c, int root) {
  DualSubdivision<T> ds;
  ds.graph = overlay(c);
  const auto& ov = ds.graph;
  const int V = static_cast<int>(ov.points.size());
  if (V == 0) return ds;
  if (root < 0 || root >= V) throw Error(ErrorCode::InvalidArgument, "root is not an overlay vertex");
  // corner[v][i]: dual vertex before the rotated i-th outgoing slope.
  std::vector<std::vector<Vec2<T>>> corner(V);
  std::vector<char> placed(V, 0);
  auto place = [&](int v, size_t i, const Vec2<T>& start) {
    const auto& st = ov.star[v];
    auto& cv = corner[v];
    cv.assign(st.size(), Vec2<T>());
    Vec2<T> q = start;
    for (size_t k = 0; k < st.size(); ++k) {
      const size_t idx = (i + k) % st.size();
      cv[idx] = q;
      q += rot90(st[idx].slope);
    }
    placed[v] = 1;
  };
  place(root, 0, Vec2<T>());
  std::vector<int> queue{root};
  for (size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    const auto& st = ov.star[v];
    for (size_t i = 0; i < st.size(); ++i) {
      const int w = st[i].target;
      if (w < 0 || placed[w]) continue;
      const auto& sw = ov.star[w];
      size_t j = 0;
      while (j < sw.size() && !(sw[j].target == v && is_zero(sw[j].slope + st[i].slope))) ++j;
      const Vec2<T> end = corner[v][(i + 1) % st.size()];
      place(w, j, end);
      queue.push_back(w);
    }
  }
  if (static_cast<int>(queue.size()) != V) throw Error(ErrorCode::NotConnected, "overlay graph is disconnected");
  for (int v = 0; v < V; ++v) ds.cells.push_back(simplify(Polygon<T>{corner[v]}));

  struct LegRef {
    Vec2<T> slope;
    Vec2<T> start;
  };
  std::vector<LegRef> legs;
  for (int v = 0; v < V; ++v)
    for (size_t i = 0; i < ov.star[v].size(); ++i)
      if (ov.star[v][i].target < 0) legs.push_back({ov.star[v][i].slope, corner[v][i]});
  if (legs.empty()) return ds;
  std::stable_sort(legs.begin(), legs.end(), [](const auto& a, const auto& b) { return angle_less(a.slope, b.slope); });
  // Anchor at the first corner of the group of legs parallel to the first one.
  const Vec2<T> axis = rot90(legs[0].slope);
  Vec2<T> anchor = legs[0].start;
  for (const auto& l : legs)
    if (parallel(l.slope, legs[0].slope) && dot(l.slope, legs[0].slope) > 0 && dot(l.start, axis) < dot(anchor, axis))
      anchor = l.start;
  std::vector<Vec2<T>> edges;
  for (const auto& l : legs) edges.push_back(rot90(l.slope));
  ds.outer = chain(anchor, edges);
  return ds;
}

template <class T>
T degree_squared(const PlaneCurve<T>& c) {
  // Only the leg slopes matter for the outer polygon.
  std::vector<Vec2<T>> edges;
  for (const auto& s : c.leg_slopes)
    if (!is_zero(s)) edges.push_back(rot90(s));
  std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return angle_less(a, b); });
  return T(2) * chain(Vec2<T>(), edges).area();
}

template <class T>
double degree(const PlaneCurve<T>& c) {
  return std::sqrt(std::max(0.0, to_double(degree_squared(c))));
}

template <class T>
Polygon<T> minkowski_sum(const Polygon<T>& a, const Polygon<T>& b) {
  if (a.vertices.empty()) return b;
  if (b.vertices.empty()) return a;
  auto lowest = [](const Polygon<T>& p) {
    Vec2<T> best = p.vertices[0];
    for (const auto& v : p.vertices)
      if (v.y < best.y || (v.y == best.y && v.x < best.x)) best = v;
    return best;
  };
  std::vector<Vec2<T>> edges = a.edge_vectors();
  for (const auto& e : b.edge_vectors()) edges.push_back(e);
  edges.erase(std::remove_if(edges.begin(), edges.end(), [](const auto& e) { return is_zero(e); }), edges.end());
  std::stable_sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) { return angle_less(x, y); });
  return chain(lowest(a) + lowest(b), edges);
}

template <class T>
T mixed_area(const Polygon<T>& a, const Polygon<T>& b) {
  return (minkowski_sum(a, b).area() - a.area() - b.area()) / T(2);
}

template <class T>
bool homothetic(const Polygon<T>& a, const Polygon<T>& b) {
  auto ea = simplify(a).edge_vectors(), eb = simplify(b).edge_vectors();
  if (ea.size() != eb.size()) return false;
  if (ea.empty()) return true;
  const size_t k = ea.size();
  for (size_t shift = 0; shift < k; ++shift) {
    const Vec2<T>& x = ea[0];
    const Vec2<T>& y = eb[shift];
    if (!parallel(x, y) || dot(x, y) <= 0) continue;
    const T ratio = dot(y, x) / dot(x, x);
    bool ok = true;
    for (size_t i = 0; i < k && ok; ++i) ok = approx_equal(eb[(i + shift) % k], ratio * ea[i]);
    if (ok) return true;
  }
  return false;
}

template <class T>
IntersectionReport<T> intersect(const PlaneCurve<T>& c1, const PlaneCurve<T>& c2) {
  auto p1 = pieces_of(c1), p2 = pieces_of(c2);
  IntersectionReport<T> r;
  for (const auto& a : p1) {
    for (const auto& b : p2) {
      auto hit = cross_pieces(a, b, ErrorCode::NotGeneralPosition);
      if (!hit) continue;
      const bool interior_a = hit->u1 > 0 && (a.ray || hit->u1 < a.end);
      const bool interior_b = hit->u2 > 0 && (b.ray || hit->u2 < b.end);
      if (!interior_a || !interior_b) throw Error(ErrorCode::NotGeneralPosition, "a vertex lies on the other curve");
      IntersectionPoint<T> ip;
      ip.point = a.at(hit->u1);
      ip.piece1 = a.source;
      ip.piece2 = b.source;
      ip.multiplicity = ScalarTraits<T>::abs(cross(a.d, b.d));
      r.total += ip.multiplicity;
      r.points.push_back(std::move(ip));
    }
  }
  auto outer = [](const PlaneCurve<T>& c) {
    std::vector<Vec2<T>> edges;
    for (const auto& s : c.leg_slopes)
      if (!is_zero(s)) edges.push_back(rot90(s));
    std::stable_sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return angle_less(a, b); });
    return chain(Vec2<T>(), edges);
  };
  const auto A = outer(c1), B = outer(c2);
  r.mixed_area = mixed_area(A, B);
  r.degree_squared1 = T(2) * A.area();
  r.degree_squared2 = T(2) * B.area();
  r.total_matches_mixed_area = approx_equal(r.total, T(T(2) * r.mixed_area));
  // I >= deg1 deg2 compared through squares, both sides nonnegative.
  const T lhs = r.total * r.total, rhs = r.degree_squared1 * r.degree_squared2;
  r.equality = approx_equal(lhs, rhs);
  r.bezout_holds = r.equality || lhs > rhs;
  r.homothetic = homothetic(A, B);
  return r;
}

template <class T>
PlaneCurve<T> disjoint_union(const PlaneCurve<T>& c1, const PlaneCurve<T>& c2) {
  PlaneCurve<T> u = c1;
  const int shift = c1.base.num_vertices;
  u.base.num_vertices += c2.base.num_vertices;
  for (auto e : c2.base.edges) {
    e.a += shift;
    e.b += shift;
    u.base.edges.push_back(e);
  }
  for (auto l : c2.base.legs) {
    l.vertex += shift;
    u.base.legs.push_back(l);
  }
  u.positions.insert(u.positions.end(), c2.positions.begin(), c2.positions.end());
  u.edge_slopes.insert(u.edge_slopes.end(), c2.edge_slopes.begin(), c2.edge_slopes.end());
  u.leg_slopes.insert(u.leg_slopes.end(), c2.leg_slopes.begin(), c2.leg_slopes.end());
  return u;
}

#define PTC_INSTANTIATE(T)                                                                        \
  template struct Polygon<T>;                                                                     \
  template Polygon<T> simplify<T>(const Polygon<T>&);                                             \
  template Overlay<T> overlay<T>(const PlaneCurve<T>&);                                           \
  template DualSubdivision<T> dual_subdivision<T>(const PlaneCurve<T>&, int);                     \
  template T degree_squared<T>(const PlaneCurve<T>&);                                             \
  template double degree<T>(const PlaneCurve<T>&);                                                \
  template Polygon<T> minkowski_sum<T>(const Polygon<T>&, const Polygon<T>&);                     \
  template T mixed_area<T>(const Polygon<T>&, const Polygon<T>&);                                 \
  template bool homothetic<T>(const Polygon<T>&, const Polygon<T>&);                              \
  template IntersectionReport<T> intersect<T>(const PlaneCurve<T>&, const PlaneCurve<T>&);        \
  template PlaneCurve<T> disjoint_union<T>(const PlaneCurve<T>&, const PlaneCurve<T>&);

PTC_INSTANTIATE(Rational)
PTC_INSTANTIATE(double)
#undef PTC_INSTANTIATE

}  // namespace ptc
