#include "ptc/moduli.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>

namespace ptc {

namespace {

template <class T>
Vec2<T> mask_sum(const DeltaSet<T>& delta, std::uint32_t mask) {
  Vec2<T> sum;
  while (mask) {
    sum += delta[std::countr_zero(mask)];
    mask &= mask - 1;
  }
  return sum;
}

void require_rigid(const MarkedType& t, const TypeStructure& s) {
  if (t.m != t.n - 1 || !s.rigid) throw Error(ErrorCode::InvalidArgument, "type is not a rigid (n, n-1)-tree");
}

// Parent pointers of internal nodes for the tree rooted at internal node `root`.
std::vector<int> parents_from(const MarkedType& t, int root) {
  std::vector<int> parent(static_cast<size_t>(t.node_count()), -1);
  std::vector<int> stack{root};
  parent[root] = root;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : t.neighbours(v)) {
      if (w < t.leaves() || parent[w] != -1) continue;
      parent[w] = v;
      stack.push_back(w);
    }
  }
  return parent;
}

int slot_of(const MarkedType& t, int v, int w) {
  const auto& nb = t.neighbours(v);
  return static_cast<int>(std::find(nb.begin(), nb.end(), w) - nb.begin());
}

// Length columns in orientation order.
std::vector<int> length_columns(const TypeStructure& s) {
  std::vector<int> col(s.edges.size(), -1);
  int c = 0;
  for (const auto& in : s.incoming) {
    col[in[0]] = c++;
    col[in[1]] = c++;
  }
  return col;
}

}  // namespace

template <class T>
T multiplicity(const MarkedType& t, const DeltaSet<T>& delta) {
  auto s = analyze(t);
  require_rigid(t, s);
  const int L = t.leaves();
  T prod(1);
  for (int v : s.unmarked) {
    const int o = s.out_slot[v - L];
    const auto& side = s.side[v - L];
    prod *= cross(mask_sum(delta, side[(o + 1) % 3] & s.unmarked_mask), mask_sum(delta, side[(o + 2) % 3] & s.unmarked_mask));
  }
  return prod;
}

template <class T>
EvaluationMatrix<T> ev_matrix(const MarkedType& t, const DeltaSet<T>& delta) {
  auto s = analyze(t);
  require_rigid(t, s);
  if (delta.size() != t.n) throw Error(ErrorCode::InvalidArgument, "delta size differs from leg count");
  const int L = t.leaves(), m = t.m, dim = 2 * m;
  EvaluationMatrix<T> ev;
  ev.matrix = Matrix<T>(dim, dim);
  ev.root = t.marked_vertex(m - 1);
  auto col = length_columns(s);
  ev.column_edges.assign(s.edges.size(), -1);
  for (size_t e = 0; e < col.size(); ++e) ev.column_edges[col[e]] = static_cast<int>(e);

  auto parent = parents_from(t, ev.root);
  for (int k = 0; k < m; ++k) {
    ev.matrix(2 * k, dim - 2) = T(1);
    ev.matrix(2 * k + 1, dim - 1) = T(1);
    for (int v = t.marked_vertex(k); v != ev.root; v = parent[v]) {
      const int p = parent[v], slot = slot_of(t, p, v);
      const int c = col[s.edge_at[p - L][slot]];
      Vec2<T> slope = mask_sum(delta, s.side[p - L][slot] & s.unmarked_mask);
      ev.matrix(2 * k, c) = slope.x;
      ev.matrix(2 * k + 1, c) = slope.y;
    }
  }
  ev.determinant = determinant(ev.matrix);
  return ev;
}

EvaluationPlan::EvaluationPlan(const MarkedType& t) {
  auto s = analyze(t);
  require_rigid(t, s);
  const int L = t.leaves(), m = t.m;
  dim_ = 2 * m;
  for (int v : s.unmarked) {
    const int o = s.out_slot[v - L];
    vertex_masks_.push_back({s.side[v - L][(o + 1) % 3] & s.unmarked_mask, s.side[v - L][(o + 2) % 3] & s.unmarked_mask});
  }
  auto col = length_columns(s);
  const int root = t.marked_vertex(m - 1);
  auto parent = parents_from(t, root);
  for (int k = 0; k < m; ++k) {
    for (int v = t.marked_vertex(k); v != root; v = parent[v]) {
      const int p = parent[v], slot = slot_of(t, p, v);
      terms_.push_back({k, col[s.edge_at[p - L][slot]], s.side[p - L][slot] & s.unmarked_mask});
    }
  }
}

std::int64_t EvaluationPlan::multiplicity(const std::vector<Vec2<std::int64_t>>& sums) const {
  std::int64_t prod = 1;
  for (const auto& vm : vertex_masks_) prod *= cross(sums[vm[0]], sums[vm[1]]);
  return prod;
}

void EvaluationPlan::fill(const std::vector<Vec2<std::int64_t>>& sums, std::int64_t* out) const {
  std::fill(out, out + dim_ * dim_, 0);
  for (int k = 0; k < dim_ / 2; ++k) {
    out[(2 * k) * dim_ + dim_ - 2] = 1;
    out[(2 * k + 1) * dim_ + dim_ - 1] = 1;
  }
  for (const auto& term : terms_) {
    out[(2 * term.row) * dim_ + term.col] = sums[term.mask].x;
    out[(2 * term.row + 1) * dim_ + term.col] = sums[term.mask].y;
  }
}

std::optional<std::int64_t> EvaluationPlan::determinant(const std::vector<Vec2<std::int64_t>>& sums) const {
  const int r = dim_ - 2;
  std::int64_t block[32 * 32];
  if (r > 32) return std::nullopt;
  std::fill(block, block + r * r, 0);
  // Terms of the root point would land in the dropped rows; it has none.
  for (const auto& term : terms_) {
    block[(2 * term.row) * r + term.col] = sums[term.mask].x;
    block[(2 * term.row + 1) * r + term.col] = sums[term.mask].y;
  }
  return determinant_i64(block, r);
}

template <class T>
AbstractCurve<T> to_abstract_curve(const MarkedType& t, const std::vector<T>& lengths) {
  auto s = analyze(t);
  if (lengths.size() != s.edges.size()) throw Error(ErrorCode::InvalidArgument, "one length per bounded edge");
  const int L = t.leaves();
  AbstractCurve<T> g;
  g.num_vertices = t.internal_count();
  for (size_t e = 0; e < s.edges.size(); ++e) g.edges.push_back({s.edges[e].a - L, s.edges[e].b - L, lengths[e]});
  for (int i = 0; i < L; ++i) g.legs.push_back({t.attach[i] - L});
  return g;
}

template <class T>
PlaneCurve<T> realize_solution(const CurveSolution<T>& s, const DeltaSet<T>& delta) {
  auto g = to_abstract_curve(s.type, s.lengths);
  return realize(g, delta, s.type.marked_vertex(s.type.m - 1) - s.type.leaves(), s.root_pos);
}

namespace {

[[noreturn]] void non_generic(const std::string& why) {
  throw Error(ErrorCode::NonGenericConfiguration, why + "; perturb the points");
}

// Parameters (s, t) > 0 with q1 + s d1 = q2 + t d2.
template <class T>
std::optional<std::pair<T, T>> meet(const Vec2<T>& q1, const Vec2<T>& d1, const Vec2<T>& q2, const Vec2<T>& d2) {
  const Vec2<T> w = q2 - q1;
  const T den = cross(d1, d2);
  const double n1 = norm(d1), n2 = norm(d2), nw = norm(w);
  if (negligible(den, n1 * n2)) {
    const bool z1 = is_zero(d1), z2 = is_zero(d2);
    bool collinear;
    if (z1 && z2) {
      collinear = is_zero(w);
    } else {
      const Vec2<T>& d = z1 ? d2 : d1;
      collinear = negligible(cross(w, d), nw * norm(d));
    }
    if (collinear) non_generic("parallel pieces are collinear");
    return std::nullopt;
  }
  T cs = cross(w, d2), ct = cross(w, d1);
  if constexpr (is_exact_v<T>) {
    // Cheap rejection before dividing.
    const int sd = sign(den), ss = sign(cs) * sd, st = sign(ct) * sd;
    if ((ss < 0 && st <= 0) || (st < 0 && ss <= 0)) return std::nullopt;
  }
  T s = cs / den;
  T t = ct / den;
  const bool s0 = negligible(T(s * T(n1)), std::max(1.0, nw)), t0 = negligible(T(t * T(n2)), std::max(1.0, nw));
  if ((s0 && (t0 || t > 0)) || (t0 && s > 0)) non_generic("a vertex lands on a marked point or another vertex");
  if (s > 0 && t > 0) return std::make_pair(std::move(s), std::move(t));
  return std::nullopt;
}

// A rigid curve through the points, read as flows towards the last leg.
// Flow(U, M): the part upstream of an edge, containing legs U and points M (|U| = |M|);
// its outgoing ray has slope -sum(U). It is either a marked point y whose other side is a
// piece P(y, U, M - y), or the meeting of two smaller flows.
// P(y, D, M'): a path from y with slope sum(D) that absorbs side flows one by one and ends in a leg of D.
template <class T>
class FlowSearch {
 public:
  FlowSearch(const DeltaSet<T>& delta, const std::vector<Vec2<T>>& points)
      : delta_(delta), points_(points), n_(delta.size()), m_(static_cast<int>(points.size())) {
    if (n_ < 2) throw Error(ErrorCode::InvalidArgument, "need at least two legs");
    if (m_ != n_ - 1) throw Error(ErrorCode::InvalidArgument, "need n-1 points");
    if (n_ > 12) throw Error(ErrorCode::InvalidArgument, "too many legs for the flow search");
    sums_ = subset_sums(delta);
    const size_t flow_keys = size_t{1} << (n_ - 1 + m_);
    flow_memo_.resize(flow_keys);
    flow_done_.assign(flow_keys, 0);
    piece_memo_.resize(static_cast<size_t>(m_) * flow_keys);
    piece_done_.assign(piece_memo_.size(), 0);
    for (int i = 0; i < m_; ++i)
      for (int j = i + 1; j < m_; ++j)
        if (is_zero(points_[i] - points_[j])) non_generic("two marked points coincide");
  }

  std::vector<CurveSolution<T>> run() {
    const unsigned legs = (1u << (n_ - 1)) - 1, marks = (1u << m_) - 1;
    std::vector<CurveSolution<T>> out;
    for (int f : flows(legs, marks)) out.push_back(build(f));
    return out;
  }

 private:
  enum class Kind { Leaf, Merge };
  struct Flow {
    Vec2<T> start;
    unsigned legs = 0;
    Kind kind = Kind::Leaf;
    int y = -1, piece = -1;
    int a = -1, b = -1;
    T ta{0}, tb{0};
  };
  struct Step {
    int flow;
    T t_path;
    T t_side;
  };
  struct Piece {
    int y = -1;
    int leg = -1;
    std::vector<Step> steps;
  };

  size_t flow_key(unsigned legs, unsigned marks) const { return (static_cast<size_t>(marks) << (n_ - 1)) | legs; }

  const std::vector<int>& flows(unsigned legs, unsigned marks) {
    const size_t key = flow_key(legs, marks);
    if (flow_done_[key]) return flow_memo_[key];
    std::vector<Flow> found;
    for (unsigned rest = marks; rest; rest &= rest - 1) {
      const int y = std::countr_zero(rest);
      for (int pc : pieces(y, legs, marks & ~(1u << y))) {
        Flow f;
        f.start = points_[y];
        f.legs = legs;
        f.kind = Kind::Leaf;
        f.y = y;
        f.piece = pc;
        found.push_back(std::move(f));
      }
    }
    const unsigned low = legs & (~legs + 1);
    for (unsigned ua = (legs - 1) & legs; ua; ua = (ua - 1) & legs) {
      if (!(ua & low)) continue;
      const unsigned ub = legs & ~ua;
      const int k = std::popcount(ua);
      const Vec2<T> da = -sums_[ua], db = -sums_[ub];
      for (unsigned ma = marks;; ma = (ma - 1) & marks) {
        if (std::popcount(ma) == k) {
          const unsigned mb = marks & ~ma;
          const std::vector<int> as = flows(ua, ma);
          const std::vector<int>& bs = flows(ub, mb);
          for (int ia : as) {
            for (int ib : bs) {
              auto hit = meet(arena_[ia].start, da, arena_[ib].start, db);
              if (!hit) continue;
              Flow f;
              f.start = arena_[ia].start + hit->first * da;
              f.legs = legs;
              f.kind = Kind::Merge;
              f.a = ia;
              f.b = ib;
              f.ta = std::move(hit->first);
              f.tb = std::move(hit->second);
              found.push_back(std::move(f));
            }
          }
        }
        if (ma == 0) break;
      }
    }
    std::vector<int> ids;
    for (auto& f : found) {
      ids.push_back(static_cast<int>(arena_.size()));
      arena_.push_back(std::move(f));
    }
    flow_memo_[key] = std::move(ids);
    flow_done_[key] = 1;
    return flow_memo_[key];
  }

  const std::vector<int>& pieces(int y, unsigned legs, unsigned marks) {
    const size_t key = static_cast<size_t>(y) * flow_memo_.size() + flow_key(legs, marks);
    if (piece_done_[key]) return piece_memo_[key];
    std::vector<int> ids;
    std::vector<Step> steps;
    extend(y, points_[y], legs, marks, steps, ids);
    piece_memo_[key] = std::move(ids);
    piece_done_[key] = 1;
    return piece_memo_[key];
  }

  void extend(int y, const Vec2<T>& q, unsigned legs, unsigned marks, std::vector<Step>& steps, std::vector<int>& ids) {
    if (std::popcount(legs) == 1) {
      if (marks == 0) {
        Piece pc;
        pc.y = y;
        pc.leg = std::countr_zero(legs);
        pc.steps = steps;
        ids.push_back(static_cast<int>(pieces_.size()));
        pieces_.push_back(std::move(pc));
      }
      return;
    }
    const Vec2<T> dir = sums_[legs];
    for (unsigned u1 = (legs - 1) & legs; u1; u1 = (u1 - 1) & legs) {
      const int k = std::popcount(u1);
      if (k > std::popcount(marks)) continue;
      const Vec2<T> side_dir = -sums_[u1];
      for (unsigned m1 = marks; m1; m1 = (m1 - 1) & marks) {
        if (std::popcount(m1) != k) continue;
        const std::vector<int> side = flows(u1, m1);
        for (int f : side) {
          auto hit = meet(q, dir, arena_[f].start, side_dir);
          if (!hit) continue;
          Vec2<T> next = q + hit->first * dir;
          steps.push_back({f, std::move(hit->first), std::move(hit->second)});
          extend(y, next, legs & ~u1, marks & ~m1, steps, ids);
          steps.pop_back();
        }
      }
    }
  }

  struct Builder {
    std::vector<std::pair<int, int>> edges;
    std::map<std::pair<int, int>, T> lengths;
    std::map<int, Vec2<T>> position;
    int next = 0;
  };

  void connect(Builder& b, int u, int v, const T& length) {
    b.edges.push_back({u, v});
    b.lengths[std::minmax(u, v)] = length;
  }

  int build_flow(int fi, Builder& b) {
    const Flow& f = arena_[fi];
    if (f.kind == Kind::Leaf) {
      const int z = b.next++;
      b.position[z] = points_[f.y];
      b.edges.push_back({z, n_ + f.y});
      build_piece(f.piece, z, b);
      return z;
    }
    const int w = b.next++;
    b.position[w] = f.start;
    const int na = build_flow(f.a, b);
    const int nb = build_flow(f.b, b);
    connect(b, na, w, f.ta);
    connect(b, nb, w, f.tb);
    return w;
  }

  void build_piece(int pi, int z, Builder& b) {
    const Piece& pc = pieces_[pi];
    int current = z;
    for (const auto& step : pc.steps) {
      const int w = b.next++;
      const unsigned side_legs = arena_[step.flow].legs;
      b.position[w] = arena_[step.flow].start + step.t_side * (-sums_[side_legs]);
      connect(b, current, w, step.t_path);
      const int ns = build_flow(step.flow, b);
      connect(b, ns, w, step.t_side);
      current = w;
    }
    b.edges.push_back({current, pc.leg});
  }

  CurveSolution<T> build(int top) {
    Builder b;
    const int L = n_ + m_;
    b.next = L;
    const int tail = build_flow(top, b);
    b.edges.push_back({tail, n_ - 1});
    MarkedType t = type_from_edges(n_, m_, b.edges);
    // Blackboard orientation: counterclockwise order of the outgoing directions.
    for (int v = L; v < t.node_count(); ++v) {
      if (t.marked_leg_at(v) >= 0) continue;
      auto& nb = t.neighbours(v);
      std::array<std::pair<Vec2<T>, int>, 3> dirs;
      for (int k = 0; k < 3; ++k) {
        const int w = nb[k];
        dirs[k] = {w < n_ ? delta_[w] : b.position.at(w) - b.position.at(v), w};
      }
      std::sort(dirs.begin(), dirs.end(), [](const auto& x, const auto& y) { return angle_less(x.first, y.first); });
      nb = {dirs[0].second, dirs[1].second, dirs[2].second};
    }
    CurveSolution<T> sol;
    auto s = analyze(t);
    for (const auto& e : s.edges) sol.lengths.push_back(b.lengths.at(std::minmax(e.a, e.b)));
    sol.root_pos = points_[m_ - 1];
    sol.type = std::move(t);
    return sol;
  }

  const DeltaSet<T>& delta_;
  const std::vector<Vec2<T>>& points_;
  int n_, m_;
  std::vector<Vec2<T>> sums_;
  std::vector<Flow> arena_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<int>> flow_memo_;
  std::vector<char> flow_done_;
  std::vector<std::vector<int>> piece_memo_;
  std::vector<char> piece_done_;
};

}  // namespace

template <class T>
std::vector<CurveSolution<T>> curves_through(const DeltaSet<T>& delta, const std::vector<Vec2<T>>& points) {
  FlowSearch<T> search(delta, points);
  return search.run();
}

template <class T>
std::vector<CurveSolution<T>> curves_through_by_types(const DeltaSet<T>& delta, const std::vector<Vec2<T>>& points) {
  const int n = delta.size(), m = n - 1;
  if (static_cast<int>(points.size()) != m) throw Error(ErrorCode::InvalidArgument, "need n-1 points");
  Matrix<T> rhs(2 * m, 1);
  for (int k = 0; k < m; ++k) {
    rhs(2 * k, 0) = points[k].x;
    rhs(2 * k + 1, 0) = points[k].y;
  }
  double scale = 1;
  for (const auto& p : points) scale = std::max(scale, norm(p));
  std::vector<CurveSolution<T>> out;
  for (const auto& t : type_catalog(n).types()) {
    auto ev = ev_matrix(t, delta);
    auto x = negligible(ev.determinant, 0.0) ? std::nullopt : solve(ev.matrix, rhs);
    if (!x) {
      Matrix<T> aug(2 * m, 2 * m + 1);
      for (int i = 0; i < 2 * m; ++i) {
        for (int j = 0; j < 2 * m; ++j) aug(i, j) = ev.matrix(i, j);
        aug(i, 2 * m) = rhs(i, 0);
      }
      if (rank(ev.matrix) == rank(aug)) non_generic("a degenerate type reaches the points");
      continue;
    }
    CurveSolution<T> sol;
    sol.lengths.resize(ev.column_edges.size());
    bool negative = false, vanishing = false;
    for (size_t c = 0; c < ev.column_edges.size(); ++c) {
      const T& l = (*x)(static_cast<int>(c), 0);
      if (negligible(l, scale)) {
        vanishing = true;
      } else if (l < 0) {
        negative = true;
      }
      sol.lengths[ev.column_edges[c]] = l;
    }
    if (negative) continue;
    if (vanishing) non_generic("a solved length vanishes");
    sol.root_pos = Vec2<T>((*x)(2 * m - 2, 0), (*x)(2 * m - 1, 0));
    sol.type = t;
    out.push_back(std::move(sol));
  }
  return out;
}

#define PTC_INSTANTIATE(T)                                                                                   \
  template T multiplicity<T>(const MarkedType&, const DeltaSet<T>&);                                        \
  template EvaluationMatrix<T> ev_matrix<T>(const MarkedType&, const DeltaSet<T>&);                         \
  template AbstractCurve<T> to_abstract_curve<T>(const MarkedType&, const std::vector<T>&);                 \
  template PlaneCurve<T> realize_solution<T>(const CurveSolution<T>&, const DeltaSet<T>&);                  \
  template std::vector<CurveSolution<T>> curves_through<T>(const DeltaSet<T>&, const std::vector<Vec2<T>>&); \
  template std::vector<CurveSolution<T>> curves_through_by_types<T>(const DeltaSet<T>&,                     \
                                                                    const std::vector<Vec2<T>>&);

PTC_INSTANTIATE(Rational)
PTC_INSTANTIATE(double)
#undef PTC_INSTANTIATE

}  // namespace ptc
