#include "ptc/tree.hpp"

#include "ptc/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

namespace ptc {

int MarkedType::marked_leg_at(int node) const {
  if (is_leaf(node)) return -1;
  for (int w : neighbours(node))
    if (w >= n && w < leaves()) return w - n;
  return -1;
}

void MarkedType::check() const {
  const int L = leaves();
  auto bad = [](const std::string& why) { return Error(ErrorCode::InvalidArgument, "malformed type: " + why); };
  if (n < 1 || m < 0 || L < 2 || L > 31) throw bad("leg counts out of range");
  if (static_cast<int>(attach.size()) != L) throw bad("attach size");
  if (L == 2) {
    if (!adj.empty() || attach[0] != 1 || attach[1] != 0) throw bad("two-leaf tree");
    return;
  }
  if (internal_count() != L - 2) throw bad("internal vertex count");
  const int N = node_count();
  std::vector<int> degree(static_cast<size_t>(N), 0);
  for (int v = L; v < N; ++v) {
    const auto& nb = neighbours(v);
    for (int k = 0; k < 3; ++k) {
      int w = nb[k];
      if (w < 0 || w >= N || w == v) throw bad("neighbour index");
      if (nb[(k + 1) % 3] == w) throw bad("repeated neighbour");
      ++degree[w];
      if (w < L) {
        if (attach[w] != v) throw bad("leaf attachment");
      } else {
        const auto& back = neighbours(w);
        if (std::find(back.begin(), back.end(), v) == back.end()) throw bad("asymmetric adjacency");
      }
    }
  }
  for (int i = 0; i < L; ++i)
    if (degree[i] != 1) throw bad("leaf degree");
  // Trivalent with L leaves and L-2 internal nodes: connected iff acyclic; check connectivity.
  std::vector<bool> seen(static_cast<size_t>(N), false);
  std::vector<int> stack{attach[0]};
  seen[0] = true;
  seen[attach[0]] = true;
  int count = 2;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : neighbours(v)) {
      if (seen[w]) continue;
      seen[w] = true;
      ++count;
      if (w >= L) stack.push_back(w);
    }
  }
  if (count != N) throw bad("not connected");
  for (int v = L; v < N; ++v) {
    int marks = 0;
    for (int w : neighbours(v)) marks += (w >= n && w < L);
    if (marks > 1) throw bad("two marked legs at one vertex");
  }
}

namespace {

struct Rooted {
  std::vector<int> parent;
  std::vector<int> order;  // preorder of internal nodes
  std::vector<std::uint32_t> sub;
  std::vector<int> min_leaf;
};

Rooted root_at_leaf0(const MarkedType& t) {
  const int L = t.leaves(), N = t.node_count();
  Rooted r;
  r.parent.assign(static_cast<size_t>(N), -1);
  r.sub.assign(static_cast<size_t>(N), 0);
  r.min_leaf.assign(static_cast<size_t>(N), 1 << 30);
  for (int i = 0; i < L; ++i) {
    r.sub[i] = 1u << i;
    r.min_leaf[i] = i;
  }
  if (L == 2) return r;
  std::vector<int> stack{t.attach[0]};
  r.parent[t.attach[0]] = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    r.order.push_back(v);
    for (int w : t.neighbours(v)) {
      if (w == r.parent[v]) continue;
      r.parent[w] = v;
      if (w >= L) stack.push_back(w);
    }
  }
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    int v = *it;
    for (int w : t.neighbours(v)) {
      if (w == r.parent[v]) continue;
      r.sub[v] |= r.sub[w];
      r.min_leaf[v] = std::min(r.min_leaf[v], r.min_leaf[w]);
    }
  }
  return r;
}

// Children of v ordered by smallest leaf below.
std::array<int, 2> ordered_children(const MarkedType& t, const Rooted& r, int v) {
  std::array<int, 2> c{};
  int k = 0;
  for (int w : t.neighbours(v))
    if (w != r.parent[v]) c[k++] = w;
  if (r.min_leaf[c[1]] < r.min_leaf[c[0]]) std::swap(c[0], c[1]);
  return c;
}

int vertex_sign(const std::array<int, 3>& cyc, int p, int first) {
  int k = 0;
  while (cyc[k] != p) ++k;
  return cyc[(k + 1) % 3] == first ? 1 : -1;
}

void append_shape(const MarkedType& t, const Rooted& r, int v, std::string& out) {
  if (v < t.leaves()) {
    out += std::to_string(v);
    return;
  }
  auto c = ordered_children(t, r, v);
  out += '(';
  append_shape(t, r, c[0], out);
  out += ',';
  append_shape(t, r, c[1], out);
  out += ')';
}

}  // namespace

TypeStructure analyze(const MarkedType& t) {
  const int L = t.leaves(), N = t.node_count(), V = t.internal_count();
  TypeStructure s;
  s.unmarked_mask = (t.n >= 32) ? ~0u : ((1u << t.n) - 1);
  if (L == 2) {
    s.rigid = false;
    return s;
  }
  Rooted r = root_at_leaf0(t);
  const std::uint32_t full = (L == 32) ? ~0u : ((1u << L) - 1);
  s.side.resize(static_cast<size_t>(V));
  s.edge_at.assign(static_cast<size_t>(V), {-1, -1, -1});
  s.out_slot.assign(static_cast<size_t>(V), -1);
  std::vector<int> marked_at(static_cast<size_t>(N), -1);
  for (int v = L; v < N; ++v) {
    marked_at[v] = t.marked_leg_at(v);
    if (marked_at[v] < 0) s.unmarked.push_back(v);
    const auto& nb = t.neighbours(v);
    for (int k = 0; k < 3; ++k) {
      int w = nb[k];
      s.side[v - L][k] = (w == r.parent[v]) ? (full & ~r.sub[v]) : r.sub[w];
      if (w >= L && v < w) {
        const auto& back = t.neighbours(w);
        int kb = static_cast<int>(std::find(back.begin(), back.end(), v) - back.begin());
        s.edge_at[v - L][k] = static_cast<int>(s.edges.size());
        s.edge_at[w - L][kb] = static_cast<int>(s.edges.size());
        s.edges.push_back({v, w, k, kb});
      }
    }
  }

  // Outer flow: walk each unmarked leg's component, stopping at marked vertices.
  bool rigid = true;
  std::vector<int> entered(static_cast<size_t>(N), 0);
  std::vector<std::pair<int, int>> stack;
  for (int i = 0; i < t.n && rigid; ++i) {
    stack.assign(1, {t.attach[i], i});
    while (!stack.empty()) {
      auto [u, from] = stack.back();
      stack.pop_back();
      if (u < L) {
        rigid = false;
        break;
      }
      if (marked_at[u] >= 0) {
        ++entered[u];
        continue;
      }
      if (s.out_slot[u - L] != -1) {
        rigid = false;
        break;
      }
      const auto& nb = t.neighbours(u);
      int k = static_cast<int>(std::find(nb.begin(), nb.end(), from) - nb.begin());
      s.out_slot[u - L] = k;
      stack.push_back({nb[(k + 1) % 3], u});
      stack.push_back({nb[(k + 2) % 3], u});
    }
  }
  if (rigid) {
    for (int v : s.unmarked)
      if (s.out_slot[v - L] < 0) rigid = false;
    for (int v = L; v < N; ++v)
      if (marked_at[v] >= 0 && entered[v] != 2) rigid = false;
  }
  s.rigid = rigid;
  if (rigid) {
    for (int v : s.unmarked) {
      int o = s.out_slot[v - L];
      s.incoming.push_back({s.edge_at[v - L][(o + 1) % 3], s.edge_at[v - L][(o + 2) % 3]});
    }
  }
  return s;
}

bool is_rigid(const MarkedType& t) { return analyze(t).rigid; }

std::string shape_key(const MarkedType& t) {
  std::string out = "n" + std::to_string(t.n) + "m" + std::to_string(t.m) + ":";
  if (t.leaves() == 2) return out + "0-1";
  Rooted r = root_at_leaf0(t);
  out += '0';
  append_shape(t, r, t.attach[0], out);
  return out;
}

int orientation_sign(const MarkedType& t) {
  if (t.leaves() == 2) return 1;
  Rooted r = root_at_leaf0(t);
  int sign = 1;
  for (int v : r.order) {
    if (t.marked_leg_at(v) >= 0) continue;
    auto c = ordered_children(t, r, v);
    sign *= vertex_sign(t.neighbours(v), r.parent[v], c[0]);
  }
  return sign;
}

std::string canonical_form(const MarkedType& t) {
  return shape_key(t) + (orientation_sign(t) > 0 ? ":+" : ":-");
}

MarkedType with_canonical_orientation(MarkedType t) {
  if (t.leaves() == 2) return t;
  Rooted r = root_at_leaf0(t);
  for (int v : r.order) {
    auto c = ordered_children(t, r, v);
    t.neighbours(v) = {r.parent[v], c[0], c[1]};
  }
  return t;
}

MarkedType flip_orientation(MarkedType t, int node) {
  auto& nb = t.neighbours(node);
  std::swap(nb[1], nb[2]);
  return t;
}

MarkedType relabel_internal(const MarkedType& t, const std::vector<int>& perm) {
  const int L = t.leaves();
  auto map = [&](int w) { return w < L ? w : L + perm[static_cast<size_t>(w - L)]; };
  MarkedType out = t;
  for (int i = 0; i < t.internal_count(); ++i) {
    auto nb = t.adj[static_cast<size_t>(i)];
    for (int& w : nb) w = map(w);
    out.adj[static_cast<size_t>(perm[static_cast<size_t>(i)])] = nb;
  }
  for (int& a : out.attach) a = map(a);
  return out;
}

MarkedType type_from_edges(int n, int m, const std::vector<std::pair<int, int>>& edges) {
  MarkedType t;
  t.n = n;
  t.m = m;
  const int L = n + m;
  t.attach.assign(static_cast<size_t>(L), -1);
  if (L == 2) {
    t.attach = {1, 0};
    return t;
  }
  t.adj.assign(static_cast<size_t>(L - 2), {-1, -1, -1});
  std::vector<int> fill(static_cast<size_t>(L - 2), 0);
  auto add = [&](int v, int w) {
    if (v < L) {
      if (t.attach[v] != -1) throw Error(ErrorCode::InvalidArgument, "leaf with two edges");
      t.attach[v] = w;
      return;
    }
    if (v - L >= L - 2 || fill[static_cast<size_t>(v - L)] == 3)
      throw Error(ErrorCode::InvalidArgument, "vertex is not trivalent");
    int& f = fill[static_cast<size_t>(v - L)];
    t.adj[static_cast<size_t>(v - L)][f++] = w;
  };
  for (auto [a, b] : edges) {
    add(a, b);
    add(b, a);
  }
  t.check();
  return t;
}

std::vector<std::pair<int, int>> type_edges(const MarkedType& t) {
  std::vector<std::pair<int, int>> out;
  if (t.leaves() == 2) return {{0, 1}};
  for (int i = 0; i < t.leaves(); ++i) out.push_back({i, t.attach[i]});
  for (int v = t.leaves(); v < t.node_count(); ++v)
    for (int w : t.neighbours(v))
      if (w >= t.leaves() && v < w) out.push_back({v, w});
  return out;
}

namespace {

// Edge lists of trivalent trees on legs 0..n-1, internal ids starting at n.
void grow_trees(int n, int k, std::vector<std::pair<int, int>>& edges,
                const std::function<void(const std::vector<std::pair<int, int>>&)>& fn) {
  if (k == n) {
    fn(edges);
    return;
  }
  const int w = n + (k - 2);
  const size_t count = edges.size();
  for (size_t e = 0; e < count; ++e) {
    auto [a, b] = edges[e];
    edges[e] = {a, w};
    edges.push_back({w, b});
    edges.push_back({w, k});
    grow_trees(n, k + 1, edges, fn);
    edges.pop_back();
    edges.pop_back();
    edges[e] = {a, b};
  }
}

void for_each_tree_edges(int n, const std::function<void(const std::vector<std::pair<int, int>>&)>& fn) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two legs");
  std::vector<std::pair<int, int>> edges{{0, 1}};
  grow_trees(n, 2, edges, fn);
}

// Out-edge choices at the internal vertices with no bounded edge chosen from both ends.
void for_each_flow(int n, const std::vector<std::pair<int, int>>& edges,
                   const std::function<void(const std::vector<int>&)>& fn) {
  const int internal = n - 2;
  std::vector<std::vector<int>> incident(static_cast<size_t>(internal));
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    auto [a, b] = edges[e];
    if (a >= n) incident[a - n].push_back(e);
    if (b >= n) incident[b - n].push_back(e);
  }
  std::vector<int> chosen(static_cast<size_t>(internal), -1);
  std::vector<int> used(edges.size(), 0);
  std::function<void(int)> rec = [&](int v) {
    if (v == internal) {
      fn(chosen);
      return;
    }
    for (int e : incident[v]) {
      if (used[e]) continue;
      used[e] = 1;
      chosen[v] = e;
      rec(v + 1);
      used[e] = 0;
    }
  };
  rec(0);
}

}  // namespace

std::vector<MarkedType> enumerate_trivalent_trees(int n) {
  std::vector<MarkedType> out;
  for_each_tree_edges(n, [&](const auto& edges) {
    out.push_back(with_canonical_orientation(type_from_edges(n, 0, edges)));
  });
  return out;
}

void for_each_rigid_type(int n, const std::function<void(const MarkedType&)>& fn) {
  const int m = n - 1, L = n + m;
  for_each_tree_edges(n, [&](const std::vector<std::pair<int, int>>& tree) {
    for_each_flow(n, tree, [&](const std::vector<int>& chosen) {
      std::vector<bool> kept(tree.size(), false);
      for (int e : chosen) kept[e] = true;
      std::vector<int> cut;
      for (int e = 0; e < static_cast<int>(tree.size()); ++e)
        if (!kept[e]) cut.push_back(e);
      auto remap = [&](int x) { return x < n ? x : L + (x - n); };
      std::vector<int> labels(static_cast<size_t>(m));
      std::iota(labels.begin(), labels.end(), 0);
      std::vector<std::pair<int, int>> edges;
      do {
        edges.clear();
        for (int e : chosen) edges.push_back({remap(tree[e].first), remap(tree[e].second)});
        for (size_t j = 0; j < cut.size(); ++j) {
          const int z = L + (n - 2) + static_cast<int>(j);
          auto [a, b] = tree[cut[j]];
          edges.push_back({remap(a), z});
          edges.push_back({z, remap(b)});
          edges.push_back({z, n + labels[j]});
        }
        fn(with_canonical_orientation(type_from_edges(n, m, edges)));
      } while (std::next_permutation(labels.begin(), labels.end()));
    });
  });
}

std::vector<MarkedType> enumerate_rigid_types(int n) {
  std::vector<MarkedType> out;
  std::unordered_set<std::string> seen;
  for_each_rigid_type(n, [&](const MarkedType& t) {
    if (seen.insert(shape_key(t)).second) out.push_back(t);
  });
  return out;
}

std::uint64_t rigid_type_count(int n) {
  std::uint64_t flows = 0;
  for_each_tree_edges(n, [&](const auto& tree) { for_each_flow(n, tree, [&](const auto&) { ++flows; }); });
  std::uint64_t f = 1;
  for (int k = 2; k < n; ++k) f *= static_cast<std::uint64_t>(k);
  return flows * f;
}

TypeCatalog::TypeCatalog(int n) : n_(n), types_(enumerate_rigid_types(n)) {}

void TypeCatalog::build_index() const {
  std::call_once(index_once_, [this] {
    index_.reserve(types_.size());
    for (size_t i = 0; i < types_.size(); ++i) index_.emplace(shape_key(types_[i]), static_cast<int>(i));
  });
}

int TypeCatalog::index_of(const std::string& key) const {
  build_index();
  std::string shape = key;
  if (shape.size() > 2 && (shape.ends_with(":+") || shape.ends_with(":-"))) shape.resize(shape.size() - 2);
  auto it = index_.find(shape);
  return it == index_.end() ? -1 : it->second;
}

std::pair<int, int> TypeCatalog::locate(const MarkedType& t) const {
  build_index();
  auto it = index_.find(shape_key(t));
  if (it == index_.end()) return {-1, 0};
  return {it->second, orientation_sign(t)};
}

const TypeCatalog& type_catalog(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<TypeCatalog>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<TypeCatalog>(n);
  return *slot;
}

}  // namespace ptc
