#include "ptc/jacobi.hpp"

#include "ptc/linalg.hpp"
#include "ptc/parallel.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace ptc {

TypeTable::TypeTable(const TypeCatalog& catalog) : n_(catalog.n()), size_(catalog.size()), per_type_(std::max(0, catalog.n() - 2)) {
  records_.resize(static_cast<size_t>(size_) * per_type_);
  parallel_for(static_cast<size_t>(size_), [&](size_t i) {
    const auto& t = catalog.type(static_cast<int>(i));
    auto s = analyze(t);
    const int L = t.leaves();
    VertexRecord* out = records_.data() + i * per_type_;
    for (size_t k = 0; k < s.unmarked.size(); ++k) {
      const int v = s.unmarked[k];
      for (int j = 0; j < 3; ++j) out[k].side[j] = s.side[v - L][j] & s.unmarked_mask;
      out[k].out = s.out_slot[v - L];
    }
  });
}

const TypeTable& type_table(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<TypeTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<TypeTable>(type_catalog(n));
  return *slot;
}

Cycle Cycle::zero(int n, const WeightMode& mode) {
  Cycle z;
  z.n = n;
  z.coefficients.assign(static_cast<size_t>(type_catalog(n).size()), Weight::zero(mode));
  return z;
}

Weight Cycle::coefficient(const MarkedType& t) const {
  auto [idx, sign] = type_catalog(n).locate(t);
  if (idx < 0) throw Error(ErrorCode::UnknownType, shape_key(t));
  return coefficients[static_cast<size_t>(idx)].scaled(sign);
}

Cycle Cycle::from_keys(int n, const std::map<std::string, Weight>& entries, const WeightMode& mode) {
  Cycle z = zero(n, mode);
  const auto& cat = type_catalog(n);
  for (const auto& [key, w] : entries) {
    const int idx = cat.index_of(key);
    if (idx < 0) throw Error(ErrorCode::UnknownType, key);
    const int sign = key.ends_with(":-") ? -1 : 1;
    z.coefficients[static_cast<size_t>(idx)] += w.scaled(sign);
  }
  return z;
}

std::map<std::string, Weight> Cycle::to_keys() const {
  std::map<std::string, Weight> out;
  const auto& cat = type_catalog(n);
  for (size_t i = 0; i < coefficients.size(); ++i)
    if (!coefficients[i].is_zero()) out.emplace(canonical_form(cat.type(static_cast<int>(i))), coefficients[i]);
  return out;
}

namespace {

using Key = unsigned __int128;

struct FaceRecord {
  Key key;
  int type;
  int sign;
  bool jacobi;
};

int permutation_parity(std::vector<std::uint32_t>& v) {
  int swaps = 0;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      ++swaps;
    }
  return swaps % 2 ? -1 : 1;
}

}  // namespace

BoundaryComplex::BoundaryComplex(int n) : n_(n) {
  const auto& cat = type_catalog(n);
  const int L = 2 * n - 1;
  if (n < 3) {
    offsets_.push_back(0);
    return;
  }
  if (L * (L - 4) > 128) throw Error(ErrorCode::InvalidArgument, "boundary complex supports n <= 7");
  const std::uint32_t all = (1u << L) - 1;
  const int per_type = 2 * n - 4;
  std::vector<FaceRecord> records(static_cast<size_t>(cat.size()) * per_type);
  parallel_for(static_cast<size_t>(cat.size()), [&](size_t i) {
    const auto& t = cat.type(static_cast<int>(i));
    auto s = analyze(t);
    std::vector<int> order;
    for (const auto& in : s.incoming) {
      order.push_back(in[0]);
      order.push_back(in[1]);
    }
    std::vector<std::uint32_t> mask(s.edges.size());
    for (size_t e = 0; e < s.edges.size(); ++e) {
      std::uint32_t m = s.side[s.edges[e].a - L][s.edges[e].slot_a];
      mask[e] = (m & 1) ? (all & ~m) : m;
    }
    for (int k = 0; k < per_type; ++k) {
      std::vector<std::uint32_t> rest;
      for (int j = 0; j < per_type; ++j)
        if (j != k) rest.push_back(mask[order[j]]);
      const int parity = permutation_parity(rest);
      Key key = 0;
      for (auto m : rest) key = (key << L) | m;
      const auto& e = s.edges[order[k]];
      FaceRecord& r = records[i * per_type + k];
      r.key = key;
      r.type = static_cast<int>(i);
      r.sign = (k % 2 ? -1 : 1) * parity;
      r.jacobi = t.is_unmarked_vertex(e.a) && t.is_unmarked_vertex(e.b);
    }
  });
  std::sort(records.begin(), records.end(), [](const FaceRecord& a, const FaceRecord& b) {
    return a.key < b.key || (a.key == b.key && a.type < b.type);
  });
  entries_.reserve(records.size());
  for (size_t i = 0; i < records.size();) {
    size_t j = i;
    offsets_.push_back(static_cast<std::uint32_t>(entries_.size()));
    kinds_.push_back(records[i].jacobi ? Kind::Jacobi : Kind::MarkedPoint);
    for (; j < records.size() && records[j].key == records[i].key; ++j) entries_.push_back({records[j].type, records[j].sign});
    i = j;
  }
  offsets_.push_back(static_cast<std::uint32_t>(entries_.size()));
}

const BoundaryComplex& boundary_complex(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<BoundaryComplex>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<BoundaryComplex>(n);
  return *slot;
}

namespace {

template <class V>
std::vector<V> extract(const Cycle& z) {
  std::vector<V> out;
  out.reserve(z.coefficients.size());
  for (const auto& w : z.coefficients) {
    const auto& v = w.value();
    if (auto* p = std::get_if<V>(&v)) {
      out.push_back(*p);
    } else if (auto* q = std::get_if<Rational>(&v)) {
      if constexpr (std::is_same_v<V, double>) {
        out.push_back(q->convert_to<double>());
      } else if constexpr (std::is_same_v<V, Rational>) {
        out.push_back(*q);
      } else {
        out.push_back(LaurentPoly::constant(*q));
      }
    } else {
      throw Error(ErrorCode::InvalidArgument, "cycle mixes numeric and Laurent coefficients");
    }
  }
  return out;
}

template <class V>
void check_faces(const Cycle& z, const std::vector<V>& c, double rel, CycleCheck& out) {
  const auto& bc = boundary_complex(z.n);
  const auto& cat = type_catalog(z.n);
  out.faces = bc.face_count();
  for (size_t f = 0; f < bc.face_count(); ++f) {
    bool bad;
    if constexpr (std::is_same_v<V, double>) {
      double sum = 0, scale = 0;
      for (auto* e = bc.begin(f); e != bc.end(f); ++e) {
        sum += e->sign * c[e->type];
        scale = std::max(scale, std::fabs(c[e->type]));
      }
      bad = std::fabs(sum) > (rel > 0 ? rel : tolerance()) * std::max(1.0, scale);
    } else {
      V sum{};
      for (auto* e = bc.begin(f); e != bc.end(f); ++e) {
        if (e->sign > 0) {
          sum += c[e->type];
        } else {
          sum -= c[e->type];
        }
      }
      if constexpr (std::is_same_v<V, LaurentPoly>) {
        bad = !sum.is_zero();
      } else {
        bad = sum != 0;
      }
    }
    if (!bad) continue;
    ++out.violated;
    out.ok = false;
    if (out.examples.size() < 5) {
      std::ostringstream os;
      os << (bc.kind(f) == BoundaryComplex::Kind::Jacobi ? "IHX" : "MP") << ":";
      for (auto* e = bc.begin(f); e != bc.end(f); ++e)
        os << " " << (e->sign > 0 ? "+" : "-") << canonical_form(cat.type(e->type));
      out.examples.push_back(os.str());
    }
  }
}

}  // namespace

CycleCheck verify_cycle(const Cycle& z, double rel) {
  CycleCheck out;
  if (static_cast<int>(z.coefficients.size()) != type_catalog(z.n).size())
    throw Error(ErrorCode::InvalidArgument, "cycle does not match the type catalogue");
  bool has_double = false, has_laurent = false;
  for (const auto& w : z.coefficients) {
    has_double = has_double || std::holds_alternative<double>(w.value());
    has_laurent = has_laurent || std::holds_alternative<LaurentPoly>(w.value());
  }
  if (has_double && has_laurent) throw Error(ErrorCode::InvalidArgument, "cycle mixes numeric and Laurent coefficients");
  if (has_double) {
    check_faces(z, extract<double>(z), rel, out);
  } else if (has_laurent) {
    check_faces(z, extract<LaurentPoly>(z), rel, out);
  } else {
    auto q = extract<Rational>(z);
    // Exact check on integer numerators over a common denominator, when that denominator stays small.
    Integer den = 1;
    for (const auto& c : q) {
      den = lcm(den, Integer(denominator(c)));
      if (msb(den) > 4096) break;
    }
    if (msb(den) > 4096) {
      check_faces(z, q, rel, out);
      return out;
    }
    std::vector<Integer> num;
    num.reserve(q.size());
    // int64 sums cannot overflow when every face has at most 4 terms below 2^60.
    const auto& bc = boundary_complex(z.n);
    size_t widest = 0;
    for (size_t f = 0; f < bc.face_count(); ++f) widest = std::max(widest, bc.size(f));
    bool small = widest <= 4;
    const Integer limit = Integer(1) << 60;
    for (const auto& c : q) {
      num.push_back(numerator(c) * (den / denominator(c)));
      small = small && abs(num.back()) < limit;
    }
    if (small) {
      std::vector<std::int64_t> w(num.size());
      for (size_t i = 0; i < num.size(); ++i) w[i] = num[i].convert_to<std::int64_t>();
      check_faces(z, w, rel, out);
    } else {
      check_faces(z, num, rel, out);
    }
  }
  return out;
}

namespace {

// Rank of a small integer matrix; exact over the rationals.
int integer_rank(const std::vector<std::map<int, int>>& rows, int cols) {
  if (rows.empty() || cols == 0) return 0;
  Matrix<Rational> m(static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, v] : rows[i]) m(static_cast<int>(i), j) = v;
  return rank(m);
}

// Rooted binary trees over leaves 0..k, root standing for the last leg.
struct Bracket {
  struct Node {
    int leaf = -1;
    int left = -1, right = -1;
  };
  std::vector<Node> nodes;
  int root = 0;
};

// Canonical string with children ordered by smallest leaf; returns the sign of the reordering.
std::pair<std::string, int> canonical(const Bracket& b, int node, int& min_leaf) {
  const auto& nd = b.nodes[node];
  if (nd.leaf >= 0) {
    min_leaf = nd.leaf;
    return {std::to_string(nd.leaf), 1};
  }
  int ml, mr;
  auto [ls, lsg] = canonical(b, nd.left, ml);
  auto [rs, rsg] = canonical(b, nd.right, mr);
  int sign = lsg * rsg;
  if (mr < ml) {
    std::swap(ls, rs);
    sign = -sign;
  }
  min_leaf = std::min(ml, mr);
  return {"[" + ls + "," + rs + "]", sign};
}

std::pair<std::string, int> canonical(const Bracket& b) {
  int ml;
  return canonical(b, b.root, ml);
}

std::vector<Bracket> all_brackets(int leaves) {
  std::vector<Bracket> out;
  Bracket start;
  start.nodes.push_back({0, -1, -1});
  std::function<void(Bracket&, int)> grow = [&](Bracket& b, int leaf) {
    if (leaf == leaves) {
      out.push_back(b);
      return;
    }
    const int count = static_cast<int>(b.nodes.size());
    for (int x = 0; x < count; ++x) {
      Bracket c = b;
      // Replace subtree x by [x, leaf]: move x to a fresh slot.
      const int moved = static_cast<int>(c.nodes.size());
      c.nodes.push_back(c.nodes[x]);
      const int fresh = moved + 1;
      c.nodes.push_back({leaf, -1, -1});
      c.nodes[x] = {-1, moved, fresh};
      grow(c, leaf + 1);
    }
  };
  grow(start, 1);
  return out;
}

}  // namespace

RelationRank relation_rank(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "relation_rank needs n >= 3");
  if (n > 8) throw Error(ErrorCode::InvalidArgument, "relation_rank supports n <= 8");
  auto trees = all_brackets(n - 1);
  std::map<std::string, int> index;
  for (const auto& b : trees) index.emplace(canonical(b).first, static_cast<int>(index.size()));
  std::vector<std::map<int, int>> rows;
  for (const auto& b : trees) {
    for (int x = 0; x < static_cast<int>(b.nodes.size()); ++x) {
      const auto& nd = b.nodes[x];
      if (nd.leaf >= 0 || b.nodes[nd.left].leaf >= 0) continue;
      // [[p, q], r] + [[q, r], p] + [[r, p], q] = 0 at node x.
      const int a = nd.left, r = nd.right;
      const int p = b.nodes[a].left, q = b.nodes[a].right;
      std::map<int, int> row;
      const int triples[3][3] = {{p, q, r}, {q, r, p}, {r, p, q}};
      for (const auto& tr : triples) {
        Bracket c = b;
        c.nodes[a] = {-1, tr[0], tr[1]};
        c.nodes[x] = {-1, a, tr[2]};
        auto [key, sign] = canonical(c);
        row[index.at(key)] += sign;
      }
      std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  RelationRank rr;
  rr.generators = static_cast<int>(index.size());
  rr.relations = static_cast<int>(rows.size());
  rr.rank = integer_rank(rows, rr.generators);
  rr.dimension = rr.generators - rr.rank;
  return rr;
}

RelationRank marked_relation_rank(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "marked_relation_rank needs n >= 3");
  const auto& bc = boundary_complex(n);
  const int T = type_catalog(n).size();
  // Signed union-find for two-term faces: value(x) = parity(x) * value(find(x)).
  std::vector<int> parent(T), parity(T, 1);
  std::vector<char> dead(T, 0);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    if (parent[x] == x) return x;
    const int r = find(parent[x]);
    parity[x] *= parity[parent[x]];
    parent[x] = r;
    return r;
  };
  std::vector<size_t> other;
  int relations = 0;
  for (size_t f = 0; f < bc.face_count(); ++f) {
    ++relations;
    if (bc.size(f) != 2) {
      other.push_back(f);
      continue;
    }
    const auto* e = bc.begin(f);
    // s0 z0 + s1 z1 = 0  =>  z0 = -s0 s1 z1.
    const int a = e[0].type, b = e[1].type;
    const int rel = -e[0].sign * e[1].sign;
    const int ra = find(a), rb = find(b);
    if (ra == rb) {
      if (parity[a] * parity[b] != rel) dead[ra] = 1;
      continue;
    }
    parent[ra] = rb;
    parity[ra] = rel * parity[a] * parity[b];
    dead[rb] = dead[rb] || dead[ra];
  }
  std::map<int, int> column;
  for (int x = 0; x < T; ++x) {
    const int r = find(x);
    if (!dead[r]) column.emplace(r, static_cast<int>(column.size()));
  }
  std::vector<std::map<int, int>> rows;
  std::set<std::vector<std::pair<int, int>>> seen;
  for (size_t f : other) {
    std::map<int, int> row;
    for (auto* e = bc.begin(f); e != bc.end(f); ++e) {
      const int r = find(e->type);
      if (dead[r]) continue;
      row[column.at(r)] += e->sign * parity[e->type];
    }
    std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
    if (row.empty()) continue;
    // Normalise the leading sign to drop duplicates.
    std::vector<std::pair<int, int>> v(row.begin(), row.end());
    if (v[0].second < 0)
      for (auto& kv : v) kv.second = -kv.second;
    if (seen.insert(v).second) rows.push_back(std::move(row));
  }
  RelationRank rr;
  rr.generators = T;
  rr.relations = relations;
  const int cols = static_cast<int>(column.size());
  const int r = integer_rank(rows, cols);
  rr.rank = T - cols + r;
  rr.dimension = cols - r;
  return rr;
}

namespace {

template <class T>
int sign_of(const T& x, double scale) {
  if constexpr (is_exact_v<T>) {
    return sign(x);
  } else {
    return sign(x, scale);
  }
}

// Values indexed by a pair of disjoint leg masks; per-vertex quantities only ever pair disjoint sides.
template <class V>
class PairTable {
 public:
  template <class F>
  PairTable(int n, F&& f) : n_(n), values_(std::size_t{1} << (2 * n)) {
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t a = 0; a <= full; ++a) {
      const std::uint32_t rest = full & ~a;
      // Every submask b of rest, including 0.
      for (std::uint32_t b = rest;; b = (b - 1) & rest) {
        values_[index(a, b)] = f(a, b);
        if (b == 0) break;
      }
    }
  }
  const V& operator()(std::uint32_t a, std::uint32_t b) const { return values_[index(a, b)]; }

 private:
  std::size_t index(std::uint32_t a, std::uint32_t b) const { return (static_cast<std::size_t>(a) << n_) | b; }
  int n_;
  std::vector<V> values_;
};

template <class T>
PairTable<std::int8_t> cross_signs(int n, const DeltaSet<T>& delta) {
  const auto sums = subset_sums(delta);
  return PairTable<std::int8_t>(n, [&](std::uint32_t a, std::uint32_t b) {
    return static_cast<std::int8_t>(sign_of(cross(sums[a], sums[b]), norm(sums[a]) * norm(sums[b])));
  });
}

int table_caterpillar_sign(const VertexRecord* rec, int count, int s, int t, const PairTable<std::int8_t>& signs) {
  int eps = 1, mult = 1;
  const std::uint32_t sb = 1u << s, tb = 1u << t;
  for (int k = 0; k < count; ++k) {
    const auto& r = rec[k];
    int ps = -1, pt = -1;
    for (int j = 0; j < 3; ++j) {
      if (r.side[j] & sb) ps = j;
      if (r.side[j] & tb) pt = j;
    }
    if (ps == pt) return 0;
    eps *= signs(r.side[ps], r.side[pt]);
    mult *= signs(r.side[(r.out + 1) % 3], r.side[(r.out + 2) % 3]);
  }
  return eps * mult;
}

}  // namespace

template <class T>
Cycle blackboard_chain(int n, const DeltaSet<T>& delta) {
  const auto& tab = type_table(n);
  const auto signs = cross_signs(n, delta);
  Cycle z = Cycle::zero(n, WeightMode::exact());
  for (int i = 0; i < tab.size(); ++i) {
    const VertexRecord* rec = tab.vertices(i);
    int sg = 1;
    for (int k = 0; k < tab.vertices_per_type(); ++k) sg *= signs(rec[k].side[(rec[k].out + 1) % 3], rec[k].side[(rec[k].out + 2) % 3]);
    z.coefficients[i] = Weight(Rational(sg));
  }
  return z;
}

template <class T>
int caterpillar_sign(const MarkedType& t, int s, int tt, const DeltaSet<T>& delta) {
  auto st = analyze(t);
  const int L = t.leaves();
  std::vector<VertexRecord> rec;
  for (int v : st.unmarked) {
    VertexRecord r;
    for (int j = 0; j < 3; ++j) r.side[j] = st.side[v - L][j] & st.unmarked_mask;
    r.out = st.out_slot[v - L];
    rec.push_back(r);
  }
  return table_caterpillar_sign(rec.data(), static_cast<int>(rec.size()), s, tt, cross_signs(t.n, delta));
}

template <class T>
Cycle caterpillar_cycle(int n, int s, int t, const DeltaSet<T>& delta) {
  if (delta.size() != n) throw Error(ErrorCode::InvalidArgument, "delta size differs from n");
  if (s < 0 || t < 0 || s >= n || t >= n || s == t) throw Error(ErrorCode::InvalidArgument, "bad (s,t) pair");
  if (!is_st_independent(delta, s, t))
    throw Error(ErrorCode::NotSTIndependent, "delta is not (" + std::to_string(s + 1) + "," + std::to_string(t + 1) + ")-independent");
  const auto& tab = type_table(n);
  const auto signs = cross_signs(n, delta);
  const Weight plus(Rational(1)), minus(Rational(-1)), zero(Rational(0));
  Cycle z = Cycle::zero(n, WeightMode::exact());
  for (int i = 0; i < tab.size(); ++i) {
    const int sg = table_caterpillar_sign(tab.vertices(i), tab.vertices_per_type(), s, t, signs);
    z.coefficients[i] = sg > 0 ? plus : sg < 0 ? minus : zero;
  }
  return z;
}

template <class T>
Cycle lie_cycle(int n, const DeltaSet<T>& delta, const WeightMode& mode) {
  if (delta.size() != n) throw Error(ErrorCode::InvalidArgument, "delta size differs from n");
  if (mode.kind == WeightMode::Kind::Numeric) check_hbar(mode.hbar);
  const auto& tab = type_table(n);
  const auto sums = subset_sums(delta);
  const PairTable<Weight> weights(n, [&](std::uint32_t a, std::uint32_t b) { return quantum_weight(cross(sums[a], sums[b]), mode); });
  Cycle z = Cycle::zero(n, mode);
  parallel_for(static_cast<size_t>(tab.size()), [&](size_t i) {
    const VertexRecord* rec = tab.vertices(static_cast<int>(i));
    Weight w = Weight::one(mode);
    for (int k = 0; k < tab.vertices_per_type(); ++k) {
      w *= weights(rec[k].side[(rec[k].out + 1) % 3], rec[k].side[(rec[k].out + 2) % 3]);
      if (w.is_zero()) break;
    }
    z.coefficients[i] = std::move(w);
  });
  return z;
}

#define PTC_INSTANTIATE(T)                                                                    \
  template Cycle blackboard_chain<T>(int, const DeltaSet<T>&);                                \
  template int caterpillar_sign<T>(const MarkedType&, int, int, const DeltaSet<T>&);          \
  template Cycle caterpillar_cycle<T>(int, int, int, const DeltaSet<T>&);                     \
  template Cycle lie_cycle<T>(int, const DeltaSet<T>&, const WeightMode&);

PTC_INSTANTIATE(Rational)
PTC_INSTANTIATE(double)
#undef PTC_INSTANTIATE

}  // namespace ptc
