#include "ptc/recursion.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ptc {

namespace {

using Key = std::vector<std::pair<Rational, Rational>>;

Key key_of(const DeltaSet<Rational>& d) {
  Key k;
  for (const auto& v : d.vectors) k.emplace_back(v.x, v.y);
  std::sort(k.begin(), k.end());
  return k;
}

// Restricted growth strings: label[i] is the block of rest[i].
template <class F>
void for_each_set_partition(int size, F&& fn) {
  std::vector<int> label(static_cast<size_t>(size), 0);
  std::vector<int> max_before(static_cast<size_t>(size), 0);
  if (size == 0) return;
  for (;;) {
    fn(label);
    int i = size - 1;
    while (i > 0 && label[i] == max_before[i] + 1) --i;
    if (i == 0) return;
    ++label[i];
    for (int j = i + 1; j < size; ++j) {
      label[j] = 0;
      max_before[j] = std::max(max_before[j - 1], label[j - 1]);
    }
  }
}

// Angle from `base`, for vectors in the closed left half-plane of base.
bool before(const Vec2<Rational>& base, const Vec2<Rational>& a, const Vec2<Rational>& b) {
  const Rational ya = cross(base, a), yb = cross(base, b);
  const bool a0 = ya == 0 && dot(base, a) > 0, b0 = yb == 0 && dot(base, b) > 0;
  if (a0 != b0) return a0;
  return cross(a, b) > 0;
}

class Recursion {
 public:
  Recursion(const Vec2<Rational>& xi0, const WeightMode& mode) : xi0_(xi0), mode_(mode) {}

  Weight count(const DeltaSet<Rational>& d) {
    const int n = d.size();
    if (n == 2) return Weight::one(mode_);
    if (n == 3) return quantum_weight(abs(cross(d[0], d[1])), mode_);
    auto key = key_of(d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Weight total = Weight::zero(mode_);
    for (const auto& p : admissible_partitions(d, xi0_)) {
      ++terms_;
      std::vector<int> sizes;
      Weight term = Weight::one(mode_);
      Vec2<Rational> body = d[p.s];  // xi_s plus blocks already attached
      for (std::size_t j = 0; j < p.blocks.size(); ++j) {
        Vec2<Rational> block_sum{0, 0};
        DeltaSet<Rational> sub;
        for (int i : p.blocks[j]) {
          block_sum = block_sum + d[i];
          sub.vectors.push_back(d[i]);
        }
        sub.vectors.push_back(-block_sum);
        term *= quantum_weight(cross(block_sum, body), mode_);
        if (term.is_zero()) break;
        term *= count(sub);
        body = body + block_sum;
        sizes.push_back(static_cast<int>(p.blocks[j].size()));
      }
      if (term.is_zero()) continue;
      total += term * Weight(Weight::Value(Rational(multinomial(sizes))));
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

  std::size_t subproblems() const { return memo_.size(); }
  std::size_t terms() const { return terms_; }

 private:
  Vec2<Rational> xi0_;
  WeightMode mode_;
  std::map<Key, Weight> memo_;
  std::size_t terms_ = 0;
};

}  // namespace

void check_direction(const DeltaSet<Rational>& delta, const Vec2<Rational>& xi0) {
  if (is_zero(xi0)) throw Error(ErrorCode::NonGenericDirection, "direction is zero");
  const auto sums = subset_sums(delta);
  const std::uint32_t full = (1u << delta.size()) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (is_zero(sums[mask]) || cross(sums[mask], xi0) != 0) continue;
    std::string legs;
    for (int i = 0; i < delta.size(); ++i)
      if (mask >> i & 1u) legs += (legs.empty() ? "" : ",") + std::to_string(i + 1);
    throw Error(ErrorCode::NonGenericDirection, "direction is parallel to the sum over legs {" + legs + "}");
  }
}

Vec2<Rational> default_direction(const DeltaSet<Rational>& delta) {
  if (delta.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty delta set");
  const Rational c(3, 5), s(4, 5);
  Vec2<Rational> v = delta[0];
  for (int k = 0; k < 4096; ++k) {
    v = Vec2<Rational>(c * v.x - s * v.y, s * v.x + c * v.y);
    try {
      check_direction(delta, v);
      return v;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::NonGenericDirection, "no generic rotation found");
}

Integer multinomial(const std::vector<int>& sizes) {
  Integer r = 1;
  int placed = 0;
  for (int k : sizes) {
    for (int i = 1; i <= k; ++i) r = r * (placed + i) / i;
    placed += k;
  }
  return r;
}

std::vector<AdmissiblePartition> admissible_partitions(const DeltaSet<Rational>& delta, const Vec2<Rational>& xi0) {
  check_direction(delta, xi0);
  const int n = delta.size();
  std::vector<AdmissiblePartition> out;
  if (n < 3) return out;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      const auto &xs = delta[s], &xt = delta[t];
      if (cross(xs, xt) < 0 || cross(xs, xi0) < 0 || cross(xi0, xt) < 0) continue;
      std::vector<int> rest;
      for (int i = 0; i < n; ++i)
        if (i != s && i != t) rest.push_back(i);
      for_each_set_partition(static_cast<int>(rest.size()), [&](const std::vector<int>& label) {
        const int k = *std::max_element(label.begin(), label.end()) + 1;
        AdmissiblePartition p{s, t, std::vector<std::vector<int>>(static_cast<size_t>(k)), {}};
        for (std::size_t i = 0; i < rest.size(); ++i) p.blocks[static_cast<size_t>(label[i])].push_back(rest[i]);
        std::vector<Vec2<Rational>> eta;
        for (const auto& b : p.blocks) {
          Vec2<Rational> e{0, 0};
          for (int i : b) e = e - delta[i];
          if (is_zero(e) || cross(xs, e) < 0 || cross(e, xt) < 0) return;
          eta.push_back(e);
        }
        std::vector<int> order(static_cast<size_t>(k));
        std::iota(order.begin(), order.end(), 0);
        // Blocks are generated with increasing smallest leg, so a stable sort keeps ties canonical.
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return before(xs, eta[a], eta[b]); });
        for (int i = 0; i < k; ++i)
          for (int j = i + 1; j < k; ++j)
            if (cross(eta[order[i]], eta[order[j]]) < 0 ||
                (cross(eta[order[i]], eta[order[j]]) == 0 && dot(eta[order[i]], eta[order[j]]) < 0))
              return;
        AdmissiblePartition q{s, t, {}, {}};
        for (int i : order) {
          q.blocks.push_back(std::move(p.blocks[i]));
          q.eta.push_back(eta[i]);
        }
        out.push_back(std::move(q));
      });
    }
  }
  return out;
}

RecursionResult recursive_count(const DeltaSet<Rational>& delta, const Vec2<Rational>& xi0, const WeightMode& mode) {
  if (mode.kind == WeightMode::Kind::Numeric) check_hbar(mode.hbar);
  check_direction(delta, xi0);
  Recursion r(xi0, mode);
  RecursionResult out;
  out.value = r.count(delta);
  out.xi0 = xi0;
  out.subproblems = r.subproblems();
  out.terms = r.terms();
  return out;
}

RecursionResult recursive_count(const DeltaSet<Rational>& delta, const WeightMode& mode) {
  return recursive_count(delta, default_direction(delta), mode);
}

}  // namespace ptc
