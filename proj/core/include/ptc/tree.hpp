#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace ptc {

// Leaf-labelled tree with trivalent internal vertices.
// Nodes 0..n-1 are unmarked legs, n..n+m-1 marked legs, the rest internal vertices.
// The order of adj[v] is the cyclic order used as Lie-orientation at unmarked vertices.
struct MarkedType {
  int n = 0;
  int m = 0;
  std::vector<std::array<int, 3>> adj;
  std::vector<int> attach;

  int leaves() const { return n + m; }
  int internal_count() const { return static_cast<int>(adj.size()); }
  int node_count() const { return leaves() + internal_count(); }
  bool is_leaf(int node) const { return node < leaves(); }
  const std::array<int, 3>& neighbours(int node) const { return adj[static_cast<size_t>(node - leaves())]; }
  std::array<int, 3>& neighbours(int node) { return adj[static_cast<size_t>(node - leaves())]; }
  // Internal node carrying marked leg k (the point z_k).
  int marked_vertex(int k) const { return attach[static_cast<size_t>(n + k)]; }
  // Marked leg index at an internal node, or -1.
  int marked_leg_at(int node) const;
  bool is_unmarked_vertex(int node) const { return !is_leaf(node) && marked_leg_at(node) < 0; }

  // Throws InvalidArgument if the adjacency is not a trivalent tree.
  void check() const;
};

// Derived combinatorics of a type.
struct TypeStructure {
  struct Edge {
    int a = 0, b = 0;          // internal nodes, a < b
    int slot_a = 0, slot_b = 0;  // position of the other end in adj
  };
  // side[v - leaves][k]: mask of leaves beyond the k-th neighbour of internal node v.
  std::vector<std::array<std::uint32_t, 3>> side;
  // Unmarked internal nodes in ascending order.
  std::vector<int> unmarked;
  // out_slot[v - leaves]: slot of the outgoing edge of the outer flow, -1 at marked vertices.
  std::vector<int> out_slot;
  std::vector<Edge> edges;
  // edge_at[v - leaves][k]: bounded edge index through slot k, or -1 for a leg.
  std::vector<std::array<int, 3>> edge_at;
  // For each unmarked vertex (in `unmarked` order): incoming edges e1, e2 following the cyclic order.
  std::vector<std::array<int, 2>> incoming;
  bool rigid = false;

  std::uint32_t unmarked_mask = 0;
};

TypeStructure analyze(const MarkedType& t);

// Rigid: every component of the tree cut at marked vertices carries exactly one unmarked leg.
bool is_rigid(const MarkedType& t);

// Key without orientation, e.g. "n3m2:0(1(2(3,4)))".
std::string shape_key(const MarkedType& t);
// Shape key plus the orientation class relative to the canonical orientation.
std::string canonical_form(const MarkedType& t);
// +1 if the cyclic orders agree with the canonical orientation up to an even number of flips.
int orientation_sign(const MarkedType& t);
// Rooted at leg 0 with children ordered by smallest leaf: cyclic order (parent, first, second).
MarkedType with_canonical_orientation(MarkedType t);
// Reverses the cyclic order at one unmarked vertex.
MarkedType flip_orientation(MarkedType t, int node);
// Renumbers internal nodes by a permutation (leaf labels are fixed).
MarkedType relabel_internal(const MarkedType& t, const std::vector<int>& perm);

// Builds a type from an explicit list of node pairs (orientation arbitrary).
MarkedType type_from_edges(int n, int m, const std::vector<std::pair<int, int>>& edges);
std::vector<std::pair<int, int>> type_edges(const MarkedType& t);

// Trivalent trees with n labelled legs and no marked legs; (2n-5)!! of them.
std::vector<MarkedType> enumerate_trivalent_trees(int n);

// Calls fn on each rigid trivalent (n, n-1)-type, in a fixed order, canonical orientation.
void for_each_rigid_type(int n, const std::function<void(const MarkedType&)>& fn);
std::vector<MarkedType> enumerate_rigid_types(int n);
std::uint64_t rigid_type_count(int n);

// Enumerated rigid types for one n, with lookup by key. Shared, built once.
class TypeCatalog {
 public:
  explicit TypeCatalog(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(types_.size()); }
  const MarkedType& type(int i) const { return types_[static_cast<size_t>(i)]; }
  const std::vector<MarkedType>& types() const { return types_; }
  // Index for a canonical key or shape key; -1 if absent.
  int index_of(const std::string& key) const;
  // Index and orientation sign of an arbitrary type relative to the catalogue entry.
  std::pair<int, int> locate(const MarkedType& t) const;

 private:
  void build_index() const;

  int n_;
  std::vector<MarkedType> types_;
  mutable std::once_flag index_once_;
  mutable std::unordered_map<std::string, int> index_;
};

const TypeCatalog& type_catalog(int n);

}  // namespace ptc
