#pragma once

#include "ptc/curve.hpp"
#include "ptc/tree.hpp"
#include "ptc/weights.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ptc {

// Per-type vertex data for fast evaluation over a whole catalogue.
// For each unmarked vertex in reference orientation: the three side masks (unmarked legs only)
// and the slot of the outgoing edge.
struct VertexRecord {
  std::array<std::uint32_t, 3> side{};
  int out = 0;
};

class TypeTable {
 public:
  explicit TypeTable(const TypeCatalog& catalog);
  int n() const { return n_; }
  int size() const { return size_; }
  int vertices_per_type() const { return per_type_; }
  const VertexRecord* vertices(int type) const { return records_.data() + static_cast<size_t>(type) * per_type_; }

 private:
  int n_ = 0, size_ = 0, per_type_ = 0;
  std::vector<VertexRecord> records_;
};

const TypeTable& type_table(int n);

// Chain on the rigid types of one catalogue, coefficients relative to the reference orientations.
struct Cycle {
  int n = 0;
  std::vector<Weight> coefficients;  // aligned with type_catalog(n)
  bool verified = false;

  static Cycle zero(int n, const WeightMode& mode);
  // Coefficient of a type in its own orientation.
  Weight coefficient(const MarkedType& t) const;
  // Keys in canonical form ("...:+" or "...:-"); throws UnknownType.
  static Cycle from_keys(int n, const std::map<std::string, Weight>& entries, const WeightMode& mode);
  // Nonzero entries as canonical key -> coefficient in the reference orientation.
  std::map<std::string, Weight> to_keys() const;
};

// Codimension-one faces: each groups the types sharing a contraction, with induced signs.
class BoundaryComplex {
 public:
  struct Entry {
    int type;
    int sign;
  };
  enum class Kind : std::uint8_t { Jacobi, MarkedPoint };

  explicit BoundaryComplex(int n);
  int n() const { return n_; }
  std::size_t face_count() const { return kinds_.size(); }
  Kind kind(std::size_t f) const { return kinds_[f]; }
  const Entry* begin(std::size_t f) const { return entries_.data() + offsets_[f]; }
  const Entry* end(std::size_t f) const { return entries_.data() + offsets_[f + 1]; }
  std::size_t size(std::size_t f) const { return offsets_[f + 1] - offsets_[f]; }

 private:
  int n_;
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Kind> kinds_;
};

const BoundaryComplex& boundary_complex(int n);

struct CycleCheck {
  bool ok = true;
  std::size_t faces = 0;
  std::size_t violated = 0;
  // First few violated faces, each as the list of "key sign" terms.
  std::vector<std::string> examples;
};

// Every face sum vanishes (to `rel` relative tolerance for doubles).
CycleCheck verify_cycle(const Cycle& z, double rel = 0);

struct RelationRank {
  int generators = 0;
  int relations = 0;
  int rank = 0;
  int dimension = 0;
};

// Unmarked trees modulo antisymmetry and the Jacobi identity.
RelationRank relation_rank(int n);
// Rigid marked types modulo antisymmetry, IHX and marked-point moves.
RelationRank marked_relation_rank(int n);

// Signed sum of all blackboard-oriented types, i.e. the chain with blackboard coefficient 1.
template <class T>
Cycle blackboard_chain(int n, const DeltaSet<T>& delta);

// Caterpillar test and sign for one type; 0 if not an (s,t)-caterpillar. Indices are 0-based.
template <class T>
int caterpillar_sign(const MarkedType& t, int s, int tt, const DeltaSet<T>& delta);

// Throws NotSTIndependent.
template <class T>
Cycle caterpillar_cycle(int n, int s, int t, const DeltaSet<T>& delta);

template <class T>
Cycle lie_cycle(int n, const DeltaSet<T>& delta, const WeightMode& mode);

}  // namespace ptc
