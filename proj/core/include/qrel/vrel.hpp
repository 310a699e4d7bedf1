#pragma once

#include <functional>
#include <vector>

#include "qrel/finite_set.hpp"
#include "qrel/quantale.hpp"

namespace qrel {

/// A finite matrix of quantale values between two named sets: the horizontal
/// morphism of the thin equipment of V-relations.  Entries are stored
/// row-major, rows indexed by the source.
class VRel {
 public:
  VRel(QuantaleId q, FiniteSet source, FiniteSet target, std::vector<QValue> entries);

  /// Constant-fill relation.
  static VRel fill(const QuantaleId& q, const FiniteSet& source, const FiniteSet& target,
                   const QValue& v);

  /// Entrywise construction from a callback (row, col) -> QValue.
  static VRel build(const QuantaleId& q, const FiniteSet& source, const FiniteSet& target,
                    const std::function<QValue(int, int)>& f);

  const QuantaleId& quantale() const { return q_; }
  const FiniteSet& source() const { return src_; }
  const FiniteSet& target() const { return tgt_; }
  int rows() const { return src_.size(); }
  int cols() const { return tgt_.size(); }

  const QValue& at(int i, int j) const { return entries_[i * cols() + j]; }
  void set(int i, int j, QValue v);
  const std::vector<QValue>& entries() const { return entries_; }

  bool operator==(const VRel& o) const {
    return q_ == o.q_ && src_ == o.src_ && tgt_ == o.tgt_ && entries_ == o.entries_;
  }
  bool operator!=(const VRel& o) const { return !(*this == o); }

 private:
  QuantaleId q_;
  FiniteSet src_;
  FiniteSet tgt_;
  std::vector<QValue> entries_;
};

/// Composite by sup-of-tensor matrix multiplication:
/// (J . H)(x, z) = join_y J(x, y) (x) H(y, z).
VRel rel_compose(const VRel& j, const VRel& h);

/// Identity relation: unit on the diagonal, bottom elsewhere.
VRel rel_id(const FiniteSet& a, const QuantaleId& q);

enum class GraphSide : std::uint8_t { companion, conjoint };

/// Companion f_* : A -> C and conjoint f^* : C -> A of a map f : A -> C;
/// unit where f connects the pair, bottom elsewhere.
VRel rel_graph(const SetMap& f, GraphSide side, const QuantaleId& q);

/// Restriction K(f, g)(x, y) = K(fx, gy).
VRel rel_restrict(const VRel& k, const SetMap& f, const SetMap& g);

/// Square cell data: top J : A -> B, left f : A -> C, right g : B -> D,
/// bottom K : C -> D, all over one quantale.
struct CellBoundary {
  VRel top;
  SetMap left;
  SetMap right;
  VRel bottom;

  void validate() const;
};

/// Whether the cell with this boundary exists: J(x,y) <= K(fx, gy) for all
/// x, y.
bool cell_exists(const CellBoundary& b);

enum class ResiduateSide : std::uint8_t { left, right };

/// Left residual J -o K of J : A -> B against K : A -> E, a relation
/// B -> E given by (J -o K)(y, z) = meet_x J(x, y) -o K(x, z); and the right
/// residual K o- H of K : A -> E against H : B -> E, a relation A -> B given
/// by (K o- H)(x, y) = meet_z K(x, z) o- H(y, z).
VRel rel_residuate(ResiduateSide side, const VRel& x, const VRel& y);

/// Transpose.
VRel rel_reverse(const VRel& j);

/// Threshold relation over bool2: x J_v y iff v <= J(x, y).
VRel rel_threshold(const VRel& j, const QValue& v);

/// Embeds a boolean relation into q: unit where true, bottom where false.
VRel rel_from_bool(const VRel& j, const QuantaleId& q);

/// Entrywise order / pointed comparisons.
bool rel_le(const VRel& a, const VRel& b);
VRel rel_join2(const VRel& a, const VRel& b);
VRel rel_meet2(const VRel& a, const VRel& b);

std::string to_string(const VRel& r);

}  // namespace qrel
