#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qrel/enriched.hpp"
#include "qrel/vrel.hpp"

namespace qrel {

inline constexpr int kDefaultPowersetCap = 12;

/// The powerset of a finite set, enumerated in ascending bitmask order over
/// element positions; element index equals its bitmask.
FiniteSet powerset_set(const FiniteSet& a, int cap = kDefaultPowersetCap);

std::string subset_label(const FiniteSet& a, unsigned mask);

/// Singleton map A -> PA.
SetMap powerset_singleton_map(const FiniteSet& a, int cap = kDefaultPowersetCap);

/// Union map P(PA) -> PA.
SetMap powerset_union_map(const FiniteSet& a, int cap = kDefaultPowersetCap);

/// Direct-image map Pf : PA -> PC.
SetMap powerset_map(const SetMap& f, int cap = kDefaultPowersetCap);

/// Lax powerset extension of a relation:
/// (PJ)(S, T) = meet_{t in T} join_{s in S} J(s, t).
VRel powerset_extend(const VRel& j, int cap = kDefaultPowersetCap);

/// Ultrafilter extension at the principal instantiation.  On a finite
/// carrier every ultrafilter is principal, under which identification the
/// extension acts as the identity on relation matrices: UJ(ix, iy) = J(x,y).
/// For small carriers the defining inf-sup formula is evaluated in full and
/// checked against that simplification.
VRel ultra_extend(const VRel& j);

/// The algebraic-morphism relation eps_A : PA -> UA, at principal
/// ultrafilters: eps(S, x) = unit iff x in S.
VRel eps_rel(const FiniteSet& a, const QuantaleId& q, int cap = kDefaultPowersetCap);

struct PSpaceFlags {
  bool reflexive = false;
  bool extensional = false;
  bool transitive = false;
  bool finite_join_preserving = false;
  std::string witness;
  bool category() const { return reflexive && extensional && transitive; }
  bool topological() const { return category() && finite_join_preserving; }
};

/// A closure-style structure: delta : PA -> A with cached axiom verdicts.
/// Objects are immutable, so the cache never goes stale.
class PSpace {
 public:
  PSpace(FiniteSet carrier, VRel delta);

  /// Builds delta from its singleton rows by join-extension, which yields an
  /// extensional, finite-join-preserving structure by construction.
  static PSpace from_singleton_rows(const FiniteSet& carrier, const VRel& singleton_rows);

  const FiniteSet& carrier() const { return carrier_; }
  const VRel& delta() const { return delta_; }
  const QuantaleId& quantale() const { return delta_.quantale(); }
  const PSpaceFlags& flags() const;

  bool operator==(const PSpace& o) const {
    return carrier_ == o.carrier_ && delta_ == o.delta_;
  }

 private:
  FiniteSet carrier_;
  VRel delta_;
  mutable std::optional<PSpaceFlags> flags_;
};

PSpaceFlags pspace_axioms(const PSpace& s);

struct USpaceFlags {
  bool reflexive = false;
  bool unitary = false;
  bool category = false;
  std::string witness;
};

/// A convergence-style structure at the principal instantiation:
/// alpha(x, y) stands for alpha(ix, y).
class USpace {
 public:
  USpace(FiniteSet carrier, VRel alpha);

  const FiniteSet& carrier() const { return carrier_; }
  const VRel& alpha() const { return alpha_; }
  const QuantaleId& quantale() const { return alpha_.quantale(); }
  const USpaceFlags& flags() const;

  bool operator==(const USpace& o) const {
    return carrier_ == o.carrier_ && alpha_ == o.alpha_;
  }

 private:
  FiniteSet carrier_;
  VRel alpha_;
  mutable std::optional<USpaceFlags> flags_;
};

USpaceFlags uspace_axioms(const USpace& s);

/// delta(S, x) = join_{s in S} alpha(is, x): the closure structure induced
/// by a convergence structure.
PSpace to_closure(const USpace& s, int cap = kDefaultPowersetCap);

/// alpha(ix, y) = meet_{S containing x} delta(S, y): the convergence
/// structure induced by a closure structure.  For extensional delta this
/// equals delta({x}, y), which is asserted.
USpace to_convergence(const PSpace& s);

/// A compatible pair of an enriched category and a space structure on the
/// same carrier.
struct ModularSpace {
  VCat cat;
  std::variant<PSpace, USpace> structure;

  const QuantaleId& quantale() const { return cat.quantale(); }
  const FiniteSet& carrier() const { return cat.carrier; }
  bool is_pspace() const { return std::holds_alternative<PSpace>(structure); }
  const PSpace& pspace() const { return std::get<PSpace>(structure); }
  const USpace& uspace() const { return std::get<USpace>(structure); }
};

struct ModularityReport {
  bool modular = false;      // the full bimodule-style axiom
  bool normalised = false;   // hom equals the singleton/principal restriction
  std::string witness;
};

/// Checks the modularity axiom.  When the structure satisfies the category
/// axioms and the hom is a lawful category, the short form
/// hom(x,y) <= structure({x}/ix, y) is evaluated too and its equivalence
/// with the full axiom is asserted.
ModularityReport modularity_check(const ModularSpace& m);

/// Equips a category-flagged structure with the hom it induces:
/// hom(x, y) = delta({x}, y) (closure case) or alpha(ix, y) (convergence
/// case).  Refuses structures that are not categories; the result is
/// asserted to be a lawful category and modular.
ModularSpace normalise(const PSpace& s);
ModularSpace normalise(const USpace& s);

struct CocompleteReport {
  bool cocomplete = false;
  /// Generic point per subset (closure case, indexed by subset mask) or per
  /// point (convergence case); -1 where none exists.
  std::vector<int> generic_points;
  bool homomorphism_ok = false;
};

/// Searches for generic points realizing every structure row as a hom row,
/// and checks that any complete choice assignment is a monoid homomorphism.
CocompleteReport cocomplete_check(const ModularSpace& m);

/// The canonical self-structure of the quantale: convergence
/// nu(iy, x) = hom(y, x) and point-set distance on explicitly supplied
/// finite subsets, without materializing the powerset of the quantale.
struct CanonicalSpace {
  QuantaleId quantale;
  Variance variance;

  /// nu(iy, x).
  QValue conv_principal(const QValue& y, const QValue& x) const;

  /// Point-set distance: bottom at the empty set, otherwise
  /// hom(meet S, x) for the lhom variance and hom(join S, x) for rhom.
  QValue distance(std::span<const QValue> subset, const QValue& x) const;

  QValue hom(const QValue& x, const QValue& y) const {
    return CanonicalTarget{quantale, variance}.hom(x, y);
  }
};

CanonicalSpace canonical_space(const QuantaleId& q, Variance variance);

struct ScottStructure {
  VCat lattice;
  std::vector<unsigned> opens;  // downset masks, ascending
  VRel alpha_inf;               // principal convergence: x converges to y iff x <= y
};

/// The inf-convergence structure of a finite complete lattice over bool2 and
/// its topology of downsets.  Asserts that the topology induced from the
/// convergence relation is exactly the downsets and that the directedness
/// clause of Scott-openness is vacuous on finite lattices.  Throws Error
/// when the order is not a lattice.
ScottStructure scott_structure(const VCat& lattice);

struct MinimaxReport {
  bool ok = false;
  std::vector<QValue> values;  // the common value at each principal point
};

/// At every principal ultrafilter, sup_{S in ix} inf_S f and
/// inf_{S in ix} sup_S f agree (and equal f(x)); evaluated exhaustively.
MinimaxReport minimax_check(const FiniteSet& a, const std::vector<QValue>& f,
                            const QuantaleId& q);

}  // namespace qrel
