#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrel/vrel.hpp"

namespace qrel {

/// A finite quantale-enriched category: a carrier with a hom relation
/// subject to 1_A <= hom and hom.hom <= hom.  The laws are not enforced on
/// construction; check_vcat reports on them.
struct VCat {
  FiniteSet carrier;
  VRel hom;

  const QuantaleId& quantale() const { return hom.quantale(); }
  int size() const { return carrier.size(); }

  static VCat discrete(const FiniteSet& a, const QuantaleId& q) {
    return VCat{a, rel_id(a, q)};
  }

  bool operator==(const VCat& o) const { return carrier == o.carrier && hom == o.hom; }
};

struct VCatReport {
  bool unit = true;
  bool assoc = true;
  std::string witness;  // first violation, empty when both laws hold
  bool ok() const { return unit && assoc; }
};

VCatReport check_vcat(const VCat& c);

/// A map between enriched categories; law: A(x,y) <= C(fx,fy).
struct VFunctor {
  SetMap map;
  VCat source;
  VCat target;
};

struct LawReport {
  bool ok = true;
  std::string witness;
};

LawReport check_vfunctor(const VFunctor& f);

/// A bimodule between enriched categories; law: A.J.B <= J.
struct VProf {
  VRel rel;
  VCat source;
  VCat target;
};

LawReport check_vprofunctor(const VProf& j);

enum class Variance : std::uint8_t { lhom, rhom };

enum class KanDirection : std::uint8_t { left, right };

/// The self-enrichment of the quantale, with homs computed on demand as
/// x -o y (lhom) or x o- y (rhom).  Never materialized as a finite VCat.
struct CanonicalTarget {
  QuantaleId quantale;
  Variance variance;

  QValue hom(const QValue& x, const QValue& y) const;
};

/// Kan extension into the canonical self-enriched target, by closed form:
///
///   left  into V_lhom:   l(y) = join_x d(x) (x) J(x,y)
///   left  into V_rhom:   l(y) = meet_x d(x) o- J(x,y)   (commutative only)
///   right into V_rhom:   r(x) = join_y J(x,y) (x) e(y)
///   right into V_lhom:   r(x) = meet_y J(x,y) -o e(y)   (commutative only)
///
/// d_or_e maps the relevant endpoint of J into the quantale (source for
/// left, target for right).  Throws Error("unsupported variance") when a
/// meet-form variant is requested for a non-commutative quantale.
std::vector<QValue> kan_into_canonical(KanDirection dir, const std::vector<QValue>& d_or_e,
                                       const VRel& j, Variance variance);

/// Brute-force Kan extension into a finite target: for each object of the
/// extension's domain, searches M for an object satisfying the defining
/// equation
///
///   left:   M(l y, z) = meet_x J(x,y) -o M(d x, z)   for all z
///   right:  M(z, r x) = meet_y M(z, e y) o- J(x,y)   for all z
///
/// Returns the assignment, or nullopt when some point has no solution.
/// When several objects solve a point they are checked to share their hom
/// profile.
std::optional<SetMap> kan_finite_search(KanDirection dir, const VFunctor& d, const VProf& j,
                                        const VCat& m);

/// Checks the defining equation pointwise for a candidate extension.
bool kan_verify(KanDirection dir, const SetMap& candidate, const VFunctor& d, const VProf& j,
                const VCat& m);

/// Canonical-target flavour: verifies the candidate against the closed form
/// and spot-checks the defining equation on a finite probe of z values.
bool kan_verify_canonical(KanDirection dir, const std::vector<QValue>& candidate,
                          const std::vector<QValue>& d_or_e, const VRel& j, Variance variance);

/// Beck-Chevalley verdict for a verified Kan extension.  Evaluates both the
/// scalar criterion (unit below the per-point gap) and the conjoint/
/// companion relation equality, asserts their agreement, and reports the
/// per-point gap values
///
///   left:   gap(y) = join_x M(l y, d x) (x) J(x, y),     d* . J = l*
///   right:  gap(x) = join_y J(x, y) (x) M(e y, r x),     J . e* = r*
struct BcReport {
  bool holds = false;
  std::vector<QValue> gaps;
};

BcReport bc_check(KanDirection dir, const SetMap& extension, const VFunctor& d, const VProf& j,
                  const VCat& m);
BcReport bc_check_canonical(KanDirection dir, const std::vector<QValue>& extension,
                            const std::vector<QValue>& d_or_e, const VRel& j, Variance variance);

enum class ExactSide : std::uint8_t { left, right };

/// Exactness of a cell boundary: tests f* . J = K(id, g) (left) or
/// J . g* = K(f, id) (right).
bool cell_bc(ExactSide side, const CellBoundary& b);

}  // namespace qrel
