#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qrel/spaces.hpp"

namespace qrel {

enum class Monad : std::uint8_t { powerset, ultrafilter };
enum class OpenClosed : std::uint8_t { open_side, closed_side };

/// A relation together with structures of one kind (closure or convergence)
/// on both of its endpoints.
struct StructuredRel {
  VRel rel;
  std::variant<PSpace, USpace> source;
  std::variant<PSpace, USpace> target;

  void validate() const;
  bool over_pspaces() const { return std::holds_alternative<PSpace>(source); }
};

struct CheckResult {
  bool ok = false;
  std::string witness;
};

/// Openness / closedness of a horizontal morphism between structured
/// objects:
///
///   open:    alpha . J <= TJ . beta      closed:  TJ . beta <= alpha . J
///
/// with TJ the powerset extension (powerset monad, closure structures) or
/// the principal ultrafilter extension (ultrafilter monad, convergence
/// structures).  For a discrete relation into a preclosure target, the
/// reduced single-image forms are evaluated too and their agreement with the
/// general forms is asserted.
CheckResult open_closed_check(Monad m, OpenClosed side, const StructuredRel& j,
                              int cap = kDefaultPowersetCap);

/// U-compactness of J : A -> B against a convergence structure on A:
/// (UJ)(id, iota_B) <= alpha . J.  For boolean discrete relations the
/// verdict is asserted to agree with fiberwise compactness expressed through
/// ultrafilter convergence.
CheckResult u_compact_check(const VRel& j, const USpace& source);

/// Openness / closedness of a map f : A -> C of structured objects, via its
/// conjoint / companion:
///
///   open:    gamma(id, f) <= (Tf)* . alpha
///   closed:  gamma(Tf, id) <= alpha . f_*
///
/// The optional homs turn the check into its modular form (conjoints and
/// companions taken relative to the given category structures); identity
/// homs recover the plain form.
CheckResult vertical_check(Monad m, OpenClosed side, const SetMap& f,
                           const std::variant<PSpace, USpace>& source,
                           const std::variant<PSpace, USpace>& target,
                           const std::optional<VRel>& source_hom = std::nullopt,
                           const std::optional<VRel>& target_hom = std::nullopt,
                           int cap = kDefaultPowersetCap);

struct ClassicalOpenReport {
  bool p_open = false;          // the powerset-extension inequality
  bool image_closure = false;   // J(cl S) inside cl(J S) for all S
  bool preimage_open = false;   // preimages of opens are open
  bool agree() const { return p_open == image_closure && p_open == preimage_open; }
};

/// The three classical characterizations of openness for a boolean relation
/// between closure spaces; the inputs must satisfy the closure-space axioms.
/// Their agreement is asserted.
ClassicalOpenReport classical_open_equiv(const VRel& j, const PSpace& a, const PSpace& b);

struct PuTransferReport {
  bool open_forward = true;       // U-open implies P-open on induced closures
  bool open_converse = true;      // P-open implies U-open (target unitary)
  bool open_converse_applicable = false;
  bool closed_forward = true;     // U-closed implies U-compact and P-closed
  bool closed_converse = true;    // the reverse (source a category)
  bool closed_converse_applicable = false;
  bool ok() const {
    return open_forward && closed_forward &&
           (!open_converse_applicable || open_converse) &&
           (!closed_converse_applicable || closed_converse);
  }
};

/// Transfers openness/closedness between the convergence relation and its
/// induced closure structure.  The strictness premises hold definitionally
/// at the principal instantiation and are asserted on small carriers.
PuTransferReport pu_transfer_check(const VRel& j, const USpace& a, const USpace& b,
                                   int cap = kDefaultPowersetCap);

enum class SemiMode : std::uint8_t { lower, upper };

/// Semicontinuity of an extended-rational map on a boolean closure space:
/// lower means the preimage of every up-interval (v, inf] is open; upper is
/// dual.  v only needs to range over the finite image.
bool semicontinuity_check(const PSpace& a, const std::vector<XRat>& f, SemiMode mode);

}  // namespace qrel
