#pragma once

#include <utility>
#include <vector>

#include "qrel/rational.hpp"
#include "qrel/tnorm.hpp"

namespace qrel {

/// A distance distribution function in canonical form: a left-continuous
/// nondecreasing step map [0, inf] -> [0, 1] with phi(0) = 0, represented by
/// its jumps.  Thresholds are finite, nonnegative and strictly increasing;
/// levels lie in (0, 1] and are strictly increasing.  The denoted map is
///
///   phi(s) = 0 for s <= u1,  phi(s) = p_j for u_j < s <= u_{j+1},
///   phi(s) = p_n for s > u_n,
///
/// and the empty jump list denotes the constant-0 function.
class StepFunction {
 public:
  struct Jump {
    Rat threshold;
    Rat level;
    bool operator==(const Jump& o) const {
      return threshold == o.threshold && level == o.level;
    }
  };

  /// The constant-0 function (bottom of the quantale).
  StepFunction() = default;

  /// Canonicalizes an arbitrary list of (threshold, level) pairs under the
  /// max-of-single-jumps reading: sorts, keeps the maximal level per
  /// threshold, drops zero levels and non-increasing tail entries.
  /// Idempotent on canonical input.  Throws RangeError if a level falls
  /// outside [0, 1] or a threshold is negative.
  static StepFunction normalized(std::vector<Jump> raw);

  /// Single jump of height p at threshold u (0 for s <= u, p for s > u).
  static StepFunction point(const Rat& u, const Rat& p);

  /// The unit k: 0 at 0, 1 everywhere above.
  static StepFunction one();

  const std::vector<Jump>& jumps() const { return jumps_; }
  bool is_zero() const { return jumps_.empty(); }

  /// phi(t), with phi(inf) = top level.
  Rat eval(const XRat& t) const;

  /// Right limit phi(t+): the value taken just above t.
  Rat eval_above(const Rat& t) const;

  /// sup over the whole domain; equals eval(inf).
  Rat top_level() const;

  bool operator==(const StepFunction& o) const { return jumps_ == o.jumps_; }
  bool operator!=(const StepFunction& o) const { return !(*this == o); }

 private:
  std::vector<Jump> jumps_;
};

/// Pointwise order phi <= psi.
bool sf_le(const StepFunction& a, const StepFunction& b);

/// Pointwise max / min; finite meets of left-continuous step maps are again
/// left-continuous, so no regularization is needed here.
StepFunction sf_sup(const StepFunction& a, const StepFunction& b);
StepFunction sf_inf(const StepFunction& a, const StepFunction& b);

/// Convolution product (phi (x) psi)(t) = sup_{r+s<=t} phi(r) & psi(s),
/// computed exactly: candidate thresholds are the pairwise threshold sums.
StepFunction sf_convolve(TNorm t, const StepFunction& a, const StepFunction& b);

/// Residual phi -o chi: the largest psi with phi (x) psi <= chi.  Evaluates
/// g(s) = inf_r (phi(r) -> chi(r+s)) at the breakpoints {v - u >= 0} over
/// thresholds v of chi and u of phi, then takes the left-continuous
/// regularization.  Exactness is enforced by the adjunction tests.
StepFunction sf_residuate(TNorm t, const StepFunction& phi, const StepFunction& chi);

std::string to_string(const StepFunction& f);

}  // namespace qrel
