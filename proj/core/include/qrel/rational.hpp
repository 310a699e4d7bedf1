#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "qrel/errors.hpp"

namespace qrel {

/// Exact arbitrary-precision rational, always in lowest terms.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Extended rational: a finite rational or one of the symbols -inf / inf.
class XRat {
 public:
  enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };

  XRat() : kind_(Kind::finite) {}
  XRat(Rat v) : kind_(Kind::finite), value_(std::move(v)) {}  // NOLINT (implicit by design)
  XRat(long v) : kind_(Kind::finite), value_(v) {}            // NOLINT

  static XRat inf() { return XRat(Kind::pos_inf); }
  static XRat minus_inf() { return XRat(Kind::neg_inf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

  /// Finite payload; only meaningful when is_finite().
  const Rat& value() const { return value_; }

  bool operator==(const XRat& o) const {
    if (kind_ != o.kind_) return false;
    return kind_ != Kind::finite || value_ == o.value_;
  }
  bool operator!=(const XRat& o) const { return !(*this == o); }

 private:
  explicit XRat(Kind k) : kind_(k) {}
  Kind kind_;
  Rat value_;
};

/// Numeric comparison in the natural order -inf < finite < inf.
int num_cmp(const XRat& a, const XRat& b);
inline bool num_less(const XRat& a, const XRat& b) { return num_cmp(a, b) < 0; }
inline bool num_leq(const XRat& a, const XRat& b) { return num_cmp(a, b) <= 0; }

/// Extended addition where +inf absorbs everything (including -inf), as
/// forced by tensor having to preserve the empty join in the reversed-order
/// quantales.  -inf + x = -inf for all other x.
XRat xadd_posinf_dominant(const XRat& a, const XRat& b);

/// Truncated difference max(z - x, 0) on [0, inf]; inf - finite = inf,
/// anything - inf = 0.
XRat truncated_diff(const XRat& z, const XRat& x);

std::string to_string(const Rat& r);
std::string to_string(const XRat& x);

/// Parses "p/q", "p", "inf", "-inf".  Returns nullopt on malformed input.
std::optional<XRat> parse_xrat(const std::string& text);
std::optional<Rat> parse_rat(const std::string& text);

}  // namespace qrel
