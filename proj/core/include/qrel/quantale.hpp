#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>

#include "qrel/errors.hpp"
#include "qrel/rational.hpp"
#include "qrel/step_function.hpp"
#include "qrel/tnorm.hpp"

namespace qrel {

/// The five quantale families.
///
///   bool2          two truth values with conjunction
///   lawvere        [0, inf] with the reversed order and addition
///   extended_real  [-inf, inf] with the reversed order and addition
///   unit_interval  [0, 1] rationals under a t-norm
///   delta          distance distribution functions under convolution
enum class Family : std::uint8_t { bool2, lawvere, extended_real, unit_interval, delta };

/// Identifies one concrete quantale.  unit_interval and delta carry a t-norm
/// tag; the other families carry none.
class QuantaleId {
 public:
  static QuantaleId bool2() { return QuantaleId(Family::bool2); }
  static QuantaleId lawvere() { return QuantaleId(Family::lawvere); }
  static QuantaleId extended_real() { return QuantaleId(Family::extended_real); }
  static QuantaleId unit_interval(TNorm t) { return QuantaleId(Family::unit_interval, t); }
  static QuantaleId delta(TNorm t) { return QuantaleId(Family::delta, t); }

  Family family() const { return family_; }
  bool has_tnorm() const {
    return family_ == Family::unit_interval || family_ == Family::delta;
  }
  TNorm tnorm() const { return tnorm_; }

  bool operator==(const QuantaleId& o) const {
    if (family_ != o.family_) return false;
    return !has_tnorm() || tnorm_ == o.tnorm_;
  }
  bool operator!=(const QuantaleId& o) const { return !(*this == o); }

  /// "bool", "lawvere", "real", "unit:product", "delta:min", ...
  std::string name() const;
  static std::optional<QuantaleId> parse(const std::string& text);

 private:
  explicit QuantaleId(Family f, TNorm t = TNorm::product) : family_(f), tnorm_(t) {}
  Family family_;
  TNorm tnorm_;
};

/// One element of a quantale.  The payload variant matches the family of the
/// carried QuantaleId; every operation re-checks this and throws
/// QuantaleMismatch on disagreement.
class QValue {
 public:
  static QValue truth(bool b) { return QValue(QuantaleId::bool2(), b); }
  static QValue lawvere(XRat v);
  static QValue extended_real(XRat v);
  static QValue unit_interval(TNorm t, Rat v);
  static QValue delta(TNorm t, StepFunction f);

  const QuantaleId& id() const { return id_; }

  bool as_bool() const { return std::get<bool>(payload_); }
  const XRat& as_xrat() const { return std::get<XRat>(payload_); }
  const StepFunction& as_step() const { return std::get<StepFunction>(payload_); }

  /// Structural equality; values of different quantales are never equal.
  bool operator==(const QValue& o) const {
    return id_ == o.id_ && payload_ == o.payload_;
  }
  bool operator!=(const QValue& o) const { return !(*this == o); }

 private:
  template <typename T>
  QValue(QuantaleId id, T payload) : id_(id), payload_(std::move(payload)) {}
  QuantaleId id_;
  std::variant<bool, XRat, StepFunction> payload_;
};

QValue q_bottom(const QuantaleId& q);
QValue q_top(const QuantaleId& q);
QValue q_unit(const QuantaleId& q);

/// Order of the quantale.  For lawvere and extended_real this is the
/// REVERSED numeric order; for delta it is the pointwise order.
bool q_le(const QuantaleId& q, const QValue& a, const QValue& b);

/// Least upper / greatest lower bound of finitely many values;
/// q_join({}) = bottom and q_meet({}) = top.
QValue q_join(const QuantaleId& q, std::span<const QValue> xs);
QValue q_meet(const QuantaleId& q, std::span<const QValue> xs);
QValue q_join2(const QuantaleId& q, const QValue& a, const QValue& b);
QValue q_meet2(const QuantaleId& q, const QValue& a, const QValue& b);

/// Monoid multiplication.
QValue q_tensor(const QuantaleId& q, const QValue& a, const QValue& b);

/// Residuations: q_lhom(x, z) = sup{v : x (x) v <= z} and
/// q_rhom(z, y) = sup{v : v (x) y <= z}.  All five families are commutative,
/// so the two coincide; both are kept for the sake of the algebra.
QValue q_lhom(const QuantaleId& q, const QValue& x, const QValue& z);
QValue q_rhom(const QuantaleId& q, const QValue& z, const QValue& y);

/// The totally-below relation of a completely distributive quantale.
/// Not implemented for delta (no exact finite description is available);
/// throws NotImplementedError there.
bool q_totally_below(const QuantaleId& q, const QValue& u, const QValue& v);

/// Whether the monoid structure is commutative (true for all five families;
/// kept as a guard for the variance-swapped Kan extension formulas).
bool q_is_commutative(const QuantaleId& q);

std::string to_string(const QValue& v);

/// Parses a value literal: "T"/"F", "p/q", "inf", "-inf",
/// "[(u1,p1),...,(un,pn)]".  Returns nullopt if the text does not denote a
/// value of q (range violations included).
std::optional<QValue> parse_qvalue(const QuantaleId& q, const std::string& text);

}  // namespace qrel
