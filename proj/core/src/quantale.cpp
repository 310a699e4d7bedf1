#include "qrel/quantale.hpp"

#include <algorithm>
#include <sstream>

namespace qrel {

std::string QuantaleId::name() const {
  switch (family_) {
    case Family::bool2:
      return "bool";
    case Family::lawvere:
      return "lawvere";
    case Family::extended_real:
      return "real";
    case Family::unit_interval:
      return std::string("unit:") + tnorm_name(tnorm_);
    case Family::delta:
      return std::string("delta:") + tnorm_name(tnorm_);
  }
  return "?";
}

std::optional<QuantaleId> QuantaleId::parse(const std::string& text) {
  if (text == "bool") return bool2();
  if (text == "lawvere") return lawvere();
  if (text == "real") return extended_real();
  auto with_tnorm = [&](const std::string& prefix) -> std::optional<TNorm> {
    if (text.rfind(prefix + ":", 0) != 0) return std::nullopt;
    std::string rest = text.substr(prefix.size() + 1);
    if (rest == "product") return TNorm::product;
    if (rest == "min" || rest == "minimum") return TNorm::minimum;
    if (rest == "lukasiewicz" || rest == "luk") return TNorm::lukasiewicz;
    return std::nullopt;
  };
  if (auto t = with_tnorm("unit")) return unit_interval(*t);
  if (auto t = with_tnorm("delta")) return delta(*t);
  return std::nullopt;
}

QValue QValue::lawvere(XRat v) {
  if (v.is_neg_inf() || (v.is_finite() && sgn(v.value()) < 0))
    throw RangeError("lawvere values live in [0, inf]");
  return QValue(QuantaleId::lawvere(), std::move(v));
}

QValue QValue::extended_real(XRat v) {
  return QValue(QuantaleId::extended_real(), std::move(v));
}

QValue QValue::unit_interval(TNorm t, Rat v) {
  if (sgn(v) < 0 || v > 1) throw RangeError("unit interval values live in [0, 1]");
  return QValue(QuantaleId::unit_interval(t), XRat(std::move(v)));
}

QValue QValue::delta(TNorm t, StepFunction f) {
  return QValue(QuantaleId::delta(t), std::move(f));
}

namespace {

void require_member(const QuantaleId& q, const QValue& v) {
  if (v.id() != q) throw QuantaleMismatch();
}

}  // namespace

QValue q_bottom(const QuantaleId& q) {
  switch (q.family()) {
    case Family::bool2:
      return QValue::truth(false);
    case Family::lawvere:
      return QValue::lawvere(XRat::inf());
    case Family::extended_real:
      return QValue::extended_real(XRat::inf());
    case Family::unit_interval:
      return QValue::unit_interval(q.tnorm(), Rat(0));
    case Family::delta:
      return QValue::delta(q.tnorm(), StepFunction());
  }
  throw Error("unknown family");
}

QValue q_top(const QuantaleId& q) {
  switch (q.family()) {
    case Family::bool2:
      return QValue::truth(true);
    case Family::lawvere:
      return QValue::lawvere(XRat(0));
    case Family::extended_real:
      return QValue::extended_real(XRat::minus_inf());
    case Family::unit_interval:
      return QValue::unit_interval(q.tnorm(), Rat(1));
    case Family::delta:
      return QValue::delta(q.tnorm(), StepFunction::one());
  }
  throw Error("unknown family");
}

QValue q_unit(const QuantaleId& q) {
  switch (q.family()) {
    case Family::bool2:
      return QValue::truth(true);
    case Family::lawvere:
      return QValue::lawvere(XRat(0));
    case Family::extended_real:
      return QValue::extended_real(XRat(0));
    case Family::unit_interval:
      return QValue::unit_interval(q.tnorm(), Rat(1));
    case Family::delta:
      return QValue::delta(q.tnorm(), StepFunction::one());
  }
  throw Error("unknown family");
}

bool q_le(const QuantaleId& q, const QValue& a, const QValue& b) {
  require_member(q, a);
  require_member(q, b);
  switch (q.family()) {
    case Family::bool2:
      return !a.as_bool() || b.as_bool();
    case Family::lawvere:
    case Family::extended_real:
      return num_cmp(a.as_xrat(), b.as_xrat()) >= 0;
    case Family::unit_interval:
      return num_cmp(a.as_xrat(), b.as_xrat()) <= 0;
    case Family::delta:
      return sf_le(a.as_step(), b.as_step());
  }
  throw Error("unknown family");
}

QValue q_join2(const QuantaleId& q, const QValue& a, const QValue& b) {
  require_member(q, a);
  require_member(q, b);
  switch (q.family()) {
    case Family::bool2:
      return QValue::truth(a.as_bool() || b.as_bool());
    case Family::lawvere:
    case Family::extended_real:
      return num_cmp(a.as_xrat(), b.as_xrat()) <= 0 ? a : b;
    case Family::unit_interval:
      return num_cmp(a.as_xrat(), b.as_xrat()) >= 0 ? a : b;
    case Family::delta:
      return QValue::delta(q.tnorm(), sf_sup(a.as_step(), b.as_step()));
  }
  throw Error("unknown family");
}

QValue q_meet2(const QuantaleId& q, const QValue& a, const QValue& b) {
  require_member(q, a);
  require_member(q, b);
  switch (q.family()) {
    case Family::bool2:
      return QValue::truth(a.as_bool() && b.as_bool());
    case Family::lawvere:
    case Family::extended_real:
      return num_cmp(a.as_xrat(), b.as_xrat()) >= 0 ? a : b;
    case Family::unit_interval:
      return num_cmp(a.as_xrat(), b.as_xrat()) <= 0 ? a : b;
    case Family::delta:
      return QValue::delta(q.tnorm(), sf_inf(a.as_step(), b.as_step()));
  }
  throw Error("unknown family");
}

QValue q_join(const QuantaleId& q, std::span<const QValue> xs) {
  QValue acc = q_bottom(q);
  for (const QValue& x : xs) acc = q_join2(q, acc, x);
  return acc;
}

QValue q_meet(const QuantaleId& q, std::span<const QValue> xs) {
  QValue acc = q_top(q);
  for (const QValue& x : xs) acc = q_meet2(q, acc, x);
  return acc;
}

QValue q_tensor(const QuantaleId& q, const QValue& a, const QValue& b) {
  require_member(q, a);
  require_member(q, b);
  switch (q.family()) {
    case Family::bool2:
      return QValue::truth(a.as_bool() && b.as_bool());
    case Family::lawvere:
      return QValue::lawvere(xadd_posinf_dominant(a.as_xrat(), b.as_xrat()));
    case Family::extended_real:
      return QValue::extended_real(xadd_posinf_dominant(a.as_xrat(), b.as_xrat()));
    case Family::unit_interval:
      return QValue::unit_interval(q.tnorm(),
                                   tnorm_apply(q.tnorm(), a.as_xrat().value(), b.as_xrat().value()));
    case Family::delta:
      return QValue::delta(q.tnorm(), sf_convolve(q.tnorm(), a.as_step(), b.as_step()));
  }
  throw Error("unknown family");
}

QValue q_lhom(const QuantaleId& q, const QValue& x, const QValue& z) {
  require_member(q, x);
  require_member(q, z);
  switch (q.family()) {
    case Family::bool2:
      return QValue::truth(!x.as_bool() || z.as_bool());
    case Family::lawvere:
      return QValue::lawvere(truncated_diff(z.as_xrat(), x.as_xrat()));
    case Family::extended_real: {
      const XRat& xv = x.as_xrat();
      const XRat& zv = z.as_xrat();
      if (xv.is_pos_inf()) return q_top(q);                       // bottom -o z = top
      if (xv.is_neg_inf())                                        // top -o z
        return QValue::extended_real(zv.is_neg_inf() ? XRat::minus_inf() : XRat::inf());
      if (zv.is_pos_inf()) return QValue::extended_real(XRat::inf());
      if (zv.is_neg_inf()) return QValue::extended_real(XRat::minus_inf());
      return QValue::extended_real(XRat(Rat(zv.value() - xv.value())));
    }
    case Family::unit_interval:
      return QValue::unit_interval(
          q.tnorm(), tnorm_residual(q.tnorm(), x.as_xrat().value(), z.as_xrat().value()));
    case Family::delta:
      return QValue::delta(q.tnorm(), sf_residuate(q.tnorm(), x.as_step(), z.as_step()));
  }
  throw Error("unknown family");
}

QValue q_rhom(const QuantaleId& q, const QValue& z, const QValue& y) {
  // All five families are commutative, so z <-o y coincides with y -o z.
  return q_lhom(q, y, z);
}

bool q_totally_below(const QuantaleId& q, const QValue& u, const QValue& v) {
  require_member(q, u);
  require_member(q, v);
  switch (q.family()) {
    case Family::bool2:
      return v.as_bool();
    case Family::lawvere:
    case Family::extended_real:
      return num_cmp(u.as_xrat(), v.as_xrat()) > 0;
    case Family::unit_interval:
      return num_cmp(u.as_xrat(), v.as_xrat()) < 0;
    case Family::delta:
      throw NotImplementedError("totally-below is not implemented for delta");
  }
  throw Error("unknown family");
}

bool q_is_commutative(const QuantaleId&) { return true; }

std::string to_string(const QValue& v) {
  switch (v.id().family()) {
    case Family::bool2:
      return v.as_bool() ? "T" : "F";
    case Family::lawvere:
    case Family::extended_real:
    case Family::unit_interval:
      return to_string(v.as_xrat());
    case Family::delta:
      return to_string(v.as_step());
  }
  return "?";
}

namespace {

std::optional<StepFunction> parse_step(const std::string& text) {
  // "[]" or "[(u,p),(u,p),...]"
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) i++;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= text.size() || text[i] != c) return false;
    i++;
    return true;
  };
  auto parse_number = [&]() -> std::optional<Rat> {
    skip_ws();
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) i++;
    while (i < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
      i++;
    return parse_rat(text.substr(start, i - start));
  };
  if (!expect('[')) return std::nullopt;
  std::vector<StepFunction::Jump> raw;
  skip_ws();
  if (i < text.size() && text[i] == ']') {
    i++;
    skip_ws();
    if (i != text.size()) return std::nullopt;
    return StepFunction();
  }
  while (true) {
    if (!expect('(')) return std::nullopt;
    auto u = parse_number();
    if (!u || !expect(',')) return std::nullopt;
    auto p = parse_number();
    if (!p || !expect(')')) return std::nullopt;
    raw.push_back({std::move(*u), std::move(*p)});
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      i++;
      continue;
    }
    break;
  }
  if (!expect(']')) return std::nullopt;
  skip_ws();
  if (i != text.size()) return std::nullopt;
  try {
    return StepFunction::normalized(std::move(raw));
  } catch (const RangeError&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<QValue> parse_qvalue(const QuantaleId& q, const std::string& text) {
  try {
    switch (q.family()) {
      case Family::bool2:
        if (text == "T") return QValue::truth(true);
        if (text == "F") return QValue::truth(false);
        return std::nullopt;
      case Family::lawvere: {
        auto v = parse_xrat(text);
        if (!v) return std::nullopt;
        return QValue::lawvere(std::move(*v));
      }
      case Family::extended_real: {
        auto v = parse_xrat(text);
        if (!v) return std::nullopt;
        return QValue::extended_real(std::move(*v));
      }
      case Family::unit_interval: {
        auto v = parse_rat(text);
        if (!v) return std::nullopt;
        return QValue::unit_interval(q.tnorm(), std::move(*v));
      }
      case Family::delta: {
        auto f = parse_step(text);
        if (!f) return std::nullopt;
        return QValue::delta(q.tnorm(), std::move(*f));
      }
    }
  } catch (const RangeError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace qrel
