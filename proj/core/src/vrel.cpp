#include "qrel/vrel.hpp"

#include <sstream>

namespace qrel {

VRel::VRel(QuantaleId q, FiniteSet source, FiniteSet target, std::vector<QValue> entries)
    : q_(q), src_(std::move(source)), tgt_(std::move(target)), entries_(std::move(entries)) {
  if (static_cast<int>(entries_.size()) != src_.size() * tgt_.size())
    throw ShapeError("entry count does not match |source| x |target|");
  for (const QValue& v : entries_) {
    if (v.id() != q_) throw QuantaleMismatch();
  }
}

VRel VRel::fill(const QuantaleId& q, const FiniteSet& source, const FiniteSet& target,
                const QValue& v) {
  return VRel(q, source, target,
              std::vector<QValue>(static_cast<std::size_t>(source.size()) * target.size(), v));
}

VRel VRel::build(const QuantaleId& q, const FiniteSet& source, const FiniteSet& target,
                 const std::function<QValue(int, int)>& f) {
  std::vector<QValue> entries;
  entries.reserve(static_cast<std::size_t>(source.size()) * target.size());
  for (int i = 0; i < source.size(); i++)
    for (int j = 0; j < target.size(); j++) entries.push_back(f(i, j));
  return VRel(q, source, target, std::move(entries));
}

void VRel::set(int i, int j, QValue v) {
  if (v.id() != q_) throw QuantaleMismatch();
  entries_[i * cols() + j] = std::move(v);
}

namespace {

void require_same_quantale(const VRel& a, const VRel& b) {
  if (a.quantale() != b.quantale()) throw QuantaleMismatch();
}

/// Min-plus inner loop for the reversed-order additive families, reusing one
/// temporary instead of allocating per step.
QValue compose_entry_additive(const QuantaleId& q, const VRel& j, const VRel& h, int x, int z) {
  bool acc_set = false;
  bool hit_minus_inf = false;
  Rat acc;
  Rat tmp;
  for (int y = 0; y < j.cols(); y++) {
    const XRat& a = j.at(x, y).as_xrat();
    const XRat& b = h.at(y, z).as_xrat();
    if (a.is_pos_inf() || b.is_pos_inf())
      continue;  // tensor with bottom contributes nothing to the join
    if (a.is_neg_inf() || b.is_neg_inf()) {
      // Numerically smallest, so the join (numeric min) is decided.
      hit_minus_inf = true;
      break;
    }
    mpq_add(tmp.get_mpq_t(), a.value().get_mpq_t(), b.value().get_mpq_t());
    if (!acc_set || cmp(tmp, acc) < 0) {
      mpq_swap(acc.get_mpq_t(), tmp.get_mpq_t());
      acc_set = true;
    }
  }
  if (hit_minus_inf)
    return QValue::extended_real(XRat::minus_inf());
  if (!acc_set) return q_bottom(q);
  return q.family() == Family::lawvere ? QValue::lawvere(XRat(std::move(acc)))
                                       : QValue::extended_real(XRat(std::move(acc)));
}

}  // namespace

VRel rel_compose(const VRel& j, const VRel& h) {
  require_same_quantale(j, h);
  if (j.target() != h.source()) throw ShapeError("relations do not compose");
  const QuantaleId& q = j.quantale();
  const Family fam = q.family();

  std::vector<QValue> entries;
  entries.reserve(static_cast<std::size_t>(j.rows()) * h.cols());
  for (int x = 0; x < j.rows(); x++) {
    for (int z = 0; z < h.cols(); z++) {
      if (fam == Family::lawvere || fam == Family::extended_real) {
        entries.push_back(compose_entry_additive(q, j, h, x, z));
      } else if (fam == Family::bool2) {
        bool acc = false;
        for (int y = 0; y < j.cols() && !acc; y++)
          acc = j.at(x, y).as_bool() && h.at(y, z).as_bool();
        entries.push_back(QValue::truth(acc));
      } else {
        QValue acc = q_bottom(q);
        for (int y = 0; y < j.cols(); y++)
          acc = q_join2(q, acc, q_tensor(q, j.at(x, y), h.at(y, z)));
        entries.push_back(std::move(acc));
      }
    }
  }
  return VRel(q, j.source(), h.target(), std::move(entries));
}

VRel rel_id(const FiniteSet& a, const QuantaleId& q) {
  QValue k = q_unit(q), bot = q_bottom(q);
  return VRel::build(q, a, a, [&](int i, int j) { return i == j ? k : bot; });
}

VRel rel_graph(const SetMap& f, GraphSide side, const QuantaleId& q) {
  QValue k = q_unit(q), bot = q_bottom(q);
  if (side == GraphSide::companion) {
    return VRel::build(q, f.source(), f.target(),
                       [&](int x, int y) { return f(x) == y ? k : bot; });
  }
  return VRel::build(q, f.target(), f.source(),
                     [&](int y, int x) { return f(x) == y ? k : bot; });
}

VRel rel_restrict(const VRel& k, const SetMap& f, const SetMap& g) {
  if (f.target() != k.source() || g.target() != k.target())
    throw ShapeError("restriction maps do not land in the relation endpoints");
  return VRel::build(k.quantale(), f.source(), g.source(),
                     [&](int x, int y) { return k.at(f(x), g(y)); });
}

void CellBoundary::validate() const {
  if (top.quantale() != bottom.quantale()) throw QuantaleMismatch();
  if (left.source() != top.source() || right.source() != top.target() ||
      left.target() != bottom.source() || right.target() != bottom.target())
    throw ShapeError("cell boundary endpoints do not match");
}

bool cell_exists(const CellBoundary& b) {
  b.validate();
  const QuantaleId& q = b.top.quantale();
  for (int x = 0; x < b.top.rows(); x++)
    for (int y = 0; y < b.top.cols(); y++)
      if (!q_le(q, b.top.at(x, y), b.bottom.at(b.left(x), b.right(y)))) return false;
  return true;
}

VRel rel_residuate(ResiduateSide side, const VRel& x, const VRel& y) {
  require_same_quantale(x, y);
  const QuantaleId& q = x.quantale();
  if (side == ResiduateSide::left) {
    // x = J : A -> B,  y = K : A -> E,  result J -o K : B -> E.
    if (x.source() != y.source()) throw ShapeError("left residual needs a common source");
    return VRel::build(q, x.target(), y.target(), [&](int b, int e) {
      QValue acc = q_top(q);
      for (int a = 0; a < x.rows(); a++)
        acc = q_meet2(q, acc, q_lhom(q, x.at(a, b), y.at(a, e)));
      return acc;
    });
  }
  // x = K : A -> E,  y = H : B -> E,  result K o- H : A -> B.
  if (x.target() != y.target()) throw ShapeError("right residual needs a common target");
  return VRel::build(q, x.source(), y.source(), [&](int a, int b) {
    QValue acc = q_top(q);
    for (int e = 0; e < x.cols(); e++)
      acc = q_meet2(q, acc, q_rhom(q, x.at(a, e), y.at(b, e)));
    return acc;
  });
}

VRel rel_reverse(const VRel& j) {
  return VRel::build(j.quantale(), j.target(), j.source(),
                     [&](int y, int x) { return j.at(x, y); });
}

VRel rel_threshold(const VRel& j, const QValue& v) {
  if (v.id() != j.quantale()) throw QuantaleMismatch();
  return VRel::build(QuantaleId::bool2(), j.source(), j.target(), [&](int x, int y) {
    return QValue::truth(q_le(j.quantale(), v, j.at(x, y)));
  });
}

VRel rel_from_bool(const VRel& j, const QuantaleId& q) {
  if (j.quantale() != QuantaleId::bool2()) throw QuantaleMismatch();
  QValue k = q_unit(q), bot = q_bottom(q);
  return VRel::build(q, j.source(), j.target(),
                     [&](int x, int y) { return j.at(x, y).as_bool() ? k : bot; });
}

bool rel_le(const VRel& a, const VRel& b) {
  require_same_quantale(a, b);
  if (a.source() != b.source() || a.target() != b.target())
    throw ShapeError("order compares parallel relations only");
  for (int i = 0; i < a.rows(); i++)
    for (int j = 0; j < a.cols(); j++)
      if (!q_le(a.quantale(), a.at(i, j), b.at(i, j))) return false;
  return true;
}

VRel rel_join2(const VRel& a, const VRel& b) {
  require_same_quantale(a, b);
  if (a.source() != b.source() || a.target() != b.target())
    throw ShapeError("join needs parallel relations");
  return VRel::build(a.quantale(), a.source(), a.target(),
                     [&](int i, int j) { return q_join2(a.quantale(), a.at(i, j), b.at(i, j)); });
}

VRel rel_meet2(const VRel& a, const VRel& b) {
  require_same_quantale(a, b);
  if (a.source() != b.source() || a.target() != b.target())
    throw ShapeError("meet needs parallel relations");
  return VRel::build(a.quantale(), a.source(), a.target(),
                     [&](int i, int j) { return q_meet2(a.quantale(), a.at(i, j), b.at(i, j)); });
}

std::string to_string(const VRel& r) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < r.rows(); i++) {
    if (i) os << "; ";
    for (int j = 0; j < r.cols(); j++) {
      if (j) os << ", ";
      os << to_string(r.at(i, j));
    }
  }
  os << ']';
  return os.str();
}

}  // namespace qrel
