#include "qrel/enriched.hpp"

#include <sstream>

namespace qrel {

namespace {

std::string triple(const FiniteSet& s, int x, int y, int z) {
  return s.label(x) + "," + s.label(y) + "," + s.label(z);
}

}  // namespace

VCatReport check_vcat(const VCat& c) {
  VCatReport out;
  const QuantaleId& q = c.quantale();
  if (c.hom.source() != c.carrier || c.hom.target() != c.carrier)
    throw ShapeError("hom endpoints must be the carrier");
  for (int x = 0; x < c.size() && out.unit; x++) {
    if (!q_le(q, q_unit(q), c.hom.at(x, x))) {
      out.unit = false;
      out.witness = "unit fails at " + c.carrier.label(x);
    }
  }
  for (int x = 0; x < c.size() && out.assoc; x++)
    for (int y = 0; y < c.size() && out.assoc; y++)
      for (int z = 0; z < c.size() && out.assoc; z++) {
        if (!q_le(q, q_tensor(q, c.hom.at(x, y), c.hom.at(y, z)), c.hom.at(x, z))) {
          out.assoc = false;
          out.witness = "composition fails at " + triple(c.carrier, x, y, z);
        }
      }
  return out;
}

LawReport check_vfunctor(const VFunctor& f) {
  if (f.map.source() != f.source.carrier || f.map.target() != f.target.carrier)
    throw ShapeError("functor map endpoints do not match its categories");
  const QuantaleId& q = f.source.quantale();
  if (q != f.target.quantale()) throw QuantaleMismatch();
  for (int x = 0; x < f.source.size(); x++)
    for (int y = 0; y < f.source.size(); y++) {
      if (!q_le(q, f.source.hom.at(x, y), f.target.hom.at(f.map(x), f.map(y)))) {
        return {false, "hom not preserved at (" + f.source.carrier.label(x) + "," +
                           f.source.carrier.label(y) + ")"};
      }
    }
  return {};
}

LawReport check_vprofunctor(const VProf& j) {
  if (j.rel.source() != j.source.carrier || j.rel.target() != j.target.carrier)
    throw ShapeError("profunctor endpoints do not match its categories");
  VRel closed = rel_compose(j.source.hom, rel_compose(j.rel, j.target.hom));
  for (int x = 0; x < j.rel.rows(); x++)
    for (int y = 0; y < j.rel.cols(); y++) {
      if (!q_le(j.rel.quantale(), closed.at(x, y), j.rel.at(x, y))) {
        return {false, "bimodule law fails at (" + j.source.carrier.label(x) + "," +
                           j.target.carrier.label(y) + ")"};
      }
    }
  return {};
}

QValue CanonicalTarget::hom(const QValue& x, const QValue& y) const {
  return variance == Variance::lhom ? q_lhom(quantale, x, y) : q_rhom(quantale, x, y);
}

std::vector<QValue> kan_into_canonical(KanDirection dir, const std::vector<QValue>& d_or_e,
                                       const VRel& j, Variance variance) {
  const QuantaleId& q = j.quantale();
  for (const QValue& v : d_or_e)
    if (v.id() != q) throw QuantaleMismatch();

  bool sup_form = (dir == KanDirection::left) == (variance == Variance::lhom);
  if (!sup_form && !q_is_commutative(q)) throw Error("unsupported variance");

  if (dir == KanDirection::left) {
    if (static_cast<int>(d_or_e.size()) != j.rows())
      throw ShapeError("left extension expects one value per source object");
    std::vector<QValue> out;
    out.reserve(j.cols());
    for (int y = 0; y < j.cols(); y++) {
      QValue acc = sup_form ? q_bottom(q) : q_top(q);
      for (int x = 0; x < j.rows(); x++) {
        acc = sup_form ? q_join2(q, acc, q_tensor(q, d_or_e[x], j.at(x, y)))
                       : q_meet2(q, acc, q_rhom(q, d_or_e[x], j.at(x, y)));
      }
      out.push_back(std::move(acc));
    }
    return out;
  }

  if (static_cast<int>(d_or_e.size()) != j.cols())
    throw ShapeError("right extension expects one value per target object");
  std::vector<QValue> out;
  out.reserve(j.rows());
  bool rhom_form = variance == Variance::rhom;
  for (int x = 0; x < j.rows(); x++) {
    QValue acc = rhom_form ? q_bottom(q) : q_top(q);
    for (int y = 0; y < j.cols(); y++) {
      acc = rhom_form ? q_join2(q, acc, q_tensor(q, j.at(x, y), d_or_e[y]))
                      : q_meet2(q, acc, q_lhom(q, j.at(x, y), d_or_e[y]));
    }
    out.push_back(std::move(acc));
  }
  return out;
}

namespace {

/// The right-hand side of the defining equation at one point of the
/// extension's domain, as a function of z in M.
QValue defining_rhs(KanDirection dir, const VFunctor& d, const VProf& j, const VCat& m,
                    int point, int z) {
  const QuantaleId& q = m.quantale();
  QValue acc = q_top(q);
  if (dir == KanDirection::left) {
    for (int x = 0; x < j.rel.rows(); x++)
      acc = q_meet2(q, acc, q_lhom(q, j.rel.at(x, point), m.hom.at(d.map(x), z)));
  } else {
    for (int y = 0; y < j.rel.cols(); y++)
      acc = q_meet2(q, acc, q_rhom(q, m.hom.at(z, d.map(y)), j.rel.at(point, y)));
  }
  return acc;
}

bool satisfies_at(KanDirection dir, const VFunctor& d, const VProf& j, const VCat& m, int point,
                  int candidate) {
  for (int z = 0; z < m.size(); z++) {
    const QValue& lhs =
        dir == KanDirection::left ? m.hom.at(candidate, z) : m.hom.at(z, candidate);
    if (lhs != defining_rhs(dir, d, j, m, point, z)) return false;
  }
  return true;
}

}  // namespace

std::optional<SetMap> kan_finite_search(KanDirection dir, const VFunctor& d, const VProf& j,
                                        const VCat& m) {
  const FiniteSet& domain = dir == KanDirection::left ? j.target.carrier : j.source.carrier;
  std::vector<int> table(domain.size(), -1);
  for (int p = 0; p < domain.size(); p++) {
    std::vector<int> hits;
    for (int cand = 0; cand < m.size(); cand++) {
      if (satisfies_at(dir, d, j, m, p, cand)) hits.push_back(cand);
    }
    if (hits.empty()) return std::nullopt;
    // Multiple solutions must carry identical hom profiles: the defining
    // equation pins the whole row (left) or column (right).
    for (std::size_t i = 1; i < hits.size(); i++) {
      for (int z = 0; z < m.size(); z++) {
        bool same = dir == KanDirection::left
                        ? m.hom.at(hits[0], z) == m.hom.at(hits[i], z)
                        : m.hom.at(z, hits[0]) == m.hom.at(z, hits[i]);
        if (!same) throw InternalCheckError("kan solutions with distinct hom profiles");
      }
    }
    table[p] = hits[0];
  }
  return SetMap(domain, m.carrier, std::move(table));
}

bool kan_verify(KanDirection dir, const SetMap& candidate, const VFunctor& d, const VProf& j,
                const VCat& m) {
  const FiniteSet& domain = dir == KanDirection::left ? j.target.carrier : j.source.carrier;
  if (candidate.source() != domain || candidate.target() != m.carrier)
    throw ShapeError("candidate endpoints do not match");
  for (int p = 0; p < domain.size(); p++) {
    if (!satisfies_at(dir, d, j, m, p, candidate(p))) return false;
  }
  return true;
}

namespace {

std::vector<QValue> canonical_probe(const QuantaleId& q, const std::vector<QValue>& a,
                                    const std::vector<QValue>& b) {
  std::vector<QValue> probe{q_bottom(q), q_unit(q), q_top(q)};
  probe.insert(probe.end(), a.begin(), a.end());
  probe.insert(probe.end(), b.begin(), b.end());
  return probe;
}

}  // namespace

bool kan_verify_canonical(KanDirection dir, const std::vector<QValue>& candidate,
                          const std::vector<QValue>& d_or_e, const VRel& j, Variance variance) {
  std::vector<QValue> closed = kan_into_canonical(dir, d_or_e, j, variance);
  if (candidate != closed) return false;
  // The closed form satisfies the defining equation for every z; spot-check
  // the implementation on a finite probe of z values.
  const QuantaleId& q = j.quantale();
  CanonicalTarget target{q, variance};
  for (const QValue& z : canonical_probe(q, candidate, d_or_e)) {
    int pts = dir == KanDirection::left ? j.cols() : j.rows();
    for (int p = 0; p < pts; p++) {
      QValue lhs = dir == KanDirection::left ? target.hom(candidate[p], z)
                                             : target.hom(z, candidate[p]);
      QValue rhs = q_top(q);
      if (dir == KanDirection::left) {
        for (int x = 0; x < j.rows(); x++)
          rhs = q_meet2(q, rhs, q_lhom(q, j.at(x, p), target.hom(d_or_e[x], z)));
      } else {
        for (int y = 0; y < j.cols(); y++)
          rhs = q_meet2(q, rhs, q_rhom(q, target.hom(z, d_or_e[y]), j.at(p, y)));
      }
      if (lhs != rhs)
        throw InternalCheckError("canonical Kan extension fails its defining equation");
    }
  }
  return true;
}

namespace {

BcReport bc_from_parts(const QuantaleId& q, std::vector<QValue> gaps, bool relation_verdict) {
  BcReport out;
  out.holds = true;
  for (const QValue& g : gaps)
    if (!q_le(q, q_unit(q), g)) out.holds = false;
  if (out.holds != relation_verdict)
    throw InternalCheckError("Beck-Chevalley formulations disagree");
  out.gaps = std::move(gaps);
  return out;
}

}  // namespace

BcReport bc_check(KanDirection dir, const SetMap& extension, const VFunctor& d, const VProf& j,
                  const VCat& m) {
  if (!kan_verify(dir, extension, d, j, m))
    throw Error("bc_check expects a verified Kan extension");
  const QuantaleId& q = m.quantale();
  std::vector<QValue> gaps;
  bool relation_ok = true;
  if (dir == KanDirection::left) {
    // gap(y) = join_x M(l y, d x) (x) J(x, y);  relation form d* . J = l*.
    for (int y = 0; y < j.rel.cols(); y++) {
      QValue acc = q_bottom(q);
      for (int x = 0; x < j.rel.rows(); x++)
        acc = q_join2(q, acc, q_tensor(q, m.hom.at(extension(y), d.map(x)), j.rel.at(x, y)));
      gaps.push_back(std::move(acc));
    }
    for (int z = 0; z < m.size() && relation_ok; z++)
      for (int y = 0; y < j.rel.cols() && relation_ok; y++) {
        QValue lhs = q_bottom(q);
        for (int x = 0; x < j.rel.rows(); x++)
          lhs = q_join2(q, lhs, q_tensor(q, m.hom.at(z, d.map(x)), j.rel.at(x, y)));
        relation_ok = lhs == m.hom.at(z, extension(y));
      }
  } else {
    // gap(x) = join_y J(x, y) (x) M(e y, r x);  relation form J . e* = r*.
    for (int x = 0; x < j.rel.rows(); x++) {
      QValue acc = q_bottom(q);
      for (int y = 0; y < j.rel.cols(); y++)
        acc = q_join2(q, acc, q_tensor(q, j.rel.at(x, y), m.hom.at(d.map(y), extension(x))));
      gaps.push_back(std::move(acc));
    }
    for (int x = 0; x < j.rel.rows() && relation_ok; x++)
      for (int z = 0; z < m.size() && relation_ok; z++) {
        QValue lhs = q_bottom(q);
        for (int y = 0; y < j.rel.cols(); y++)
          lhs = q_join2(q, lhs, q_tensor(q, j.rel.at(x, y), m.hom.at(d.map(y), z)));
        relation_ok = lhs == m.hom.at(extension(x), z);
      }
  }
  return bc_from_parts(q, std::move(gaps), relation_ok);
}

BcReport bc_check_canonical(KanDirection dir, const std::vector<QValue>& extension,
                            const std::vector<QValue>& d_or_e, const VRel& j,
                            Variance variance) {
  if (!kan_verify_canonical(dir, extension, d_or_e, j, variance))
    throw Error("bc_check expects a verified Kan extension");
  const QuantaleId& q = j.quantale();
  CanonicalTarget target{q, variance};
  std::vector<QValue> gaps;
  bool relation_ok = true;
  auto probe = canonical_probe(q, extension, d_or_e);
  if (dir == KanDirection::left) {
    for (int y = 0; y < j.cols(); y++) {
      QValue acc = q_bottom(q);
      for (int x = 0; x < j.rows(); x++)
        acc = q_join2(q, acc, q_tensor(q, target.hom(extension[y], d_or_e[x]), j.at(x, y)));
      gaps.push_back(std::move(acc));
    }
    for (const QValue& z : probe)
      for (int y = 0; y < j.cols() && relation_ok; y++) {
        QValue lhs = q_bottom(q);
        for (int x = 0; x < j.rows(); x++)
          lhs = q_join2(q, lhs, q_tensor(q, target.hom(z, d_or_e[x]), j.at(x, y)));
        relation_ok = lhs == target.hom(z, extension[y]);
      }
  } else {
    for (int x = 0; x < j.rows(); x++) {
      QValue acc = q_bottom(q);
      for (int y = 0; y < j.cols(); y++)
        acc = q_join2(q, acc, q_tensor(q, j.at(x, y), target.hom(d_or_e[y], extension[x])));
      gaps.push_back(std::move(acc));
    }
    for (const QValue& z : probe)
      for (int x = 0; x < j.rows() && relation_ok; x++) {
        QValue lhs = q_bottom(q);
        for (int y = 0; y < j.cols(); y++)
          lhs = q_join2(q, lhs, q_tensor(q, j.at(x, y), target.hom(d_or_e[y], z)));
        relation_ok = lhs == target.hom(extension[x], z);
      }
  }
  return bc_from_parts(q, std::move(gaps), relation_ok);
}

bool cell_bc(ExactSide side, const CellBoundary& b) {
  b.validate();
  const QuantaleId& q = b.top.quantale();
  if (side == ExactSide::left) {
    VRel lhs = rel_compose(rel_graph(b.left, GraphSide::conjoint, q), b.top);
    VRel rhs = rel_restrict(b.bottom, SetMap::identity(b.bottom.source()), b.right);
    return lhs == rhs;
  }
  VRel lhs = rel_compose(b.top, rel_graph(b.right, GraphSide::companion, q));
  VRel rhs = rel_restrict(b.bottom, b.left, SetMap::identity(b.bottom.target()));
  return lhs == rhs;
}

}  // namespace qrel
