#include "qrel/spaces.hpp"

#include <algorithm>
#include <sstream>

namespace qrel {

namespace {

int checked_powerset_size(const FiniteSet& a, int cap) {
  if (a.size() > cap) {
    std::ostringstream os;
    os << "powerset of " << a.name() << " (" << a.size() << " elements) exceeds the cap of "
       << cap;
    throw SizeCapError(os.str());
  }
  return 1 << a.size();
}

}  // namespace

std::string subset_label(const FiniteSet& a, unsigned mask) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < a.size(); i++) {
    if (mask & (1u << i)) {
      if (!first) out += ",";
      first = false;
      out += a.label(i);
    }
  }
  return out + "}";
}

FiniteSet powerset_set(const FiniteSet& a, int cap) {
  int n = checked_powerset_size(a, cap);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int mask = 0; mask < n; mask++) labels.push_back(subset_label(a, mask));
  return FiniteSet("P(" + a.name() + ")", std::move(labels));
}

SetMap powerset_singleton_map(const FiniteSet& a, int cap) {
  FiniteSet pa = powerset_set(a, cap);
  std::vector<int> table(a.size());
  for (int i = 0; i < a.size(); i++) table[i] = 1 << i;
  return SetMap(a, std::move(pa), std::move(table));
}

SetMap powerset_union_map(const FiniteSet& a, int cap) {
  FiniteSet pa = powerset_set(a, cap);
  FiniteSet ppa = powerset_set(pa, cap);
  std::vector<int> table(ppa.size());
  for (int mm = 0; mm < ppa.size(); mm++) {
    unsigned acc = 0;
    for (int s = 0; s < pa.size(); s++) {
      if (mm & (1 << s)) acc |= static_cast<unsigned>(s);
    }
    table[mm] = static_cast<int>(acc);
  }
  return SetMap(std::move(ppa), std::move(pa), std::move(table));
}

SetMap powerset_map(const SetMap& f, int cap) {
  FiniteSet pa = powerset_set(f.source(), cap);
  FiniteSet pc = powerset_set(f.target(), cap);
  std::vector<int> table(pa.size());
  for (int mask = 0; mask < pa.size(); mask++) {
    unsigned image = 0;
    for (int i = 0; i < f.source().size(); i++) {
      if (mask & (1 << i)) image |= 1u << f(i);
    }
    table[mask] = static_cast<int>(image);
  }
  return SetMap(std::move(pa), std::move(pc), std::move(table));
}

VRel powerset_extend(const VRel& j, int cap) {
  const QuantaleId& q = j.quantale();
  FiniteSet pa = powerset_set(j.source(), cap);
  FiniteSet pb = powerset_set(j.target(), cap);
  return VRel::build(q, pa, pb, [&](int smask, int tmask) {
    QValue outer = q_top(q);  // empty T gives the empty meet
    for (int t = 0; t < j.cols(); t++) {
      if (!(tmask & (1 << t))) continue;
      QValue inner = q_bottom(q);
      for (int s = 0; s < j.rows(); s++) {
        if (smask & (1 << s)) inner = q_join2(q, inner, j.at(s, t));
      }
      outer = q_meet2(q, outer, inner);
    }
    return outer;
  });
}

VRel ultra_extend(const VRel& j) {
  const QuantaleId& q = j.quantale();
  // Evaluate the inf-sup formula in full on small carriers and check the
  // principal simplification UJ(ix, iy) = J(x, y).
  if (j.rows() <= 5 && j.cols() <= 5) {
    for (int x = 0; x < j.rows(); x++) {
      for (int y = 0; y < j.cols(); y++) {
        QValue outer = q_top(q);
        for (int smask = 0; smask < (1 << j.rows()); smask++) {
          if (!(smask & (1 << x))) continue;
          for (int tmask = 0; tmask < (1 << j.cols()); tmask++) {
            if (!(tmask & (1 << y))) continue;
            QValue inner = q_bottom(q);
            for (int s = 0; s < j.rows(); s++)
              if (smask & (1 << s))
                for (int t = 0; t < j.cols(); t++)
                  if (tmask & (1 << t)) inner = q_join2(q, inner, j.at(s, t));
            outer = q_meet2(q, outer, inner);
          }
        }
        if (outer != j.at(x, y))
          throw InternalCheckError("ultrafilter extension disagrees with its principal form");
      }
    }
  }
  return j;
}

VRel eps_rel(const FiniteSet& a, const QuantaleId& q, int cap) {
  FiniteSet pa = powerset_set(a, cap);
  QValue k = q_unit(q), bot = q_bottom(q);
  return VRel::build(q, pa, a,
                     [&](int mask, int x) { return (mask & (1 << x)) ? k : bot; });
}

PSpace::PSpace(FiniteSet carrier, VRel delta)
    : carrier_(std::move(carrier)), delta_(std::move(delta)) {
  if (delta_.target() != carrier_ || delta_.source() != powerset_set(carrier_))
    throw ShapeError("closure structure must run from the bitmask powerset to the carrier");
}

PSpace PSpace::from_singleton_rows(const FiniteSet& carrier, const VRel& rows) {
  if (rows.source() != carrier || rows.target() != carrier)
    throw ShapeError("singleton rows must form a carrier-to-carrier matrix");
  const QuantaleId& q = rows.quantale();
  FiniteSet pa = powerset_set(carrier);
  VRel delta = VRel::build(q, pa, carrier, [&](int mask, int y) {
    QValue acc = q_bottom(q);
    for (int x = 0; x < carrier.size(); x++)
      if (mask & (1 << x)) acc = q_join2(q, acc, rows.at(x, y));
    return acc;
  });
  return PSpace(carrier, std::move(delta));
}

namespace {

/// Closure of a value set under binary meets (all meets of nonempty
/// subsets).  Intended for the small carriers the axiom checks run on.
std::vector<QValue> meet_closure(const QuantaleId& q, std::vector<QValue> values) {
  std::vector<QValue> out;
  auto add = [&](const QValue& v) {
    for (const QValue& w : out)
      if (w == v) return false;
    out.push_back(v);
    return true;
  };
  for (const QValue& v : values) add(v);
  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; i++)
      for (std::size_t j = i + 1; j < n; j++)
        if (add(q_meet2(q, out[i], out[j]))) grew = true;
  }
  return out;
}

}  // namespace

PSpaceFlags pspace_axioms(const PSpace& s) {
  PSpaceFlags out;
  const QuantaleId& q = s.quantale();
  const VRel& d = s.delta();
  int n = s.carrier().size();
  int subsets = 1 << n;
  const QValue k = q_unit(q), bot = q_bottom(q);

  out.reflexive = true;
  for (int x = 0; x < n && out.reflexive; x++) {
    if (!q_le(q, k, d.at(1 << x, x))) {
      out.reflexive = false;
      out.witness = "(R) fails at " + s.carrier().label(x);
    }
  }

  // (E) on covers S <= S + {t}; monotonicity follows by chaining.
  out.extensional = true;
  for (int mask = 0; mask < subsets && out.extensional; mask++) {
    for (int t = 0; t < n && out.extensional; t++) {
      if (mask & (1 << t)) continue;
      int bigger = mask | (1 << t);
      for (int x = 0; x < n; x++) {
        if (!q_le(q, d.at(mask, x), d.at(bigger, x))) {
          out.extensional = false;
          out.witness = "(E) fails at " + subset_label(s.carrier(), mask) + " vs " +
                        subset_label(s.carrier(), bigger);
          break;
        }
      }
    }
  }

  // (T): v (x) delta(S^(v), x) <= delta(S, x).  Quantifying v over the meet
  // closure of the values in row S (plus unit, bottom and top) is complete:
  // an arbitrary v is dominated by the meet of the row values it sits below,
  // which carves out the same S^(v).
  out.transitive = true;
  for (int mask = 0; mask < subsets && out.transitive; mask++) {
    std::vector<QValue> row;
    for (int y = 0; y < n; y++) row.push_back(d.at(mask, y));
    row.push_back(k);
    std::vector<QValue> probes = meet_closure(q, std::move(row));
    probes.push_back(bot);
    probes.push_back(q_top(q));
    for (const QValue& v : probes) {
      int sv = 0;
      for (int y = 0; y < n; y++)
        if (q_le(q, v, d.at(mask, y))) sv |= 1 << y;
      for (int x = 0; x < n; x++) {
        if (!q_le(q, q_tensor(q, v, d.at(sv, x)), d.at(mask, x))) {
          out.transitive = false;
          out.witness = "(T) fails at S=" + subset_label(s.carrier(), mask) +
                        " v=" + to_string(v) + " x=" + s.carrier().label(x);
          break;
        }
      }
      if (!out.transitive) break;
    }
  }

  out.finite_join_preserving = true;
  for (int x = 0; x < n && out.finite_join_preserving; x++) {
    if (d.at(0, x) != bot) {
      out.finite_join_preserving = false;
      out.witness = "join preservation fails at the empty set";
    }
  }
  for (int mask = 0; mask < subsets && out.finite_join_preserving; mask++) {
    for (int x = 0; x < n; x++) {
      QValue acc = bot;
      for (int sbit = 0; sbit < n; sbit++)
        if (mask & (1 << sbit)) acc = q_join2(q, acc, d.at(1 << sbit, x));
      if (acc != d.at(mask, x)) {
        out.finite_join_preserving = false;
        out.witness =
            "join preservation fails at " + subset_label(s.carrier(), mask);
        break;
      }
    }
  }
  return out;
}

const PSpaceFlags& PSpace::flags() const {
  if (!flags_) flags_ = pspace_axioms(*this);
  return *flags_;
}

USpace::USpace(FiniteSet carrier, VRel alpha)
    : carrier_(std::move(carrier)), alpha_(std::move(alpha)) {
  if (alpha_.source() != carrier_ || alpha_.target() != carrier_)
    throw ShapeError("convergence structure must be a carrier-to-carrier matrix");
}

USpaceFlags uspace_axioms(const USpace& s) {
  USpaceFlags out;
  const QuantaleId& q = s.quantale();
  const VRel& a = s.alpha();
  int n = s.carrier().size();

  out.reflexive = true;
  for (int x = 0; x < n && out.reflexive; x++) {
    if (!q_le(q, q_unit(q), a.at(x, x))) {
      out.reflexive = false;
      out.witness = "(R) fails at " + s.carrier().label(x);
    }
  }

  // Unit and multiplication act as the identity on principal ultrafilters,
  // so both unit cells reduce to alpha <= alpha; evaluated literally.
  VRel left_unit = rel_compose(rel_id(s.carrier(), q), a);
  VRel right_unit_lhs =
      rel_restrict(a, SetMap::identity(s.carrier()), SetMap::identity(s.carrier()));
  out.unitary = rel_le(left_unit, a) && rel_le(right_unit_lhs, a);

  bool assoc = rel_le(rel_compose(a, a), a);
  out.category = out.reflexive && out.unitary && assoc;
  if (!assoc && out.witness.empty()) out.witness = "associativity cell fails";
  return out;
}

const USpaceFlags& USpace::flags() const {
  if (!flags_) flags_ = uspace_axioms(*this);
  return *flags_;
}

PSpace to_closure(const USpace& s, int cap) {
  const QuantaleId& q = s.quantale();
  FiniteSet pa = powerset_set(s.carrier(), cap);
  VRel delta = VRel::build(q, pa, s.carrier(), [&](int mask, int x) {
    QValue acc = q_bottom(q);
    for (int e = 0; e < s.carrier().size(); e++)
      if (mask & (1 << e)) acc = q_join2(q, acc, s.alpha().at(e, x));
    return acc;
  });
  return PSpace(s.carrier(), std::move(delta));
}

USpace to_convergence(const PSpace& s) {
  const QuantaleId& q = s.quantale();
  int n = s.carrier().size();
  VRel alpha = VRel::build(q, s.carrier(), s.carrier(), [&](int x, int y) {
    QValue acc = q_top(q);
    for (int mask = 0; mask < (1 << n); mask++)
      if (mask & (1 << x)) acc = q_meet2(q, acc, s.delta().at(mask, y));
    return acc;
  });
  if (s.flags().extensional) {
    for (int x = 0; x < n; x++)
      for (int y = 0; y < n; y++)
        if (alpha.at(x, y) != s.delta().at(1 << x, y))
          throw InternalCheckError(
              "extensional closure must converge exactly through singletons");
  }
  return USpace(s.carrier(), std::move(alpha));
}

namespace {

/// hom(x, y) <= structure({x}, y) / structure(ix, y).
bool short_modularity(const ModularSpace& m, std::string* witness) {
  const QuantaleId& q = m.quantale();
  int n = m.carrier().size();
  for (int x = 0; x < n; x++)
    for (int y = 0; y < n; y++) {
      const QValue& bound =
          m.is_pspace() ? m.pspace().delta().at(1 << x, y) : m.uspace().alpha().at(x, y);
      if (!q_le(q, m.cat.hom.at(x, y), bound)) {
        if (witness)
          *witness = "(M') fails at (" + m.carrier().label(x) + "," + m.carrier().label(y) + ")";
        return false;
      }
    }
  return true;
}

}  // namespace

ModularityReport modularity_check(const ModularSpace& m) {
  if (m.cat.carrier != m.carrier()) throw ShapeError("hom and structure carriers differ");
  ModularityReport out;

  VRel lhs = m.is_pspace()
                 ? rel_compose(powerset_extend(m.cat.hom),
                               rel_compose(m.pspace().delta(), m.cat.hom))
                 : rel_compose(m.uspace().alpha(), m.cat.hom);
  if (!m.is_pspace()) lhs = rel_compose(ultra_extend(m.cat.hom), lhs);
  const VRel& structure = m.is_pspace() ? m.pspace().delta() : m.uspace().alpha();
  out.modular = rel_le(lhs, structure);
  if (!out.modular) out.witness = "(M) fails";

  bool structure_is_category =
      m.is_pspace() ? m.pspace().flags().category() : m.uspace().flags().category;
  if (structure_is_category && check_vcat(m.cat).ok()) {
    std::string w;
    bool short_form = short_modularity(m, &w);
    if (short_form != out.modular)
      throw InternalCheckError("modularity axiom and its short form disagree on a category");
    if (!short_form && out.witness.empty()) out.witness = w;
  }

  out.normalised = true;
  int n = m.carrier().size();
  for (int x = 0; x < n && out.normalised; x++)
    for (int y = 0; y < n; y++) {
      const QValue& induced =
          m.is_pspace() ? m.pspace().delta().at(1 << x, y) : m.uspace().alpha().at(x, y);
      if (m.cat.hom.at(x, y) != induced) {
        out.normalised = false;
        break;
      }
    }
  return out;
}

namespace {

ModularSpace normalise_impl(std::variant<PSpace, USpace> structure, const FiniteSet& carrier,
                            const VRel& induced_hom) {
  ModularSpace out{VCat{carrier, induced_hom}, std::move(structure)};
  if (!check_vcat(out.cat).ok())
    throw InternalCheckError("normalisation produced an unlawful category");
  ModularityReport rep = modularity_check(out);
  if (!rep.modular || !rep.normalised)
    throw InternalCheckError("normalisation is not modular or not normalised");
  return out;
}

}  // namespace

ModularSpace normalise(const PSpace& s) {
  if (!s.flags().category())
    throw Error("normalise needs the closure-space axioms (R), (E), (T)");
  VRel hom = VRel::build(s.quantale(), s.carrier(), s.carrier(),
                         [&](int x, int y) { return s.delta().at(1 << x, y); });
  return normalise_impl(s, s.carrier(), hom);
}

ModularSpace normalise(const USpace& s) {
  if (!s.flags().category)
    throw Error("normalise needs the convergence category axioms");
  return normalise_impl(s, s.carrier(), s.alpha());
}

CocompleteReport cocomplete_check(const ModularSpace& m) {
  CocompleteReport out;
  const QuantaleId& q = m.quantale();
  int n = m.carrier().size();
  const VRel& structure = m.is_pspace() ? m.pspace().delta() : m.uspace().alpha();

  out.cocomplete = true;
  for (int row = 0; row < structure.rows(); row++) {
    int found = -1;
    for (int cand = 0; cand < n && found < 0; cand++) {
      bool all = true;
      for (int y = 0; y < n && all; y++) all = structure.at(row, y) == m.cat.hom.at(cand, y);
      if (all) found = cand;
    }
    out.generic_points.push_back(found);
    if (found < 0) out.cocomplete = false;
  }

  if (out.cocomplete) {
    // The chosen assignment is a homomorphism of monoids.
    out.homomorphism_ok = true;
    if (m.is_pspace()) {
      VRel phom = powerset_extend(m.cat.hom);
      for (int s = 0; s < structure.rows() && out.homomorphism_ok; s++)
        for (int t = 0; t < structure.rows(); t++) {
          if (!q_le(q, phom.at(s, t),
                    m.cat.hom.at(out.generic_points[s], out.generic_points[t]))) {
            out.homomorphism_ok = false;
            break;
          }
        }
    } else {
      for (int x = 0; x < n && out.homomorphism_ok; x++)
        for (int y = 0; y < n; y++) {
          if (!q_le(q, m.cat.hom.at(x, y),
                    m.cat.hom.at(out.generic_points[x], out.generic_points[y]))) {
            out.homomorphism_ok = false;
            break;
          }
        }
    }
    if (!out.homomorphism_ok)
      throw InternalCheckError("generic-point assignment is not a monoid homomorphism");
  }
  return out;
}

QValue CanonicalSpace::conv_principal(const QValue& y, const QValue& x) const {
  return hom(y, x);
}

QValue CanonicalSpace::distance(std::span<const QValue> subset, const QValue& x) const {
  if (subset.empty()) return q_bottom(quantale);
  if (variance == Variance::lhom) return q_lhom(quantale, q_meet(quantale, subset), x);
  return q_rhom(quantale, q_join(quantale, subset), x);
}

CanonicalSpace canonical_space(const QuantaleId& q, Variance variance) {
  return CanonicalSpace{q, variance};
}

namespace {

int lattice_glb(const VCat& l, int x, int y) {
  auto leq = [&](int a, int b) { return l.hom.at(a, b).as_bool(); };
  int best = -1;
  for (int z = 0; z < l.size(); z++) {
    if (leq(z, x) && leq(z, y)) {
      if (best < 0 || leq(best, z)) best = z;
    }
  }
  if (best < 0) return -1;
  for (int z = 0; z < l.size(); z++)
    if (leq(z, x) && leq(z, y) && !leq(z, best)) return -1;
  return best;
}

int lattice_lub(const VCat& l, int x, int y) {
  auto leq = [&](int a, int b) { return l.hom.at(a, b).as_bool(); };
  int best = -1;
  for (int z = 0; z < l.size(); z++) {
    if (leq(x, z) && leq(y, z)) {
      if (best < 0 || leq(z, best)) best = z;
    }
  }
  if (best < 0) return -1;
  for (int z = 0; z < l.size(); z++)
    if (leq(x, z) && leq(y, z) && !leq(best, z)) return -1;
  return best;
}

}  // namespace

ScottStructure scott_structure(const VCat& lattice) {
  if (lattice.quantale() != QuantaleId::bool2()) throw Error("Scott structures live over bool2");
  if (!check_vcat(lattice).ok()) throw Error("not an ordered set");
  int n = lattice.size();
  if (n == 0) throw Error("not a lattice: empty carrier");
  auto leq = [&](int a, int b) { return lattice.hom.at(a, b).as_bool(); };
  for (int x = 0; x < n; x++)
    for (int y = 0; y < n; y++)
      if (x != y && leq(x, y) && leq(y, x)) throw Error("not a lattice: order not antisymmetric");
  for (int x = 0; x < n; x++)
    for (int y = 0; y < n; y++)
      if (lattice_glb(lattice, x, y) < 0 || lattice_lub(lattice, x, y) < 0)
        throw Error("not a lattice: missing meet or join");
  bool has_top = false, has_bottom = false;
  for (int t = 0; t < n && !has_top; t++) {
    bool all = true;
    for (int x = 0; x < n; x++) all = all && leq(x, t);
    has_top = all;
  }
  for (int b = 0; b < n && !has_bottom; b++) {
    bool all = true;
    for (int x = 0; x < n; x++) all = all && leq(b, x);
    has_bottom = all;
  }
  if (!has_top || !has_bottom) throw Error("not a lattice: missing top or bottom");

  ScottStructure out{lattice, {}, lattice.hom};
  for (unsigned mask = 0; mask < (1u << n); mask++) {
    bool downset = true;
    for (int y = 0; y < n && downset; y++) {
      if (!(mask & (1u << y))) continue;
      for (int x = 0; x < n; x++)
        if (leq(x, y) && !(mask & (1u << x))) {
          downset = false;
          break;
        }
    }
    if (downset) out.opens.push_back(mask);
  }

  // The topology induced from the convergence relation is the downsets.
  for (unsigned mask = 0; mask < (1u << n); mask++) {
    bool open_from_convergence = true;
    for (int y = 0; y < n && open_from_convergence; y++)
      for (int x = 0; x < n; x++)
        if (out.alpha_inf.at(y, x).as_bool() && (mask & (1u << x)) && !(mask & (1u << y))) {
          open_from_convergence = false;
          break;
        }
    bool is_downset =
        std::find(out.opens.begin(), out.opens.end(), mask) != out.opens.end();
    if (open_from_convergence != is_downset)
      throw InternalCheckError("convergence topology disagrees with the downsets");
  }

  // On a finite lattice every down-directed set contains its inf, so the
  // directedness clause of Scott-openness never excludes a downset; checked
  // exhaustively rather than assumed.
  for (unsigned dmask = 1; dmask < (1u << n); dmask++) {
    bool directed = true;
    int inf = -1;
    for (int x = 0; x < n && directed; x++) {
      if (!(dmask & (1u << x))) continue;
      inf = inf < 0 ? x : lattice_glb(lattice, inf, x);
      for (int y = 0; y < n; y++) {
        if (!(dmask & (1u << y))) continue;
        bool has_lower = false;
        for (int z = 0; z < n && !has_lower; z++)
          has_lower = (dmask & (1u << z)) && leq(z, x) && leq(z, y);
        if (!has_lower) {
          directed = false;
          break;
        }
      }
    }
    if (!directed) continue;
    for (unsigned open : out.opens) {
      if ((open & (1u << inf)) && !(open & dmask))
        throw InternalCheckError("directedness clause excluded a downset on a finite lattice");
    }
  }
  return out;
}

MinimaxReport minimax_check(const FiniteSet& a, const std::vector<QValue>& f,
                            const QuantaleId& q) {
  if (static_cast<int>(f.size()) != a.size()) throw ShapeError("one value per point");
  MinimaxReport out;
  out.ok = true;
  int n = a.size();
  for (int x = 0; x < n; x++) {
    QValue supinf = q_bottom(q), infsup = q_top(q);
    for (int mask = 0; mask < (1 << n); mask++) {
      if (!(mask & (1 << x))) continue;
      QValue lo = q_top(q), hi = q_bottom(q);
      for (int s = 0; s < n; s++) {
        if (!(mask & (1 << s))) continue;
        lo = q_meet2(q, lo, f[s]);
        hi = q_join2(q, hi, f[s]);
      }
      supinf = q_join2(q, supinf, lo);
      infsup = q_meet2(q, infsup, hi);
    }
    if (supinf != infsup || supinf != f[x]) out.ok = false;
    out.values.push_back(std::move(supinf));
  }
  return out;
}

}  // namespace qrel
