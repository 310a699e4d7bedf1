#include "qrel/harness.hpp"

#include "doctest.h"
#include "support.hpp"

using namespace qrel;
using namespace qrel::testing;

namespace {

GeneratorConfig small_config() {
  GeneratorConfig cfg;
  cfg.quantales = {QuantaleId::bool2(), QuantaleId::lawvere(),
                   QuantaleId::unit_interval(TNorm::product),
                   QuantaleId::unit_interval(TNorm::minimum),
                   QuantaleId::unit_interval(TNorm::lukasiewicz)};
  cfg.trials = 200;
  cfg.seed = 99;
  return cfg;
}

}  // namespace

TEST_CASE("instance generation is deterministic") {
  GeneratorConfig cfg = small_config();
  for (InstanceKind kind :
       {InstanceKind::max_right_bc, InstanceKind::max_left_cocomplete,
        InstanceKind::evt_closure, InstanceKind::evt_quantale, InstanceKind::berge}) {
    for (std::uint64_t trial = 0; trial < 10; trial++) {
      TheoremInstance one = gen_instance(cfg, kind, trial);
      TheoremInstance two = gen_instance(cfg, kind, trial);
      if (auto* m = std::get_if<MaxInstance>(&one)) {
        const auto& n = std::get<MaxInstance>(two);
        CHECK(m->j == n.j);
        CHECK(m->de == n.de);
        CHECK(m->a.cat.hom == n.a.cat.hom);
        CHECK(m->m.cat.hom == n.m.cat.hom);
      } else if (auto* e = std::get_if<EvtClosureInstance>(&one)) {
        const auto& n = std::get<EvtClosureInstance>(two);
        CHECK(e->j == n.j);
        CHECK(e->d == n.d);
      } else if (auto* e2 = std::get_if<EvtQuantaleInstance>(&one)) {
        const auto& n = std::get<EvtQuantaleInstance>(two);
        CHECK(e2->j == n.j);
        CHECK(e2->d == n.d);
      } else {
        const auto& n = std::get<BergeInstance>(two);
        CHECK(std::get<BergeInstance>(one).j == n.j);
      }
    }
  }
}

TEST_CASE("generated relations are lawful bimodules") {
  GeneratorConfig cfg = small_config();
  for (std::uint64_t trial = 0; trial < 60; trial++) {
    auto inst = std::get<MaxInstance>(gen_instance(cfg, InstanceKind::max_right_bc, trial));
    CHECK(check_vprofunctor({inst.j, inst.a.cat, inst.b.cat}).ok);
    CHECK(check_vcat(inst.a.cat).ok());
    CHECK(check_vcat(inst.b.cat).ok());
    CHECK(check_vcat(inst.m.cat).ok());
    CHECK(modularity_check(inst.a).modular);
    CHECK(modularity_check(inst.m).modular);
  }
}

TEST_CASE("boolean palette yields boolean instances") {
  GeneratorConfig cfg = small_config();
  cfg.quantales = {QuantaleId::bool2()};
  for (std::uint64_t trial = 0; trial < 20; trial++) {
    auto inst = std::get<MaxInstance>(gen_instance(cfg, InstanceKind::max_left_bc, trial));
    CHECK(inst.quantale == QuantaleId::bool2());
    for (const QValue& v : inst.j.entries())
      CHECK((v == QValue::truth(true) || v == QValue::truth(false)));
  }
}

TEST_CASE("cocomplete targets really are cocomplete") {
  GeneratorConfig cfg = small_config();
  for (std::uint64_t trial = 0; trial < 40; trial++) {
    auto inst =
        std::get<MaxInstance>(gen_instance(cfg, InstanceKind::max_right_cocomplete, trial));
    CHECK(cocomplete_check(inst.m).cocomplete);
  }
}

TEST_CASE("verification skips exactly at the first failing hypothesis") {
  // A target without the cocompleteness property forces the named skip.
  const QuantaleId q = QuantaleId::bool2();
  FiniteSet a("a", {"a0"}), b("b", {"b0"}), m("m", {"m0", "m1"});
  VCat acat = VCat::discrete(a, q), bcat = VCat::discrete(b, q),
       mcat = VCat::discrete(m, q);
  ModularSpace ma{acat, USpace(a, rel_id(a, q))};
  ModularSpace mb{bcat, USpace(b, rel_id(b, q))};
  ModularSpace mm{mcat, USpace(m, rel_id(m, q))};
  VRel j = rel_id(a, q);
  // Rename target to b: single points, identity relation.
  VRel jab = VRel(q, a, b, {q_unit(q)});
  MaxInstance inst{q,  Monad::ultrafilter, ma, mb, mm, jab,
                   SetMap::constant(b, m, 0), 0};
  VerificationReport rep = verify_max_theorem(MaxVariant::right_cocomplete, inst);
  CHECK(!rep.skipped());  // two-point discrete convergence target is cocomplete
  CHECK(rep.passed());

  // Break cocompleteness: a convergence row that is no hom row (over the
  // discrete hom every structure is modular, so only this hypothesis fires).
  VRel alpha = rel_id(m, q);
  alpha.set(0, 1, QValue::truth(true));
  MaxInstance inst2 = inst;
  inst2.m = ModularSpace{mcat, USpace(m, alpha)};
  VerificationReport rep2 = verify_max_theorem(MaxVariant::right_cocomplete, inst2);
  CHECK(rep2.skipped());
  CHECK(*rep2.skip_reason == "M is T-cocomplete");

  // Break continuity of e instead: an injective map from an indiscrete pair
  // into a discrete pair.
  FiniteSet b2("b2", {"p", "q"});
  VCat b2cat = VCat::discrete(b2, q);
  ModularSpace mb2{b2cat, USpace(b2, VRel::fill(q, b2, b2, QValue::truth(true)))};
  MaxInstance inst3{q,
                    Monad::ultrafilter,
                    ma,
                    mb2,
                    mm,
                    VRel::fill(q, a, b2, QValue::truth(true)),
                    SetMap(b2, m, {0, 1}),
                    0};
  VerificationReport rep3 = verify_max_theorem(MaxVariant::right_cocomplete, inst3);
  CHECK(rep3.skipped());
  CHECK(*rep3.skip_reason == "e is a T-morphism");
}

TEST_CASE("counterexample regression: exact numbers") {
  RegressionReport rep = regression_counterexamples();
  CHECK(rep.ok);
  REQUIRE(rep.extension_value.has_value());
  CHECK(*rep.extension_value == QValue::lawvere(XRat(1)));
  REQUIRE(rep.bc_gap.has_value());
  CHECK(*rep.bc_gap == QValue::lawvere(XRat(1)));
  CHECK(rep.u_compact);
  CHECK(rep.d_continuous);
  CHECK(rep.d_functor);
  CHECK(!rep.j_discrete);  // the violated hypothesis
  CHECK(!rep.bc_holds);    // the violated conclusion
  REQUIRE(rep.staircase.size() == 3);
  for (const auto& entry : rep.staircase) {
    CHECK(entry.bounded);
    CHECK(entry.residual_at_inf == entry.level);  // the bound is tight here
    CHECK(entry.residual_at_inf < 1);
  }
}

TEST_CASE("delta probe: finite families satisfy the identity") {
  std::vector<StepFunction> family{StepFunction::point(Rat(1), make_rat(1, 4)),
                                   StepFunction::point(Rat(1), make_rat(1, 2))};
  for (TNorm t : {TNorm::product, TNorm::lukasiewicz, TNorm::minimum}) {
    DeltaProbeReport rep = delta_condition_d_probe(family, t);
    CHECK(rep.up_directed);
    CHECK(rep.identity_holds);
    if (t == TNorm::minimum) {
      REQUIRE(rep.staircase.size() == 3);
      for (const auto& e : rep.staircase) CHECK(e.bounded);
    } else {
      CHECK(rep.staircase.empty());
    }
  }
  DeltaProbeReport unit = delta_condition_d_probe({StepFunction::one()}, TNorm::product);
  CHECK(unit.identity_holds);

  // Incomparable single jumps with no bound inside the family.
  std::vector<StepFunction> bad{StepFunction::point(Rat(1), make_rat(1, 2)),
                                StepFunction::point(Rat(2), make_rat(3, 4))};
  CHECK_THROWS_AS(delta_condition_d_probe(bad, TNorm::minimum), Error);
}

TEST_CASE("compactness through the closed-family definition") {
  Rng rng(3);
  const QuantaleId q = QuantaleId::bool2();
  for (int trial = 0; trial < 30; trial++) {
    int n = 1 + rng.index(4);
    std::vector<std::string> labels;
    for (int i = 0; i < n; i++) labels.push_back("x" + std::to_string(i));
    FiniteSet a("a", labels);
    VRel order = rel_id(a, q);
    int edges = rng.index(n * n + 1);
    for (int i = 0; i < edges; i++)
      order.set(rng.index(n), rng.index(n), QValue::truth(true));
    for (int round = 0; round <= n; round++) {
      VRel next = rel_join2(order, rel_compose(order, order));
      if (next == order) break;
      order = std::move(next);
    }
    PSpace t = PSpace::from_singleton_rows(a, rel_reverse(order));
    // Every subset of a finite closure space is compact.
    for (unsigned mask = 0; mask < (1u << n); mask++)
      CHECK(compact_subset_check(t, mask));
  }
}

TEST_CASE("up-directed value sets") {
  auto L = QuantaleId::lawvere();
  std::vector<QValue> chain{QValue::lawvere(XRat(0)), QValue::lawvere(XRat(1)),
                            QValue::lawvere(XRat(2))};
  CHECK(up_directed_values(L, chain));
  CHECK(!up_directed_values(L, {}));

  auto D = QuantaleId::delta(TNorm::minimum);
  std::vector<QValue> antichain{
      QValue::delta(TNorm::minimum, StepFunction::point(Rat(1), make_rat(1, 2))),
      QValue::delta(TNorm::minimum, StepFunction::point(Rat(2), make_rat(3, 4)))};
  CHECK(!up_directed_values(D, antichain));
}

TEST_CASE("small campaigns: all suites pass and stay meaningful") {
  GeneratorConfig cfg = small_config();
  CampaignSummary summary = fuzz_campaign(cfg, all_suites());
  CHECK(summary.ok());
  for (const auto& s : summary.suites) {
    CHECK(s.failures == 0);
    CHECK(s.passes > 0);
    CHECK(s.meaningful());
    CHECK(s.trials == cfg.trials);
  }

  // Determinism: same seed, same counts and reasons.
  CampaignSummary again = fuzz_campaign(cfg, all_suites());
  REQUIRE(again.suites.size() == summary.suites.size());
  for (std::size_t i = 0; i < summary.suites.size(); i++) {
    CHECK(summary.suites[i].passes == again.suites[i].passes);
    CHECK(summary.suites[i].skips == again.suites[i].skips);
    CHECK(summary.suites[i].skip_reasons == again.suites[i].skip_reasons);
  }
}

TEST_CASE("suite names round-trip") {
  for (Suite s : all_suites()) {
    auto parsed = parse_suite(suite_name(s));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == s);
  }
  CHECK(!parse_suite("nonsense").has_value());
}

TEST_CASE("a custom palette restricts the sampled values") {
  GeneratorConfig cfg = small_config();
  cfg.quantales = {QuantaleId::lawvere()};
  cfg.palette = {QValue::lawvere(XRat(0)), QValue::lawvere(XRat::inf())};
  for (std::uint64_t trial = 0; trial < 25; trial++) {
    auto inst = std::get<MaxInstance>(gen_instance(cfg, InstanceKind::max_right_bc, trial));
    // {0, inf} is closed under addition and joins, hence under the repairs.
    for (const QValue& v : inst.j.entries())
      CHECK((v == QValue::lawvere(XRat(0)) || v == QValue::lawvere(XRat::inf())));
  }
}

TEST_CASE("classical optimization instance with a two-chain target passes") {
  // The two-point space whose only nontrivial open is the top point, taken
  // as source and target, the identity relation, and the downset-topology
  // chain as optimization target.
  const QuantaleId q = QuantaleId::bool2();
  FiniteSet s("s", {"lo", "hi"});
  VRel order = VRel::build(q, s, s, [&](int x, int y) { return QValue::truth(x <= y); });
  ScottStructure two = scott_structure(VCat{s, order});
  ModularSpace m{two.lattice, USpace(s, two.alpha_inf)};
  REQUIRE(cocomplete_check(m).cocomplete);

  // Source/target: the same space, normalised.  The unit bimodule of an
  // ordered carrier is the order itself.
  ModularSpace a{two.lattice, USpace(s, two.alpha_inf)};
  VRel j = order;
  SetMap e = SetMap::identity(s);  // monotone and continuous into the chain
  MaxInstance inst{q, Monad::ultrafilter, a, a, m, j, e, 0};
  VerificationReport rep = verify_max_theorem(MaxVariant::right_cocomplete, inst);
  CHECK(!rep.skipped());
  CHECK(rep.passed());
}

TEST_CASE("antichain fiber images skip the extreme value hypotheses") {
  const QuantaleId q = QuantaleId::bool2();
  FiniteSet am("am", {"p", "q"});
  // Discrete two-point modular closure space as source and target.
  PSpace discrete = PSpace::from_singleton_rows(am, rel_id(am, q));
  ModularSpace a = normalise(discrete);
  ModularSpace m = normalise(discrete);
  FiniteSet b("b", {"y"});
  VCat bcat = VCat::discrete(b, q);
  // Both points relate to y, and d is injective: the image {p, q} is an
  // antichain with no upper bound inside itself.
  VRel j = VRel::fill(q, am, b, QValue::truth(true));
  SetMap d = SetMap::identity(am);
  VerificationReport rep = verify_evt_closure({a, m, bcat, j, d, 0});
  CHECK(rep.skipped());
  CHECK(*rep.skip_reason == "images of fibers are compact and up-directed");
}

TEST_CASE("total relation with a constant objective optimizes to a constant") {
  const QuantaleId q = QuantaleId::bool2();
  FiniteSet sa("sa", {"x0", "x1"}), sb("sb", {"y0", "y1"});
  PSpace ta = PSpace::from_singleton_rows(sa, rel_id(sa, q));
  PSpace tb = PSpace::from_singleton_rows(sb, rel_id(sb, q));
  VRel j = VRel::fill(q, sa, sb, QValue::truth(true));
  std::vector<XRat> e(2, XRat(make_rat(7, 3)));
  VerificationReport rep = berge_classical({ta, tb, j, e, 0});
  CHECK(rep.passed());
}
