// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is exact; runtimes are asserted where stated.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qrel/format.hpp"
#include "qrel/harness.hpp"
#include "../tests/oracles.hpp"
#include "../tests/support.hpp"

using namespace qrel;
using namespace qrel::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int number;
  std::string name;
  std::function<bool(std::string&)> run;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

FiniteSet carrier(const std::string& prefix, int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; i++) labels.push_back(prefix + std::to_string(i));
  return FiniteSet(prefix, labels);
}

// -------------------------------------------------------------- criterion 1
bool counterexample_regression(std::string& detail) {
  auto start = Clock::now();
  RegressionReport rep = regression_counterexamples();
  bool ok = rep.ok && *rep.extension_value == QValue::lawvere(XRat(1)) &&
            *rep.bc_gap == QValue::lawvere(XRat(1)) && !rep.bc_holds && rep.u_compact &&
            rep.d_continuous && rep.d_functor;
  double secs = seconds_since(start);
  detail = "l(*)=" + to_string(*rep.extension_value) + " gap=" + to_string(*rep.bc_gap) +
           " in " + std::to_string(secs) + "s";
  return ok && secs < 1.0;
}

// -------------------------------------------------------------- criterion 2
bool delta_regression(std::string& detail) {
  auto start = Clock::now();
  StepFunction half = staircase(make_rat(1, 2));
  bool ok = true;
  detail = "residuals at inf:";
  for (const Rat& cap : {make_rat(1, 10), make_rat(1, 4), make_rat(49, 100)}) {
    StepFunction res = sf_residuate(TNorm::minimum, half, staircase(cap));
    Rat v = res.eval(XRat::inf());
    ok = ok && v <= cap && v < 1;
    detail += " " + to_string(v);
  }
  double secs = seconds_since(start);
  return ok && secs < 1.0;
}

// -------------------------------------------------------------- criterion 3
bool adjunction_suite(std::string& detail) {
  auto start = Clock::now();
  bool ok = true;
  for (const auto& q : all_quantales()) {
    Rng rng(0x11ADu + static_cast<unsigned>(q.family()) * 7 +
            (q.has_tnorm() ? static_cast<unsigned>(q.tnorm()) : 0));
    for (int i = 0; i < 10000 && ok; i++) {
      QValue a = random_value(rng, q), b = random_value(rng, q), c = random_value(rng, q);
      bool lhs = q_le(q, q_tensor(q, a, b), c);
      ok = lhs == q_le(q, b, q_lhom(q, a, c)) && lhs == q_le(q, a, q_rhom(q, c, b));
    }
    if (!ok) {
      detail = "adjunction broke in " + q.name();
      return false;
    }
  }
  // Residuation against the dense-grid oracle, a thousand pairs spread over
  // the three t-norms.
  for (TNorm t : {TNorm::product, TNorm::minimum, TNorm::lukasiewicz}) {
    Rng rng(0xD31 + static_cast<unsigned>(t));
    for (int i = 0; i < 334 && ok; i++) {
      StepFunction phi = random_step(rng, 4), chi = random_step(rng, 4);
      StepFunction res = sf_residuate(t, phi, chi);
      if (phi.is_zero()) {
        ok = res == StepFunction::one();
        continue;
      }
      auto grid = residual_test_grid(phi, chi);
      for (const Rat& at : grid)
        ok = ok && res.eval(XRat(at)) == oracle_residual_at(t, phi, chi, grid, XRat(at));
      ok = ok && res.eval(XRat::inf()) == oracle_residual_at(t, phi, chi, grid, XRat::inf());
    }
  }
  double secs = seconds_since(start);
  detail = "90000 triples + 1002 oracle pairs in " + std::to_string(secs) + "s";
  return ok && secs < 60.0;
}

// -------------------------------------------------------------- criterion 4
bool coreflection_suite(std::string& detail) {
  auto start = Clock::now();
  bool ok = true;
  for (const auto& q : all_quantales()) {
    Rng rng(0xC0DE + static_cast<unsigned>(q.family()));
    for (int i = 0; i < 1000 && ok; i++) {
      FiniteSet a = carrier("a", 1 + rng.index(4));
      // Unitary convergence: the round trip is the identity.
      USpace u(a, rel_join2(VRel::build(q, a, a,
                                        [&](int, int) { return random_value(rng, q); }),
                            rel_id(a, q)));
      PSpace closed = to_closure(u);
      ok = ok && to_convergence(closed) == u;
      ok = ok && closed.flags().finite_join_preserving && closed.flags().extensional;

      // Join-preserving reflexive preclosure: the other round trip.
      PSpace p = PSpace::from_singleton_rows(
          a, rel_join2(VRel::build(q, a, a, [&](int, int) { return random_value(rng, q); }),
                       rel_id(a, q)));
      ok = ok && to_closure(to_convergence(p)) == p;
    }
    if (!ok) {
      detail = "coreflection broke in " + q.name();
      return false;
    }
  }
  double secs = seconds_since(start);
  detail = "9000 instances in " + std::to_string(secs) + "s";
  return ok && secs < 60.0;
}

// -------------------------------------------------------------- criterion 5
bool algebraic_morphism_suite(std::string& detail) {
  auto start = Clock::now();
  bool ok = true;
  std::vector<QuantaleId> qs = all_quantales();
  for (int i = 0; i < 1000 && ok; i++) {
    Rng rng(0xA15E + i);
    const QuantaleId& q = qs[rng.below(qs.size())];
    FiniteSet a = carrier("a", 1 + rng.index(4)), b = carrier("b", 1 + rng.index(4));
    VRel j = VRel::build(q, a, b, [&](int, int) { return random_value(rng, q); });
    VRel eps_a = eps_rel(a, q), eps_b = eps_rel(b, q);
    ok = rel_compose(powerset_extend(j), eps_b) == rel_compose(eps_a, ultra_extend(j));

    USpace u(a, rel_join2(VRel::build(q, a, a,
                                      [&](int, int) { return random_value(rng, q); }),
                          rel_id(a, q)));
    ok = ok && u.flags().unitary &&
         rel_residuate(ResiduateSide::left, eps_a, rel_compose(eps_a, u.alpha())) ==
             u.alpha();
  }
  double secs = seconds_since(start);
  detail = "1000 instances in " + std::to_string(secs) + "s";
  return ok;
}

// -------------------------------------------------------------- criterion 6
bool classical_equivalence_suite(std::string& detail) {
  auto start = Clock::now();
  bool ok = true;
  const QuantaleId q = QuantaleId::bool2();
  for (int i = 0; i < 1000 && ok; i++) {
    Rng rng(0xC1A5 + i);
    FiniteSet a = carrier("a", 1 + rng.index(5)), b = carrier("b", 1 + rng.index(5));
    auto topology = [&](const FiniteSet& s) {
      VRel order = rel_id(s, q);
      int edges = rng.index(s.size() * s.size() + 1);
      for (int e = 0; e < edges; e++)
        order.set(rng.index(s.size()), rng.index(s.size()), QValue::truth(true));
      for (int round = 0; round <= s.size(); round++) {
        VRel next = rel_join2(order, rel_compose(order, order));
        if (next == order) break;
        order = std::move(next);
      }
      return PSpace::from_singleton_rows(s, rel_reverse(order));
    };
    PSpace ta = topology(a), tb = topology(b);
    VRel j = VRel::build(q, a, b, [&](int, int) { return QValue::truth(rng.flip()); });
    ok = classical_open_equiv(j, ta, tb).agree();
  }
  double secs = seconds_since(start);
  detail = "1000 instances in " + std::to_string(secs) + "s";
  return ok;
}

// -------------------------------------------------------------- criterion 7
bool maximum_theorem_campaigns(std::string& detail) {
  auto start = Clock::now();
  GeneratorConfig cfg;
  cfg.quantales = {QuantaleId::bool2(), QuantaleId::lawvere(),
                   QuantaleId::unit_interval(TNorm::product),
                   QuantaleId::unit_interval(TNorm::minimum),
                   QuantaleId::unit_interval(TNorm::lukasiewicz)};
  cfg.trials = 10000;
  cfg.seed = 0x3A9;
  CampaignSummary s =
      fuzz_campaign(cfg, {Suite::max_right_cocomplete, Suite::max_right_bc,
                          Suite::max_left_cocomplete, Suite::max_left_bc});
  bool ok = true;
  detail.clear();
  for (const auto& su : s.suites) {
    ok = ok && su.failures == 0 && su.meaningful();
    detail += suite_name(su.suite) + " pass=" + std::to_string(su.passes) +
              " fail=" + std::to_string(su.failures) + "; ";
  }
  double secs = seconds_since(start);
  detail += "in " + std::to_string(secs) + "s";
  return ok && secs < 600.0;
}

// -------------------------------------------------------------- criterion 8
bool extreme_value_campaigns(std::string& detail) {
  auto start = Clock::now();
  GeneratorConfig cfg;
  cfg.quantales = {QuantaleId::unit_interval(TNorm::product),
                   QuantaleId::unit_interval(TNorm::minimum),
                   QuantaleId::unit_interval(TNorm::lukasiewicz),
                   QuantaleId::lawvere(),
                   QuantaleId::bool2(),
                   QuantaleId::delta(TNorm::product),
                   QuantaleId::delta(TNorm::lukasiewicz)};
  cfg.trials = 2000;
  cfg.seed = 0xE77;
  CampaignSummary s = fuzz_campaign(cfg, {Suite::evt_closure, Suite::evt_quantale});
  bool ok = true;
  detail.clear();
  for (const auto& su : s.suites) {
    ok = ok && su.failures == 0 && su.meaningful();
    detail += suite_name(su.suite) + " pass=" + std::to_string(su.passes) +
              " fail=" + std::to_string(su.failures) + "; ";
  }
  // The hypothesis-necessity witnesses keep failing for the documented
  // reasons.
  RegressionReport rep = regression_counterexamples();
  ok = ok && !rep.j_discrete && !rep.bc_holds && rep.ok;
  for (const auto& e : rep.staircase) ok = ok && e.residual_at_inf < 1;
  detail += "witnesses stable";
  return ok;
}

// -------------------------------------------------------------- criterion 9
bool berge_campaign(std::string& detail) {
  auto start = Clock::now();
  GeneratorConfig cfg;
  cfg.trials = 2000;
  cfg.seed = 0xBE6;
  cfg.quantales = {QuantaleId::bool2()};
  CampaignSummary s = fuzz_campaign(cfg, {Suite::berge});
  const SuiteSummary& su = s.suites[0];
  double secs = seconds_since(start);
  detail = "pass=" + std::to_string(su.passes) + " skip=" + std::to_string(su.skips) +
           " fail=" + std::to_string(su.failures) + " in " + std::to_string(secs) + "s";
  return su.failures == 0 && su.meaningful();
}

// ------------------------------------------------------------- criterion 10
bool performance_floor(std::string& detail) {
  const QuantaleId q = QuantaleId::lawvere();
  FiniteSet big = carrier("n", 256);
  Rng rng(0xF100);
  auto random_big = [&] {
    return VRel::build(q, big, big, [&](int, int) {
      return QValue::lawvere(XRat(make_rat(static_cast<long>(rng.below(100)))));
    });
  };
  VRel a = random_big(), b = random_big();
  auto start = Clock::now();
  VRel c = rel_compose(a, b);
  double secs = seconds_since(start);
  detail = "256x256 compose in " + std::to_string(secs) + "s";
  return secs < 5.0 && c.rows() == 256;
}

}  // namespace

int main() {
  auto total_start = Clock::now();
  std::vector<Criterion> criteria{
      {1, "counterexample regression", counterexample_regression},
      {2, "delta staircase regression", delta_regression},
      {3, "residuation adjunction suite", adjunction_suite},
      {4, "coreflection suite", coreflection_suite},
      {5, "algebraic morphism suite", algebraic_morphism_suite},
      {6, "classical equivalence suite", classical_equivalence_suite},
      {7, "maximum theorem campaigns", maximum_theorem_campaigns},
      {8, "extreme value campaigns", extreme_value_campaigns},
      {9, "classical parametric optimization", berge_campaign},
      {10, "performance floor", performance_floor},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2d (%s): %s%s%s\n", c.number, c.name.c_str(),
                ok ? "PASS" : "FAIL", detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) failures++;
  }
  double total = std::chrono::duration<double>(Clock::now() - total_start).count();
  bool within_budget = total < 900.0;
  std::printf("acceptance total: %.1fs, %d failure(s)%s\n", total, failures,
              within_budget ? "" : " [OVER THE 15 MINUTE BUDGET]");
  return failures == 0 && within_budget ? 0 : 1;
}
