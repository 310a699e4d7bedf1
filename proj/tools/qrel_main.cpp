// qrel: exact checker and verifier for quantale-valued relations, Kan
// extensions, finite closure/convergence structures and the optimization
// theorems built on them.
//
// Exit codes: 0 all checks passed, 1 a violation or failed conclusion was
// found, 2 malformed input.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrel/format.hpp"
#include "qrel/harness.hpp"

using json = nlohmann::ordered_json;
using namespace qrel;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool machine_format(const std::string& format) {
  if (format == "machine") return true;
  if (format == "text") return false;
  throw CLI::ValidationError("--format must be text or machine");
}

json report_to_json(const VerificationReport& r) {
  json out;
  json hyps = json::array();
  for (const auto& [name, ok] : r.hypotheses) hyps.push_back({{"name", name}, {"holds", ok}});
  out["hypotheses"] = hyps;
  if (r.skipped())
    out["skipped"] = *r.skip_reason;
  else
    out["conclusion"] = *r.conclusion;
  out["witnesses"] = r.witnesses;
  return out;
}

void print_report_text(std::ostream& os, const std::string& title,
                       const VerificationReport& r) {
  os << title << ": ";
  if (r.skipped())
    os << "skip (" << *r.skip_reason << ")";
  else
    os << (*r.conclusion ? "pass" : "FAIL");
  os << "\n";
  for (const auto& [name, ok] : r.hypotheses)
    os << "  hypothesis " << name << ": " << (ok ? "holds" : "fails") << "\n";
  for (const auto& w : r.witnesses) os << "  note: " << w << "\n";
}

json summary_to_json(const CampaignSummary& s) {
  json out;
  json suites = json::array();
  for (const auto& su : s.suites) {
    json j;
    j["suite"] = suite_name(su.suite);
    j["trials"] = su.trials;
    j["passes"] = su.passes;
    j["skips"] = su.skips;
    j["failures"] = su.failures;
    j["meaningful"] = su.meaningful();
    json reasons = json::object();
    for (const auto& [reason, count] : su.skip_reasons) reasons[reason] = count;
    j["skip_reasons"] = reasons;
    j["failure_seeds"] = su.failure_seeds;
    suites.push_back(j);
  }
  out["suites"] = suites;
  out["ok"] = s.ok();
  return out;
}

void print_summary_text(std::ostream& os, const CampaignSummary& s) {
  for (const auto& su : s.suites) {
    os << suite_name(su.suite) << ": trials=" << su.trials << " pass=" << su.passes
       << " skip=" << su.skips << " fail=" << su.failures
       << (su.meaningful() ? "" : " [NOT MEANINGFUL]") << "\n";
    for (const auto& [reason, count] : su.skip_reasons)
      os << "  skip " << count << "x: " << reason << "\n";
    for (auto seed : su.failure_seeds) os << "  failing seed: " << seed << "\n";
  }
  os << "campaign: " << (s.ok() ? "pass" : "FAIL") << " (" << s.seconds << "s)\n";
}

struct CheckOutcome {
  json machine = json::array();
  std::ostringstream text;
  bool violation = false;

  void add(const std::string& object, const std::string& law, bool holds,
           const std::string& detail = "") {
    machine.push_back({{"object", object}, {"law", law}, {"holds", holds}});
    text << object << ": " << law << " " << (holds ? "holds" : "FAILS");
    if (!detail.empty()) text << " (" << detail << ")";
    text << "\n";
    if (!holds) violation = true;
  }
};

int cmd_check(const InstanceDocument& doc, bool machine) {
  CheckOutcome out;
  for (const auto& [name, cat] : doc.cats) {
    VCatReport rep = check_vcat(cat.value);
    out.add(name, "category axioms", rep.ok(), rep.witness);
  }
  for (const auto& [name, block] : doc.spaces) {
    if (block.closure) {
      const PSpaceFlags& flags = std::get<PSpace>(block.space).flags();
      out.add(name, "reflexivity (R)", flags.reflexive, flags.witness);
      out.add(name, "extensionality (E)", flags.extensional);
      out.add(name, "transitivity (T)", flags.transitive);
      out.machine.back()["finite_join_preserving"] = flags.finite_join_preserving;
      out.text << name << ": preserves finite joins "
               << (flags.finite_join_preserving ? "yes" : "no") << "\n";
    } else {
      const USpaceFlags& flags = std::get<USpace>(block.space).flags();
      out.add(name, "reflexivity (R)", flags.reflexive, flags.witness);
      out.machine.back()["category"] = flags.category;
      out.text << name << ": convergence category axioms "
               << (flags.category ? "hold" : "do not hold") << "\n";
    }
  }
  for (const auto& [name, block] : doc.modulars) {
    ModularityReport rep = modularity_check(block.value);
    out.add(name, "modularity (M)", rep.modular, rep.witness);
    out.machine.back()["normalised"] = rep.normalised;
  }
  if (machine)
    std::cout << json{{"command", "check"}, {"results", out.machine},
                      {"ok", !out.violation}}
                     .dump(2)
              << "\n";
  else
    std::cout << out.text.str() << (out.violation ? "check: FAIL\n" : "check: pass\n");
  return out.violation ? kExitViolation : kExitPass;
}

const VRel& need_rel(const InstanceDocument& doc, const InstanceDocument::Query& q,
                     const std::string& key) {
  const std::string* name = q.find(key);
  if (!name) throw ParseError("query needs " + key + "=<rel>", q.line, q.col);
  const VRel* r = doc.find_rel(*name);
  if (!r) throw ParseError("undefined relation '" + *name + "'", q.line, q.col);
  return *r;
}

const InstanceDocument::FunBlock& need_fun(const InstanceDocument& doc,
                                           const InstanceDocument::Query& q,
                                           const std::string& key) {
  const std::string* name = q.find(key);
  if (!name) throw ParseError("query needs " + key + "=<fun>", q.line, q.col);
  const auto* f = doc.find_fun(*name);
  if (!f) throw ParseError("undefined fun '" + *name + "'", q.line, q.col);
  return *f;
}

int cmd_kan(const InstanceDocument& doc, bool machine) {
  json results = json::array();
  std::ostringstream text;
  int evaluated = 0;
  for (const auto& q : doc.queries) {
    if (q.op != "kan") continue;
    evaluated++;
    const std::string* dirtext = q.find("direction");
    if (!dirtext || (*dirtext != "left" && *dirtext != "right"))
      throw ParseError("kan query needs direction=left|right", q.line, q.col);
    KanDirection dir = *dirtext == "left" ? KanDirection::left : KanDirection::right;
    Variance variance = Variance::lhom;
    if (const std::string* v = q.find("variance")) {
      if (*v == "rhom")
        variance = Variance::rhom;
      else if (*v != "lhom")
        throw ParseError("variance must be lhom or rhom", q.line, q.col);
    }
    const VRel& j = need_rel(doc, q, "rel");
    const auto& fun = need_fun(doc, q, "values");
    const FiniteSet& expected =
        dir == KanDirection::left ? j.source() : j.target();
    if (fun.carrier != expected.name())
      throw ParseError("values must live on " + expected.name(), q.line, q.col);

    std::vector<QValue> ext = kan_into_canonical(dir, fun.values, j, variance);
    const FiniteSet& domain = dir == KanDirection::left ? j.target() : j.source();
    json one;
    one["direction"] = *dirtext;
    json values = json::object();
    text << "kan " << *dirtext << " of " << *q.find("values") << " along "
         << *q.find("rel") << ":\n";
    for (int i = 0; i < domain.size(); i++) {
      values[domain.label(i)] = to_string(ext[i]);
      text << "  " << domain.label(i) << " = " << to_string(ext[i]) << "\n";
    }
    one["values"] = values;
    results.push_back(one);
  }
  if (evaluated == 0) throw ParseError("document has no kan query", 0, 0);
  if (machine)
    std::cout << json{{"command", "kan"}, {"results", results}}.dump(2) << "\n";
  else
    std::cout << text.str();
  return kExitPass;
}

int cmd_verify_doc(const InstanceDocument& doc, bool machine) {
  json results = json::array();
  std::ostringstream text;
  bool failed = false;
  int evaluated = 0;
  for (const auto& q : doc.queries) {
    if (q.op != "verify") continue;
    evaluated++;
    const std::string* theorem = q.find("theorem");
    if (!theorem) throw ParseError("verify query needs theorem=<name>", q.line, q.col);

    auto need_modular = [&](const std::string& key) -> const ModularSpace& {
      const std::string* name = q.find(key);
      if (!name) throw ParseError("query needs " + key + "=<modular>", q.line, q.col);
      const auto* m = doc.find_modular(*name);
      if (!m) throw ParseError("undefined modular block '" + *name + "'", q.line, q.col);
      return m->value;
    };
    auto need_cat = [&](const std::string& key) -> const VCat& {
      const std::string* name = q.find(key);
      if (!name) throw ParseError("query needs " + key + "=<cat>", q.line, q.col);
      const auto* c = doc.find_cat(*name);
      if (!c) throw ParseError("undefined cat '" + *name + "'", q.line, q.col);
      return c->value;
    };
    auto need_map = [&](const std::string& key) -> const SetMap& {
      const std::string* name = q.find(key);
      if (!name) throw ParseError("query needs " + key + "=<map>", q.line, q.col);
      const SetMap* m = doc.find_map(*name);
      if (!m) throw ParseError("undefined map '" + *name + "'", q.line, q.col);
      return *m;
    };

    VerificationReport report;
    if (*theorem == "evt-quantale") {
      report = verify_evt_quantale({doc.quantale, need_modular("a"), need_cat("b"),
                                    need_rel(doc, q, "rel"), need_fun(doc, q, "values").values,
                                    0});
    } else if (*theorem == "evt-closure") {
      report = verify_evt_closure({need_modular("a"), need_modular("m"), need_cat("b"),
                                   need_rel(doc, q, "rel"), need_map("map"), 0});
    } else if (auto suite = parse_suite(*theorem);
               suite && (*suite == Suite::max_right_cocomplete ||
                         *suite == Suite::max_right_bc ||
                         *suite == Suite::max_left_cocomplete ||
                         *suite == Suite::max_left_bc)) {
      const std::string* monad = q.find("monad");
      if (!monad || (*monad != "powerset" && *monad != "ultrafilter"))
        throw ParseError("query needs monad=powerset|ultrafilter", q.line, q.col);
      MaxVariant variant = *suite == Suite::max_right_cocomplete
                               ? MaxVariant::right_cocomplete
                               : *suite == Suite::max_right_bc
                                     ? MaxVariant::right_bc
                                     : *suite == Suite::max_left_cocomplete
                                           ? MaxVariant::left_cocomplete
                                           : MaxVariant::left_bc;
      report = verify_max_theorem(
          variant, {doc.quantale,
                    *monad == "powerset" ? Monad::powerset : Monad::ultrafilter,
                    need_modular("a"), need_modular("b"), need_modular("m"),
                    need_rel(doc, q, "rel"), need_map("map"), 0});
    } else {
      throw ParseError("unknown theorem '" + *theorem + "'", q.line, q.col);
    }

    if (report.failed()) failed = true;
    json one = report_to_json(report);
    one["theorem"] = *theorem;
    results.push_back(one);
    print_report_text(text, "verify " + *theorem, report);
  }
  if (evaluated == 0) throw ParseError("document has no verify query", 0, 0);
  if (machine)
    std::cout << json{{"command", "verify"}, {"results", results}, {"ok", !failed}}.dump(2)
              << "\n";
  else
    std::cout << text.str();
  return failed ? kExitViolation : kExitPass;
}

int cmd_verify_builtin(const std::string& which, int trials, std::uint64_t seed,
                       bool machine) {
  if (which == "counterexamples") {
    RegressionReport rep = regression_counterexamples();
    if (machine) {
      json out;
      out["command"] = "verify";
      out["builtin"] = "counterexamples";
      out["extension_value"] = to_string(*rep.extension_value);
      out["bc_gap"] = to_string(*rep.bc_gap);
      out["bc_holds"] = rep.bc_holds;
      out["u_compact"] = rep.u_compact;
      out["d_continuous"] = rep.d_continuous;
      out["d_functor"] = rep.d_functor;
      out["j_discrete"] = rep.j_discrete;
      json stairs = json::array();
      for (const auto& e : rep.staircase)
        stairs.push_back({{"cap", to_string(e.level)},
                          {"residual_at_inf", to_string(e.residual_at_inf)},
                          {"bounded", e.bounded}});
      out["staircase"] = stairs;
      out["ok"] = rep.ok;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "two-point instance: l(*) = " << to_string(*rep.extension_value)
                << ", gap = " << to_string(*rep.bc_gap) << ", condition "
                << (rep.bc_holds ? "holds" : "fails") << "\n"
                << "  J U-compact: " << (rep.u_compact ? "yes" : "no")
                << ", d continuous: " << (rep.d_continuous ? "yes" : "no")
                << ", d non-expansive: " << (rep.d_functor ? "yes" : "no")
                << ", J discrete: " << (rep.j_discrete ? "yes" : "no") << "\n";
      for (const auto& e : rep.staircase)
        std::cout << "staircase cap " << to_string(e.level) << ": residual at inf = "
                  << to_string(e.residual_at_inf) << (e.bounded ? " (bounded)" : " (UNBOUNDED)")
                  << "\n";
      std::cout << (rep.ok ? "counterexample regression: pass\n"
                           : "counterexample regression: FAIL\n");
    }
    return rep.ok ? kExitPass : kExitViolation;
  }

  GeneratorConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.quantales = {QuantaleId::bool2(), QuantaleId::lawvere(),
                   QuantaleId::unit_interval(TNorm::product),
                   QuantaleId::unit_interval(TNorm::minimum),
                   QuantaleId::unit_interval(TNorm::lukasiewicz)};
  std::vector<Suite> suites;
  if (which == "berge")
    suites = {Suite::berge};
  else if (which == "evt")
    suites = {Suite::evt_closure, Suite::evt_quantale};
  else
    throw CLI::ValidationError("--builtin must be counterexamples, berge or evt");
  CampaignSummary summary = fuzz_campaign(cfg, suites);
  if (machine)
    std::cout << summary_to_json(summary).dump(2) << "\n";
  else
    print_summary_text(std::cout, summary);
  return summary.ok() ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact quantale-relation calculus and theorem verifier"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  std::string builtin;
  std::string suite_list = "all";
  std::string quantale_list = "bool,lawvere,unit:product,unit:min,unit:lukasiewicz";
  std::string tnorm_name_arg = "product";
  std::string expression;
  std::string eval_at;
  int trials = 1000;
  int max_size = 3;
  std::uint64_t seed = 0;

  CLI::App* check = app.add_subcommand("check", "validate a document and its laws");
  check->add_option("file", file)->required();
  check->add_option("--format", format);

  CLI::App* kan = app.add_subcommand("kan", "evaluate the kan queries of a document");
  kan->add_option("file", file)->required();
  kan->add_option("--format", format);

  CLI::App* verify = app.add_subcommand("verify", "verify theorem instances");
  verify->add_option("file", file);
  verify->add_option("--builtin", builtin)
      ->description("counterexamples, berge or evt");
  verify->add_option("--format", format);
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed);

  CLI::App* fuzz = app.add_subcommand("fuzz", "run seeded verification campaigns");
  fuzz->add_option("--suite", suite_list)->description("comma list or 'all'");
  fuzz->add_option("--trials", trials);
  fuzz->add_option("--seed", seed);
  fuzz->add_option("--quantale", quantale_list);
  fuzz->add_option("--max-size", max_size);
  fuzz->add_option("--format", format);

  CLI::App* delta = app.add_subcommand("delta", "evaluate a delta-quantale expression");
  delta->add_option("expr", expression)->required();
  delta->add_option("--tnorm", tnorm_name_arg)->description("product, min or lukasiewicz");
  delta->add_option("--eval", eval_at)->description("evaluate the result at this point");

  CLI::App* print = app.add_subcommand("print", "reprint a document canonically");
  print->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInput : kExitPass;
  }

  try {
    bool machine = machine_format(format);
    if (check->parsed()) return cmd_check(parse_instance(slurp(file)), machine);
    if (kan->parsed()) return cmd_kan(parse_instance(slurp(file)), machine);
    if (verify->parsed()) {
      if (!builtin.empty()) return cmd_verify_builtin(builtin, trials, seed, machine);
      if (file.empty()) throw CLI::ValidationError("verify needs a file or --builtin");
      return cmd_verify_doc(parse_instance(slurp(file)), machine);
    }
    if (fuzz->parsed()) {
      GeneratorConfig cfg;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.max_carrier = max_size;
      cfg.max_target = max_size;
      std::stringstream qs(quantale_list);
      std::string part;
      while (std::getline(qs, part, ',')) {
        auto q = QuantaleId::parse(part);
        if (!q) throw CLI::ValidationError("unknown quantale '" + part + "'");
        cfg.quantales.push_back(*q);
      }
      std::vector<Suite> suites;
      if (suite_list == "all") {
        suites = all_suites();
      } else {
        std::stringstream ss(suite_list);
        while (std::getline(ss, part, ',')) {
          auto s = parse_suite(part);
          if (!s) throw CLI::ValidationError("unknown suite '" + part + "'");
          suites.push_back(*s);
        }
      }
      CampaignSummary summary = fuzz_campaign(cfg, suites);
      if (machine)
        std::cout << summary_to_json(summary).dump(2) << "\n";
      else
        print_summary_text(std::cout, summary);
      return summary.ok() ? kExitPass : kExitViolation;
    }
    if (delta->parsed()) {
      TNorm t;
      if (tnorm_name_arg == "product")
        t = TNorm::product;
      else if (tnorm_name_arg == "min" || tnorm_name_arg == "minimum")
        t = TNorm::minimum;
      else if (tnorm_name_arg == "lukasiewicz" || tnorm_name_arg == "luk")
        t = TNorm::lukasiewicz;
      else
        throw CLI::ValidationError("unknown t-norm '" + tnorm_name_arg + "'");
      StepFunction result = eval_delta_expression(t, expression);
      if (eval_at.empty()) {
        std::cout << to_string(result) << "\n";
      } else {
        auto at = parse_xrat(eval_at);
        if (!at || at->is_neg_inf())
          throw CLI::ValidationError("--eval needs a nonnegative rational or inf");
        std::cout << to_string(result.eval(*at)) << "\n";
      }
      return kExitPass;
    }
    if (print->parsed()) {
      std::cout << print_instance(parse_instance(slurp(file)));
      return kExitPass;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
