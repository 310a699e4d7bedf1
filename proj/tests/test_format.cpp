#include "qrel/format.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "qrel/enriched.hpp"
#include "support.hpp"

using namespace qrel;
using namespace qrel::testing;

#ifndef QREL_DOCS_DIR
#define QREL_DOCS_DIR "."
#endif
#ifndef QREL_CLI_PATH
#define QREL_CLI_PATH ""
#endif

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("the shipped two-point instance parses and evaluates") {
  InstanceDocument doc =
      parse_instance(slurp(std::string(QREL_DOCS_DIR) + "/examples/counterexample_a.qrel"));
  CHECK(doc.quantale == QuantaleId::lawvere());
  const VRel* j = doc.find_rel("J");
  REQUIRE(j != nullptr);
  const auto* d = doc.find_fun("d");
  REQUIRE(d != nullptr);
  auto l = kan_into_canonical(KanDirection::left, d->values, *j, Variance::lhom);
  CHECK(l[0] == QValue::lawvere(XRat(1)));
  BcReport bc = bc_check_canonical(KanDirection::left, l, d->values, *j, Variance::lhom);
  CHECK(!bc.holds);
  CHECK(bc.gaps[0] == QValue::lawvere(XRat(1)));
}

TEST_CASE("empty and malformed documents are rejected with locations") {
  CHECK_THROWS_AS(parse_instance(""), ParseError);
  try {
    parse_instance("quantale lawvere\nset A = { x,\n, }");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
  // Semantic errors: undefined names, shape mismatches, range violations.
  CHECK_THROWS_AS(parse_instance("quantale bool\nrel J : A -> A = [T]"), ParseError);
  CHECK_THROWS_AS(
      parse_instance("quantale bool\nset A = {x, y}\nrel J : A -> A = [T, F; T]"),
      ParseError);
  CHECK_THROWS_AS(
      parse_instance("quantale unit:product\nset A = {x}\nfun f : A = { x: 3/2 }"),
      ParseError);
  CHECK_THROWS_AS(
      parse_instance("quantale bool\nset A = {x, y}\nmap f : A -> A = { x: y }"),
      ParseError);
  CHECK_THROWS_AS(parse_instance("quantale nonsense"), ParseError);
  CHECK_THROWS_AS(parse_instance("quantale bool\nset A = {x, x}"), ParseError);
}

TEST_CASE("printing is a normal form: parse, print, parse agree") {
  for (const char* path : {"/examples/counterexample_a.qrel", "/examples/kan_boolean.qrel",
                           "/examples/max_right.qrel"}) {
    std::string text = slurp(std::string(QREL_DOCS_DIR) + path);
    InstanceDocument doc = parse_instance(text);
    std::string printed = print_instance(doc);
    InstanceDocument reparsed = parse_instance(printed);
    CHECK(print_instance(reparsed) == printed);
    CHECK(reparsed.quantale == doc.quantale);
    CHECK(reparsed.rels.size() == doc.rels.size());
    for (std::size_t i = 0; i < doc.rels.size(); i++)
      CHECK(reparsed.rels[i].second == doc.rels[i].second);
  }
}

TEST_CASE("documents round-trip machine values") {
  // A document over every quantale, with random matrices.
  for (const auto& q : all_quantales()) {
    Rng rng(17);
    std::ostringstream os;
    os << "quantale " << q.name() << "\n";
    os << "set A = { a0, a1 }\n";
    os << "rel R : A -> A = [ ";
    std::vector<QValue> vals;
    for (int i = 0; i < 4; i++) vals.push_back(random_value(rng, q));
    os << to_string(vals[0]) << ", " << to_string(vals[1]) << "; " << to_string(vals[2])
       << ", " << to_string(vals[3]) << " ]\n";
    InstanceDocument doc = parse_instance(os.str());
    const VRel* r = doc.find_rel("R");
    REQUIRE(r != nullptr);
    CHECK(r->at(0, 0) == vals[0]);
    CHECK(r->at(1, 1) == vals[3]);
  }
}

TEST_CASE("delta expressions") {
  StepFunction k = eval_delta_expression(TNorm::product, "k");
  CHECK(k == StepFunction::one());
  CHECK(eval_delta_expression(TNorm::product, "bot") == StepFunction());
  StepFunction v =
      eval_delta_expression(TNorm::product, "tensor([(1,1/2)], [(2,3/4)])");
  CHECK(v == StepFunction::point(make_rat(3), make_rat(3, 8)));
  StepFunction r = eval_delta_expression(TNorm::minimum, "lhom([(0,1/2)], [(1,1/4)])");
  CHECK(r.eval(XRat::inf()) == make_rat(1, 4));
  CHECK_THROWS_AS(eval_delta_expression(TNorm::product, "frob(k, k)"), ParseError);
  CHECK_THROWS_AS(eval_delta_expression(TNorm::product, "tensor(k"), ParseError);
}

TEST_CASE("command line exit codes") {
  std::string cli = QREL_CLI_PATH;
  if (cli.empty()) return;
  std::string dir = QREL_DOCS_DIR;
  auto run = [&](const std::string& args) {
    int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("check " + dir + "/examples/counterexample_a.qrel") == 0);
  CHECK(run("verify --builtin counterexamples") == 0);
  CHECK(run("kan " + dir + "/examples/kan_boolean.qrel") == 0);
  CHECK(run("check /nonexistent.qrel") == 2);
  CHECK(run("delta --tnorm product \"tensor(k\"") == 2);

  // A law violation: a modular block whose hom exceeds the structure.
  std::string bad = std::string("/tmp/qrel_bad_") + std::to_string(getpid()) + ".qrel";
  {
    std::ofstream out(bad);
    out << "quantale bool\nset A = { x, y }\n"
        << "rel big : A -> A = [ T, T; T, T ]\n"
        << "space S = convergence A [ T, F; F, T ]\n"
        << "modular M = (big, S)\n";
  }
  CHECK(run("check " + bad) == 1);
  std::remove(bad.c_str());
}

TEST_CASE("machine reports are byte-identical across runs") {
  std::string cli = QREL_CLI_PATH;
  if (cli.empty()) return;
  std::string cmd = cli + " fuzz --suite evt-closure --trials 60 --seed 11 --format machine";
  auto capture = [&]() {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[512];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    pclose(pipe);
    return out;
  };
  std::string first = capture();
  std::string second = capture();
  CHECK(first == second);
  CHECK(!first.empty());
}
