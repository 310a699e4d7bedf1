#pragma once

#include <map>
#include <string>
#include <vector>

#include "qrel/spaces.hpp"

namespace qrel {

/// Syntax or semantic error in an instance document, with its location.
struct ParseError : Error {
  ParseError(std::string message, int line, int col)
      : Error(message + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// A parsed instance file: one quantale declaration, named blocks and
/// queries.  All names resolve at parse time and every block type-checks
/// against the declared quantale.
struct InstanceDocument {
  struct SpaceBlock {
    bool closure = true;
    std::string carrier;
    std::variant<PSpace, USpace> space;
  };
  struct ModularBlock {
    std::string hom;
    std::string space;
    ModularSpace value;
  };
  struct FunBlock {
    std::string carrier;
    std::vector<QValue> values;
  };
  struct CatBlock {
    std::string carrier;
    std::string hom;
    VCat value;
  };
  struct Query {
    std::string op;
    std::vector<std::pair<std::string, std::string>> args;
    int line = 0;
    int col = 0;

    const std::string* find(const std::string& key) const;
  };

  QuantaleId quantale = QuantaleId::bool2();
  std::vector<std::pair<std::string, FiniteSet>> sets;
  std::vector<std::pair<std::string, SetMap>> maps;
  std::vector<std::pair<std::string, VRel>> rels;
  std::vector<std::pair<std::string, FunBlock>> funs;
  std::vector<std::pair<std::string, CatBlock>> cats;
  std::vector<std::pair<std::string, SpaceBlock>> spaces;
  std::vector<std::pair<std::string, ModularBlock>> modulars;
  std::vector<Query> queries;

  const FiniteSet* find_set(const std::string& name) const;
  const SetMap* find_map(const std::string& name) const;
  const VRel* find_rel(const std::string& name) const;
  const FunBlock* find_fun(const std::string& name) const;
  const CatBlock* find_cat(const std::string& name) const;
  const SpaceBlock* find_space(const std::string& name) const;
  const ModularBlock* find_modular(const std::string& name) const;
};

/// Exact parse with line/column diagnostics; throws ParseError.
InstanceDocument parse_instance(const std::string& text);

/// Canonical printer; parse . print . parse = parse.
std::string print_instance(const InstanceDocument& doc);

/// A small expression language over one delta quantale:
///   expr := stepfn-literal | bot | k
///         | tensor(e, e) | join(e, e) | meet(e, e) | lhom(e, e) | rhom(e, e)
/// Evaluates to a step function; throws ParseError on malformed input.
StepFunction eval_delta_expression(TNorm t, const std::string& text);

}  // namespace qrel
