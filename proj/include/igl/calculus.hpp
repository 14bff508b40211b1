#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igl/grammar.hpp"
#include "igl/sequent.hpp"

namespace igl {

enum class Rule {
  Id,
  BotL,
  OrL,
  OrR1,
  OrR2,
  AndL,
  AndR,
  ImpL,
  ImpR,
  DiaRProp,
  BoxLProp,
  DiaL,
  BoxR,
  DX
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view s);
int rule_arity(Rule r);

struct FormulaAddr {
  bool in_antecedent = true;  // side "in" vs "out"
  int index = 0;              // "out" uses index 0
};

struct RuleInstance {
  Rule rule;
  Name at;                            // principal component
  std::optional<FormulaAddr> principal;
  std::optional<Name> target;         // propagation rules
  std::optional<Character> character; // modal rules / dX
  std::optional<CharString> witness;  // advisory only; never trusted
};

struct RuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Premises of the rule instance read bottom-up, exactly per the calculus.
// Side conditions of propagation rules are re-decided with reach; stored
// witnesses are ignored. Fresh component names take ids above max_name_id.
std::vector<NestedSequent> apply_backward(const NestedSequent& g, const RuleInstance& inst,
                                          const AxiomSet& axioms);

struct Proof {
  NestedSequent conclusion;
  RuleInstance inst;  // leaves carry Id or BotL
  std::vector<Proof> premises;

  int height() const;
  int size() const;
};

struct CheckError {
  std::string path;  // premise indices from the root, e.g. "0.1.0"
  std::string rule;
  std::string reason;
  std::string str() const { return "at [" + path + "] rule " + rule + ": " + reason; }
};

struct CheckResult {
  bool ok = false;
  std::optional<CheckError> error;
};

// Independent verification: leaves must match id / botL, every internal
// node's premises must equal apply_backward of its instance (up to
// canonicalization and renaming), with side conditions re-decided.
CheckResult check_proof(const Proof& p, const AxiomSet& axioms);

// Verified constructors: throw RuleError if the pieces do not fit.
Proof make_leaf(NestedSequent conclusion, Rule r);
Proof make_node(NestedSequent conclusion, RuleInstance inst, std::vector<Proof> premises,
                const AxiomSet& axioms);

// Locates an id/botL witness in g; returns the leaf if one exists.
std::optional<Proof> try_close(const NestedSequent& g);

}  // namespace igl
