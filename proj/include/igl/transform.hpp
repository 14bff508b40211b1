#pragma once

#include <map>

#include "igl/calculus.hpp"

namespace igl {

enum class AdmissibleKind { BotR, Nec, WL, WR, EW, CL, EC, Sft };

const char* admissible_name(AdmissibleKind k);

struct AdmissibleParams {
  Name at;                             // component the rule works on
  std::vector<Formula> formulas;       // wL: added antecedent formulas
  std::optional<Formula> out;          // wR: added output
  std::optional<Character> character;  // nec / ew
  int index_a = -1;                    // cL: first antecedent index; ec: first child index
  int index_b = -1;                    // cL: second antecedent index; ec: second child index
  int child_index = -1;                // sft: index of the moved child at `at`
  std::optional<Name> dest;            // sft: destination component
};

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fig.-2-style height-preserving admissible rules, as proof transformations.
// The result is checker-valid and no taller than the input.
Proof apply_admissible(AdmissibleKind k, const Proof& p, const AdmissibleParams& params,
                       const AxiomSet& axioms);

// Proof of the premise_index-th premise of `inst` applied to p's conclusion.
// Supported: orL, andL, diaL (by induction), boxLprop (via wL), dX (via ew).
Proof invert_rule(const RuleInstance& inst, int premise_index, const Proof& p,
                  const AxiomSet& axioms);

// Direct building blocks (also reachable through apply_admissible).
Proof weaken_left(const Proof& p, const Name& at, const std::vector<Formula>& extra,
                  const AxiomSet& axioms);
Proof weaken_right(const Proof& p, const Name& at, const Formula& out, const AxiomSet& axioms);
Proof bot_right(const Proof& p, const AxiomSet& axioms);
Proof necessitate(const Proof& p, const Character& x, const AxiomSet& axioms);
Proof external_weaken(const Proof& p, const Name& at, const Character& x, const AxiomSet& axioms);
Proof contract_left(const Proof& p, const Name& at, int index_a, int index_b,
                    const AxiomSet& axioms);
Proof external_contract(const Proof& p, const Name& at, int child_a, int child_b,
                        const AxiomSet& axioms);
Proof shift(const Proof& p, const Name& at, int child_index, const Name& dest,
            const AxiomSet& axioms);

Proof rename_proof(const Proof& p, const std::map<Name, Name>& m);

// Cut elimination: left proves strip_output(C) > cut_at (0 => A), right
// proves C > cut_at (A => 0); returns a cut-free checker-valid proof of C,
// where C is right's conclusion with one occurrence of A removed at cut_at.
Proof eliminate_cut(const Proof& left, const Proof& right, const Name& cut_at,
                    const Formula& cut_formula, const AxiomSet& axioms);

struct CutStats {
  long recursive_cuts = 0;
  int max_depth = 0;
  void reset() { recursive_cuts = 0; max_depth = 0; }
};
CutStats& cut_stats();

}  // namespace igl
