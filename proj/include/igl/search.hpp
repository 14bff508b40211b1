#pragma once

#include <optional>

#include "igl/calculus.hpp"

namespace igl {

struct SearchBudget {
  int max_noninvertible = 8;       // iterative-deepening cap on branch moves
  int max_propagations_per_pair = 2;
  int max_new_components = 8;
};

// Bounded backward proof search. A nullopt result is NoProofWithinBudget,
// explicitly not a disproof.
std::optional<Proof> prove(const NestedSequent& g, const AxiomSet& axioms,
                           const SearchBudget& budget);

std::optional<Proof> prove_formula(const Formula& f, const AxiomSet& axioms,
                                   const SearchBudget& budget);

}  // namespace igl
