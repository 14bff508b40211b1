#pragma once

#include <set>
#include <vector>

#include "igl/formula.hpp"
#include "igl/sequent.hpp"

namespace igl {

// Axioms: one seriality axiom per character in `serial`; one intuitionistic
// path axiom (<s>A -> <x>A) & ([x]A -> [s]A) per (x, s) in `paths`.
struct AxiomSet {
  Alphabet alphabet;
  std::set<Character> serial;
  std::vector<std::pair<Character, CharString>> paths;
};

struct Production {
  Character lhs;
  CharString rhs;
  friend auto operator<=>(const Production&, const Production&) = default;
};

// Converse-closed set of single-character-LHS productions.
class Grammar {
 public:
  Grammar() = default;
  explicit Grammar(std::vector<Production> prods);
  const std::vector<Production>& productions() const { return prods_; }
  bool has_epsilon_production() const;

 private:
  std::vector<Production> prods_;  // deduplicated, sorted
};

// x -> s, conv(x) -> conv(s) for every path axiom (x, s). Seriality axioms
// contribute no productions.
Grammar build_grammar(const AxiomSet& axioms);

// True iff x ->* s with a derivation of at most `bound` one-step rewrites.
// Brute-force rewriting; exists as a test oracle for reach.
bool derives_bounded(const Grammar& g, const Character& x, const CharString& s, int bound);

// { u : pg |= source -->^{Lx} u }, decided by CFL-reachability.
std::set<Name> reach(const Grammar& g, const PropagationGraph& pg, const Name& source,
                     const Character& x);

}  // namespace igl
