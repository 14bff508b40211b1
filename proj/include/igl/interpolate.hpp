#pragma once

#include <map>

#include "igl/calculus.hpp"
#include "igl/search.hpp"

namespace igl {

// Component of a biased sequent: the antecedent is split into a left and a
// right part; the consequent always belongs to the right part.
struct BiasedGSequent {
  std::vector<Formula> left;
  std::vector<Formula> right;
  std::optional<Formula> out;
};

struct BiasedSequent {
  Name name;
  BiasedGSequent seq;
  std::vector<std::pair<Character, BiasedSequent>> children;

  NestedSequent forget() const;      // drop the partition
  NestedSequent left_part() const;   // L(.): right-empty
  NestedSequent right_part() const;  // R(.): holds the consequents
  const BiasedSequent* find(const Name& n) const;
  std::vector<Name> names_preorder() const;
  std::string str() const;
};

// Swaps the two antecedent parts in every component.
BiasedSequent swap_bias(const BiasedSequent& g);

// Per-component left/right tags, aligned with the antecedent indices of the
// underlying nested sequent (true = left part).
using Biasing = std::map<Name, std::vector<bool>>;

BiasedSequent apply_biasing(const NestedSequent& g, const Biasing& b);

// Finite set of name:formula pairs (kept sorted and deduplicated).
struct Interpolant {
  std::vector<std::pair<Name, Formula>> pairs;

  void add(const Name& w, const Formula& a);
  std::vector<Formula> at(const Name& w) const;
  bool empty() const { return pairs.empty(); }
  std::set<std::string> atoms(bool positive) const;  // atoms of sig°, base members excluded
  std::string str() const;
};

enum class CombineKind { Implies, Or, And };

// The meta-operators =>, v, ^ over interpolants; `names` ranges over the
// ambient biased sequent's component names.
Interpolant combine(CombineKind kind, const Interpolant& i, const Interpolant& j,
                    const std::vector<Name>& names);

enum class LiftKind { Box, Dia };

// [x]I / <x>I: folds the u-pairs into a single boxed disjunction (resp.
// diamonded conjunction) at w; identity when I(u) is empty.
Interpolant modal_lift(LiftKind kind, const Character& x, const Interpolant& i, const Name& w,
                       const Name& u);

struct InterpolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InterpolationProof {
  std::string rule;  // idI1, idI2, botLI1, botLI2, orL_I1, orL_I2, andL_IP, orR_IP, andR_I,
                     // impR_IP, impL_I1, impL_I2, diaL_I1, diaL_I2, boxLprop_IP, diaRprop_IP,
                     // boxR_I, dX_I
  BiasedSequent seq;  // effective biasing of this node's conclusion
  Interpolant interp;
  Name at;
  std::optional<Name> target;
  std::optional<Name> child;  // fresh component of the premise (diaL/boxR/dX)
  std::optional<Formula> principal;
  std::optional<Character> character;
  std::vector<InterpolationProof> premises;
};

// Replays a proof over the biasing, assigning interpolants per the
// interpolation calculus. The proof must be in constructed form (stored
// premises literally equal to rule application, as produced by search and
// the transforms).
InterpolationProof derive_interpolation_proof(const Proof& p, const Biasing& biasing,
                                              const AxiomSet& axioms);

struct SideProofs {
  Proof left;   // L(G) >w (0 => A)
  Proof right;  // R(G) >w (A => 0)
};

using ClaimMap = std::map<std::pair<Name, Formula>, SideProofs>;

// Checker-valid side proofs for every pair of the root interpolant.
ClaimMap extract_side_proofs(const InterpolationProof& ip, const AxiomSet& axioms);

enum class InterpolantMode { Join, Meet };

struct LyndonResult {
  Formula interpolant;
  Proof proof_a_to_i;  // 0 => A -> I
  Proof proof_i_to_b;  // 0 => I -> B
  bool signature_ok;
};

// End-to-end Lyndon interpolation for a proof of 0 => A -> B.
LyndonResult lyndon_interpolant(const Proof& p, const AxiomSet& axioms,
                                InterpolantMode mode = InterpolantMode::Meet);

// Optional cleanup: collapses top/bottom units in joins and meets.
Formula simplify_interpolant(const Formula& f);

}  // namespace igl
