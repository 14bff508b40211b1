#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "igl/grammar.hpp"
#include "igl/sequent.hpp"

namespace igl {

// Finite bi-relational model. Relations are stored as row-major n*n boolean
// matrices; the valuation maps worlds to true atoms.
struct Model {
  int num_worlds = 0;
  std::vector<uint8_t> leq;                       // pre-order
  std::map<Character, std::vector<uint8_t>> rel;  // one per character (forward and backward)
  std::vector<std::set<std::string>> valuation;

  bool le(int a, int b) const { return leq[a * num_worlds + b] != 0; }
  bool related(const Character& x, int a, int b) const;
};

struct Violation {
  std::string condition;  // "preorder", "F1", "F2", "F3", "monotonicity", "seriality", "path"
  std::string detail;
};

std::vector<Violation> validate_model(const Model& m, const AxiomSet& axioms);

bool eval_formula(const Model& m, int world, const Formula& a);

using Interpretation = std::map<Name, int>;

bool eval_sequent(const Model& m, const Interpretation& iota, const NestedSequent& g);

// True under every interpretation of the sequent's names.
bool sequent_valid_on(const Model& m, const NestedSequent& g);

struct EnumerationLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All validated A-models with exactly num_worlds worlds over the given
// forward characters and atoms. Refuses num_worlds > 4 or more than 2
// forward characters.
std::vector<Model> enumerate_models(const AxiomSet& axioms,
                                    const std::vector<Character>& forward_chars,
                                    const std::vector<std::string>& atoms, int num_worlds);

struct Countermodel {
  Model model;
  int world = 0;
};

// First model (worlds counted upward from 1) with a world refuting the
// formula; nullopt if none up to max_worlds.
std::optional<Countermodel> find_countermodel(const Formula& a, const AxiomSet& axioms,
                                              int max_worlds);

}  // namespace igl
