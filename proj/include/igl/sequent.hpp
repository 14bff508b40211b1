#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "igl/formula.hpp"

namespace igl {

// Component label. Unique within one nested sequent; printed "w0", "w1", ...
struct Name {
  uint32_t id = 0;
  std::string str() const { return "w" + std::to_string(id); }
  friend auto operator<=>(const Name&, const Name&) = default;
};

// Single-conclusion Gentzen sequent: multiset antecedent, at most one
// consequent formula.
struct GSequent {
  std::vector<Formula> ante;
  std::optional<Formula> out;
};

// A tree of named Gentzen sequents. At most one component in the whole tree
// is right-filled.
struct NestedSequent {
  Name name;
  GSequent seq;
  std::vector<std::pair<Character, NestedSequent>> children;

  bool right_filled() const;
  std::optional<Name> output_at() const;
  int component_count() const;
  std::vector<std::pair<Name, const GSequent*>> components() const;  // pre-order
  const NestedSequent* find(const Name& n) const;
  NestedSequent* find(const Name& n);
  const NestedSequent* parent_of(const Name& n) const;
  std::set<Name> names() const;
  uint32_t max_name_id() const;
  bool wellformed(std::string* why = nullptr) const;

  std::string str() const;
  // Structural key; names are included only when with_names is set.
  std::string canonical_key(bool with_names = false) const;
};

struct SequentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PropagationGraph {
  std::vector<Name> nodes;
  std::vector<std::tuple<Name, Character, Name>> edges;  // closed under converse
  bool has_node(const Name& n) const;
};

PropagationGraph propagation_graph(const NestedSequent& g);

// G with the output formula (if any) removed.
NestedSequent strip_output(const NestedSequent& g);

// Root-level merge: antecedents and consequents unioned, children
// concatenated. Throws if both operands are right-filled or names clash.
// The result keeps g's root name.
NestedSequent merge_odot(const NestedSequent& g, const NestedSequent& k);

// Adds s's antecedent and consequent to the w-component.
NestedSequent graft(const NestedSequent& g, const Name& w, const GSequent& s);

// Equality up to antecedent reordering, sibling reordering, and renaming.
bool equivalent(const NestedSequent& a, const NestedSequent& b);

// Surface syntax:  S ::= Flist "=>" Flist Nests ; Nests ::= { "," "(" char ")" "[" S "]" }
// An empty formula list is written "-". Names are assigned in pre-order.
NestedSequent parse_sequent(std::string_view text, const Alphabet* alphabet = nullptr);

NestedSequent renamed(const NestedSequent& g, const std::map<Name, Name>& m);
// Renames components w0..wn in pre-order.
NestedSequent canonical_names(const NestedSequent& g);

}  // namespace igl
