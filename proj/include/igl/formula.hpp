#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace igl {

// A modal index character. Forward characters are written "a", their
// converses "a^". The converse operation is an involution.
struct Character {
  std::string base;
  bool backward = false;

  Character converse() const { return Character{base, !backward}; }
  std::string str() const { return backward ? base + "^" : base; }

  friend auto operator<=>(const Character&, const Character&) = default;
};

using CharString = std::vector<Character>;

// x1...xn  |->  conv(xn)...conv(x1); the empty string maps to itself.
CharString converse_string(const CharString& s);

std::string charstring_str(const CharString& s);

// A converse-closed alphabet, declared by its forward bases.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& forward_bases);

  bool empty() const { return forward_.empty(); }
  bool contains(const Character& c) const { return forward_.count(c.base) > 0; }
  // All characters, forward and backward, in a fixed order.
  std::vector<Character> characters() const;
  std::vector<Character> forward_characters() const;

 private:
  std::set<std::string> forward_;
};

enum class Conn { Atom, Bottom, Or, And, Imp, Dia, Box };

// Immutable formula tree. Top is not a constructor: it is Imp(Bottom,Bottom),
// printed as "true".
class Formula {
 public:
  Formula() = default;

  static Formula atom(std::string name);
  static Formula bottom();
  static Formula top();
  static Formula disj(Formula a, Formula b);
  static Formula conj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula dia(Character x, Formula a);
  static Formula box(Character x, Formula a);

  bool valid() const { return n_ != nullptr; }
  Conn kind() const { return n_->kind; }
  const std::string& atom_name() const { return n_->atom; }
  const Character& character() const { return n_->chr; }
  Formula left() const { return Formula(n_->lhs); }
  Formula right() const { return Formula(n_->rhs); }
  Formula inner() const { return Formula(n_->lhs); }

  // Syntax-tree node count; strictly monotone on proper subformulas.
  int length() const { return n_->len; }
  bool is_top() const;

  std::string str() const;

  static int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

 private:
  struct Node {
    Conn kind;
    std::string atom;
    Character chr;
    std::shared_ptr<const Node> lhs, rhs;
    int len = 1;
  };
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct SignedFormulaSet {
  bool positive;
  std::set<Formula> members;
};

// sig+/sig- of the formula per the recursive clauses; always contains
// bottom and top.
SignedFormulaSet signature(const Formula& a, bool positive);

// The atoms occurring in sig°(a) (base members bottom/top excluded).
std::set<std::string> atomic_signature(const Formula& a, bool positive);

struct ParseError : std::runtime_error {
  size_t offset;
  ParseError(const std::string& msg, size_t off)
      : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

struct AlphabetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Surface syntax:
//   F ::= atom | "false" | "true" | F "&" F | F "|" F | F "->" F
//       | "<" char ">" F | "[" char "]" F | "(" F ")"
//   char ::= ident | ident "^"
// "->" is right-associative; binding <x>/[x] > "&" > "|" > "->".
// When an alphabet is supplied, modal characters must belong to it.
Formula parse_formula(std::string_view text, const Alphabet* alphabet = nullptr);

}  // namespace igl
