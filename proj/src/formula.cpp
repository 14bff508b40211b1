#include "igl/formula.hpp"

#include <algorithm>
#include <cctype>

namespace igl {

CharString converse_string(const CharString& s) {
  CharString out;
  out.reserve(s.size());
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(it->converse());
  return out;
}

std::string charstring_str(const CharString& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += " ";
    out += s[i].str();
  }
  return out;
}

Alphabet::Alphabet(const std::vector<std::string>& forward_bases) {
  for (const auto& b : forward_bases) forward_.insert(b);
}

std::vector<Character> Alphabet::characters() const {
  std::vector<Character> out;
  for (const auto& b : forward_) out.push_back(Character{b, false});
  for (const auto& b : forward_) out.push_back(Character{b, true});
  return out;
}

std::vector<Character> Alphabet::forward_characters() const {
  std::vector<Character> out;
  for (const auto& b : forward_) out.push_back(Character{b, false});
  return out;
}

Formula Formula::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Atom;
  n->atom = std::move(name);
  n->len = 1;
  return Formula(n);
}

Formula Formula::bottom() {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Bottom;
  n->len = 1;
  return Formula(n);
}

Formula Formula::top() { return imp(bottom(), bottom()); }

Formula Formula::disj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Or;
  n->lhs = a.n_;
  n->rhs = b.n_;
  n->len = 1 + a.length() + b.length();
  return Formula(n);
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::And;
  n->lhs = a.n_;
  n->rhs = b.n_;
  n->len = 1 + a.length() + b.length();
  return Formula(n);
}

Formula Formula::imp(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Imp;
  n->lhs = a.n_;
  n->rhs = b.n_;
  n->len = 1 + a.length() + b.length();
  return Formula(n);
}

Formula Formula::dia(Character x, Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Dia;
  n->chr = std::move(x);
  n->lhs = a.n_;
  n->len = 1 + a.length();
  return Formula(n);
}

Formula Formula::box(Character x, Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = Conn::Box;
  n->chr = std::move(x);
  n->lhs = a.n_;
  n->len = 1 + a.length();
  return Formula(n);
}

bool Formula::is_top() const {
  return kind() == Conn::Imp && left().kind() == Conn::Bottom && right().kind() == Conn::Bottom;
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return 0;
  if (!a.n_) return b.n_ ? -1 : 0;
  if (!b.n_) return 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Conn::Atom:
      return a.atom_name().compare(b.atom_name());
    case Conn::Bottom:
      return 0;
    case Conn::Or:
    case Conn::And:
    case Conn::Imp: {
      int c = compare(a.left(), b.left());
      if (c) return c;
      return compare(a.right(), b.right());
    }
    case Conn::Dia:
    case Conn::Box: {
      if (a.character() != b.character()) return a.character() < b.character() ? -1 : 1;
      return compare(a.inner(), b.inner());
    }
  }
  return 0;
}

namespace {

// Printing precedence: -> lowest, then |, then &, then modalities/atoms.
int prec_of(const Formula& f) {
  if (f.is_top()) return 4;
  switch (f.kind()) {
    case Conn::Imp: return 1;
    case Conn::Or: return 2;
    case Conn::And: return 3;
    default: return 4;
  }
}

void print_rec(const Formula& f, int min_prec, std::string& out) {
  int p = prec_of(f);
  bool parens = p < min_prec;
  if (parens) out += "(";
  if (f.is_top()) {
    out += "true";
  } else {
    switch (f.kind()) {
      case Conn::Atom: out += f.atom_name(); break;
      case Conn::Bottom: out += "false"; break;
      case Conn::Imp:
        print_rec(f.left(), 2, out);
        out += " -> ";
        print_rec(f.right(), 1, out);
        break;
      case Conn::Or:
        print_rec(f.left(), 2, out);
        out += " | ";
        print_rec(f.right(), 3, out);
        break;
      case Conn::And:
        print_rec(f.left(), 3, out);
        out += " & ";
        print_rec(f.right(), 4, out);
        break;
      case Conn::Dia:
        out += "<" + f.character().str() + ">";
        print_rec(f.inner(), 4, out);
        break;
      case Conn::Box:
        out += "[" + f.character().str() + "]";
        print_rec(f.inner(), 4, out);
        break;
    }
  }
  if (parens) out += ")";
}

}  // namespace

std::string Formula::str() const {
  std::string out;
  print_rec(*this, 0, out);
  return out;
}

static void collect_signature(const Formula& a, bool pos, std::set<Formula>& out) {
  if (a.kind() == Conn::Bottom || a.is_top()) return;
  switch (a.kind()) {
    case Conn::Atom:
      if (pos) out.insert(a);
      return;
    case Conn::Or:
    case Conn::And:
      out.insert(a);
      collect_signature(a.left(), pos, out);
      collect_signature(a.right(), pos, out);
      return;
    case Conn::Imp:
      out.insert(a);
      collect_signature(a.left(), !pos, out);
      collect_signature(a.right(), pos, out);
      return;
    case Conn::Dia:
    case Conn::Box:
      out.insert(a);
      collect_signature(a.inner(), pos, out);
      return;
    default:
      return;
  }
}

SignedFormulaSet signature(const Formula& a, bool positive) {
  SignedFormulaSet s;
  s.positive = positive;
  s.members.insert(Formula::bottom());
  s.members.insert(Formula::top());
  collect_signature(a, positive, s.members);
  return s;
}

static void collect_atoms(const Formula& a, bool pos, std::set<std::string>& out) {
  if (a.kind() == Conn::Bottom || a.is_top()) return;
  switch (a.kind()) {
    case Conn::Atom:
      if (pos) out.insert(a.atom_name());
      return;
    case Conn::Or:
    case Conn::And:
      collect_atoms(a.left(), pos, out);
      collect_atoms(a.right(), pos, out);
      return;
    case Conn::Imp:
      collect_atoms(a.left(), !pos, out);
      collect_atoms(a.right(), pos, out);
      return;
    case Conn::Dia:
    case Conn::Box:
      collect_atoms(a.inner(), pos, out);
      return;
    default:
      return;
  }
}

std::set<std::string> atomic_signature(const Formula& a, bool positive) {
  std::set<std::string> out;
  collect_atoms(a, positive, out);
  return out;
}

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;
  const Alphabet* alphabet;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool try_consume(std::string_view tok) {
    skip_ws();
    if (text.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!try_consume(tok)) throw ParseError("expected '" + std::string(tok) + "'", pos);
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) pos++;
    if (pos == start) throw ParseError("expected identifier", pos);
    return std::string(text.substr(start, pos - start));
  }

  Character character() {
    std::string base = ident();
    bool back = false;
    if (pos < text.size() && text[pos] == '^') {
      pos++;
      back = true;
    }
    Character c{base, back};
    if (alphabet && !alphabet->empty() && !alphabet->contains(c))
      throw AlphabetError("unknown character '" + c.str() + "'");
    return c;
  }

  Formula primary() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    char c = text[pos];
    if (c == '(') {
      pos++;
      Formula f = implication();
      expect(")");
      return f;
    }
    if (c == '<') {
      pos++;
      Character x = character();
      expect(">");
      return Formula::dia(x, primary());
    }
    if (c == '[') {
      pos++;
      Character x = character();
      expect("]");
      return Formula::box(x, primary());
    }
    if (ident_char(c)) {
      std::string id = ident();
      if (id == "false") return Formula::bottom();
      if (id == "true") return Formula::top();
      return Formula::atom(id);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos);
  }

  Formula conjunction() {
    Formula f = primary();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '&') {
        pos++;
        f = Formula::conj(f, primary());
      } else {
        return f;
      }
    }
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '|') {
        pos++;
        f = Formula::disj(f, conjunction());
      } else {
        return f;
      }
    }
  }

  Formula implication() {
    Formula f = disjunction();
    skip_ws();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
      pos += 2;
      return Formula::imp(f, implication());
    }
    return f;
  }
};

}  // namespace

Formula parse_formula(std::string_view text, const Alphabet* alphabet) {
  Parser p{text, 0, alphabet};
  Formula f = p.implication();
  if (!p.eof()) throw ParseError("trailing input", p.pos);
  return f;
}

}  // namespace igl
