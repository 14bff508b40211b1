#include "igl/sequent.hpp"

#include <algorithm>
#include <cctype>

namespace igl {

bool NestedSequent::right_filled() const {
  if (seq.out.has_value()) return true;
  for (const auto& [x, c] : children)
    if (c.right_filled()) return true;
  return false;
}

std::optional<Name> NestedSequent::output_at() const {
  if (seq.out.has_value()) return name;
  for (const auto& [x, c] : children)
    if (auto n = c.output_at()) return n;
  return std::nullopt;
}

int NestedSequent::component_count() const {
  int n = 1;
  for (const auto& [x, c] : children) n += c.component_count();
  return n;
}

std::vector<std::pair<Name, const GSequent*>> NestedSequent::components() const {
  std::vector<std::pair<Name, const GSequent*>> out;
  out.emplace_back(name, &seq);
  for (const auto& [x, c] : children) {
    auto sub = c.components();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

const NestedSequent* NestedSequent::find(const Name& n) const {
  if (name == n) return this;
  for (const auto& [x, c] : children)
    if (const auto* r = c.find(n)) return r;
  return nullptr;
}

NestedSequent* NestedSequent::find(const Name& n) {
  return const_cast<NestedSequent*>(static_cast<const NestedSequent*>(this)->find(n));
}

const NestedSequent* NestedSequent::parent_of(const Name& n) const {
  for (const auto& [x, c] : children) {
    if (c.name == n) return this;
    if (const auto* r = c.parent_of(n)) return r;
  }
  return nullptr;
}

std::set<Name> NestedSequent::names() const {
  std::set<Name> out;
  for (auto& [n, s] : components()) out.insert(n);
  return out;
}

uint32_t NestedSequent::max_name_id() const {
  uint32_t m = name.id;
  for (const auto& [x, c] : children) m = std::max(m, c.max_name_id());
  return m;
}

bool NestedSequent::wellformed(std::string* why) const {
  auto comps = components();
  std::set<Name> seen;
  int outputs = 0;
  for (auto& [n, s] : comps) {
    if (!seen.insert(n).second) {
      if (why) *why = "duplicate component name " + n.str();
      return false;
    }
    if (s->out.has_value()) outputs++;
  }
  if (outputs > 1) {
    if (why) *why = "more than one output formula";
    return false;
  }
  return true;
}

static std::string flist_str(const std::vector<Formula>& fs) {
  if (fs.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += fs[i].str();
  }
  return out;
}

std::string NestedSequent::str() const {
  std::string out = flist_str(seq.ante) + " => " + (seq.out ? seq.out->str() : "-");
  for (const auto& [x, c] : children)
    out += ", (" + x.str() + ")[ " + c.str() + " ]";
  return out;
}

std::string NestedSequent::canonical_key(bool with_names) const {
  std::vector<std::string> ante;
  for (const auto& f : seq.ante) ante.push_back(f.str());
  std::sort(ante.begin(), ante.end());
  std::string key = with_names ? name.str() + "{" : "{";
  for (auto& a : ante) key += a + ";";
  key += "=>";
  if (seq.out) key += seq.out->str();
  std::vector<std::string> kids;
  for (const auto& [x, c] : children)
    kids.push_back("(" + x.str() + ")" + c.canonical_key(with_names));
  std::sort(kids.begin(), kids.end());
  for (auto& k : kids) key += k;
  key += "}";
  return key;
}

bool PropagationGraph::has_node(const Name& n) const {
  return std::find(nodes.begin(), nodes.end(), n) != nodes.end();
}

static void collect_graph(const NestedSequent& g, PropagationGraph& pg) {
  pg.nodes.push_back(g.name);
  for (const auto& [x, c] : g.children) {
    pg.edges.emplace_back(g.name, x, c.name);
    pg.edges.emplace_back(c.name, x.converse(), g.name);
    collect_graph(c, pg);
  }
}

PropagationGraph propagation_graph(const NestedSequent& g) {
  PropagationGraph pg;
  collect_graph(g, pg);
  return pg;
}

NestedSequent strip_output(const NestedSequent& g) {
  NestedSequent out = g;
  out.seq.out.reset();
  for (auto& [x, c] : out.children) c = strip_output(c);
  return out;
}

NestedSequent merge_odot(const NestedSequent& g, const NestedSequent& k) {
  if (g.right_filled() && k.right_filled())
    throw SequentError("merge: both operands right-filled");
  NestedSequent out = g;
  for (const auto& f : k.seq.ante) out.seq.ante.push_back(f);
  if (k.seq.out) out.seq.out = k.seq.out;
  for (const auto& kid : k.children) out.children.push_back(kid);
  std::string why;
  if (!out.wellformed(&why)) throw SequentError("merge: " + why);
  return out;
}

NestedSequent graft(const NestedSequent& g, const Name& w, const GSequent& s) {
  NestedSequent out = g;
  NestedSequent* comp = out.find(w);
  if (!comp) throw SequentError("graft: no component named " + w.str());
  for (const auto& f : s.ante) comp->seq.ante.push_back(f);
  if (s.out) {
    if (out.right_filled()) throw SequentError("graft: output uniqueness violation");
    comp->seq.out = s.out;
  }
  return out;
}

bool equivalent(const NestedSequent& a, const NestedSequent& b) {
  return a.canonical_key(false) == b.canonical_key(false);
}

namespace {

struct SeqParser {
  std::string_view text;
  size_t pos = 0;
  const Alphabet* alphabet;
  uint32_t next_name = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
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

  // A formula inside a sequent ends at ',', '=>', ']' or end of text at depth 0.
  Formula formula_until() {
    skip_ws();
    size_t start = pos;
    int depth = 0;
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '-' && pos + 1 < text.size() && text[pos + 1] == '>') {  // part of "->"
        pos += 2;
        continue;
      }
      if (c == '=' && pos + 1 < text.size() && text[pos + 1] == '>' && depth == 0) break;
      if (c == '(' || c == '<' || c == '[') depth++;
      if (c == ')' || c == '>' || c == ']') {
        if (depth == 0) break;
        depth--;
      }
      if (depth == 0 && c == ',') break;
      pos++;
    }
    auto sub = text.substr(start, pos - start);
    try {
      return parse_formula(sub, alphabet);
    } catch (ParseError& e) {
      throw ParseError(e.what(), start + e.offset);
    }
  }

  std::vector<Formula> flist_antecedent() {
    std::vector<Formula> out;
    if (try_consume("-")) return out;
    out.push_back(formula_until());
    while (true) {
      size_t save = pos;
      if (!try_consume(",")) break;
      skip_ws();
      if (pos < text.size() && text[pos] == '(') {  // start of a nesting
        pos = save;
        break;
      }
      out.push_back(formula_until());
    }
    return out;
  }

  NestedSequent sequent() {
    NestedSequent s;
    s.name = Name{next_name++};
    s.seq.ante = flist_antecedent();
    expect("=>");
    skip_ws();
    if (try_consume("-")) {
      // right-empty
    } else if (pos < text.size() && text[pos] != ',' && text[pos] != ']') {
      s.seq.out = formula_until();
    }
    while (true) {
      size_t save = pos;
      if (!try_consume(",")) break;
      if (!try_consume("(")) {
        pos = save;
        break;
      }
      // character
      skip_ws();
      size_t cstart = pos;
      while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        pos++;
      if (pos == cstart) throw ParseError("expected character name", pos);
      std::string base(text.substr(cstart, pos - cstart));
      bool back = false;
      if (pos < text.size() && text[pos] == '^') {
        pos++;
        back = true;
      }
      Character x{base, back};
      if (alphabet && !alphabet->empty() && !alphabet->contains(x))
        throw AlphabetError("unknown character '" + x.str() + "'");
      expect(")");
      expect("[");
      NestedSequent child = sequent();
      expect("]");
      s.children.emplace_back(x, std::move(child));
    }
    return s;
  }
};

}  // namespace

NestedSequent parse_sequent(std::string_view text, const Alphabet* alphabet) {
  SeqParser p{text, 0, alphabet, 0};
  NestedSequent s = p.sequent();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  std::string why;
  if (!s.wellformed(&why)) throw SequentError("ill-formed sequent: " + why);
  return s;
}

NestedSequent renamed(const NestedSequent& g, const std::map<Name, Name>& m) {
  NestedSequent out = g;
  if (auto it = m.find(out.name); it != m.end()) out.name = it->second;
  for (auto& [x, c] : out.children) c = renamed(c, m);
  return out;
}

static void assign_preorder(NestedSequent& g, uint32_t& next) {
  g.name = Name{next++};
  for (auto& [x, c] : g.children) assign_preorder(c, next);
}

NestedSequent canonical_names(const NestedSequent& g) {
  NestedSequent out = g;
  uint32_t next = 0;
  assign_preorder(out, next);
  return out;
}

}  // namespace igl
