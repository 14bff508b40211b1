#include "igl/json_io.hpp"

#include <fstream>

namespace igl {

using nlohmann::json;

namespace {

Character character_from_string(const std::string& s) {
  if (!s.empty() && s.back() == '^') return Character{s.substr(0, s.size() - 1), true};
  return Character{s, false};
}

Name name_from_string(const std::string& s) {
  if (s.size() < 2 || s[0] != 'w') throw ParseError("bad component name '" + s + "'", 0);
  return Name{static_cast<uint32_t>(std::stoul(s.substr(1)))};
}

}  // namespace

json axioms_to_json(const AxiomSet& a) {
  json j;
  json alpha = json::array();
  for (const auto& c : a.alphabet.forward_characters()) alpha.push_back(c.base);
  j["alphabet"] = alpha;
  json serial = json::array();
  for (const auto& c : a.serial) serial.push_back(c.str());
  j["serial"] = serial;
  json paths = json::array();
  for (const auto& [lhs, rhs] : a.paths) {
    json p;
    p["lhs"] = lhs.str();
    json r = json::array();
    for (const auto& c : rhs) r.push_back(c.str());
    p["rhs"] = r;
    paths.push_back(p);
  }
  j["paths"] = paths;
  return j;
}

AxiomSet axioms_from_json(const json& j) {
  AxiomSet a;
  std::vector<std::string> fw;
  if (j.contains("alphabet"))
    for (const auto& s : j.at("alphabet")) fw.push_back(s.get<std::string>());
  a.alphabet = Alphabet(fw);
  if (j.contains("serial"))
    for (const auto& s : j.at("serial")) {
      Character c = character_from_string(s.get<std::string>());
      if (!a.alphabet.empty() && !a.alphabet.contains(c))
        throw AlphabetError("serial character '" + c.str() + "' outside the alphabet");
      a.serial.insert(c);
    }
  if (j.contains("paths"))
    for (const auto& p : j.at("paths")) {
      Character lhs = character_from_string(p.at("lhs").get<std::string>());
      CharString rhs;
      for (const auto& s : p.at("rhs")) rhs.push_back(character_from_string(s.get<std::string>()));
      if (!a.alphabet.empty()) {
        if (!a.alphabet.contains(lhs))
          throw AlphabetError("path character '" + lhs.str() + "' outside the alphabet");
        for (const auto& c : rhs)
          if (!a.alphabet.contains(c))
            throw AlphabetError("path character '" + c.str() + "' outside the alphabet");
      }
      a.paths.emplace_back(lhs, rhs);
    }
  return a;
}

AxiomSet load_axioms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open axiom file " + path);
  json j;
  in >> j;
  return axioms_from_json(j);
}

namespace {

void preorder_renaming(const NestedSequent& g, std::map<Name, Name>& m, uint32_t& next) {
  m[g.name] = Name{next++};
  for (const auto& [x, c] : g.children) preorder_renaming(c, m, next);
}

json node_to_json(const Proof& p, bool compact, bool with_conclusion) {
  std::map<Name, Name> ren;
  uint32_t next = 0;
  preorder_renaming(p.conclusion, ren, next);
  json j;
  j["rule"] = rule_name(p.inst.rule);
  j["at"] = ren.at(p.inst.at).str();
  if (p.inst.principal) {
    j["principal"] = {{"side", p.inst.principal->in_antecedent ? "in" : "out"},
                      {"index", p.inst.principal->index}};
  } else {
    j["principal"] = nullptr;
  }
  j["character"] = p.inst.character ? json(p.inst.character->str()) : json(nullptr);
  j["target"] = p.inst.target ? json(ren.at(*p.inst.target).str()) : json(nullptr);
  if (p.inst.witness) {
    json w = json::array();
    for (const auto& c : *p.inst.witness) w.push_back(c.str());
    j["witness"] = w;
  }
  if (with_conclusion) j["conclusion"] = renamed(p.conclusion, ren).str();
  json prem = json::array();
  for (const auto& q : p.premises) prem.push_back(node_to_json(q, compact, !compact));
  j["premises"] = prem;
  return j;
}

RuleInstance instance_from_json(const json& j) {
  RuleInstance inst;
  auto r = rule_from_name(j.at("rule").get<std::string>());
  if (!r) throw ParseError("unknown rule '" + j.at("rule").get<std::string>() + "'", 0);
  inst.rule = *r;
  inst.at = name_from_string(j.at("at").get<std::string>());
  if (j.contains("principal") && !j.at("principal").is_null()) {
    FormulaAddr a;
    a.in_antecedent = j.at("principal").at("side").get<std::string>() == "in";
    a.index = j.at("principal").at("index").get<int>();
    inst.principal = a;
  }
  if (j.contains("character") && !j.at("character").is_null())
    inst.character = character_from_string(j.at("character").get<std::string>());
  if (j.contains("target") && !j.at("target").is_null())
    inst.target = name_from_string(j.at("target").get<std::string>());
  if (j.contains("witness") && !j.at("witness").is_null()) {
    CharString w;
    for (const auto& s : j.at("witness")) w.push_back(character_from_string(s.get<std::string>()));
    inst.witness = w;
  }
  return inst;
}

Proof node_from_json(const json& j, const AxiomSet& axioms,
                     const std::optional<NestedSequent>& reconstructed) {
  RuleInstance inst = instance_from_json(j);
  NestedSequent conclusion;
  if (j.contains("conclusion") && !j.at("conclusion").is_null()) {
    conclusion = parse_sequent(j.at("conclusion").get<std::string>(),
                               axioms.alphabet.empty() ? nullptr : &axioms.alphabet);
  } else if (reconstructed) {
    conclusion = *reconstructed;
  } else {
    throw ParseError("proof node without conclusion", 0);
  }
  const auto& prem = j.at("premises");
  std::vector<NestedSequent> want;
  if (!prem.empty()) {
    want = apply_backward(conclusion, inst, axioms);
    if (want.size() != prem.size()) throw RuleError("premise count mismatch in proof JSON");
  }
  Proof p;
  p.conclusion = std::move(conclusion);
  p.inst = std::move(inst);
  for (size_t i = 0; i < prem.size(); ++i)
    p.premises.push_back(node_from_json(prem[i], axioms, canonical_names(want[i])));
  return p;
}

}  // namespace

json proof_to_json(const Proof& p, bool compact) { return node_to_json(p, compact, true); }

Proof proof_from_json(const json& j, const AxiomSet& axioms) {
  return node_from_json(j, axioms, std::nullopt);
}

json model_to_json(const Model& m) {
  json j;
  j["worlds"] = m.num_worlds;
  json leq = json::array();
  for (int a = 0; a < m.num_worlds; ++a)
    for (int b = 0; b < m.num_worlds; ++b)
      if (m.le(a, b)) leq.push_back(json::array({a, b}));
  j["leq"] = leq;
  json rel;
  for (const auto& [x, r] : m.rel) {
    json pairs = json::array();
    for (int a = 0; a < m.num_worlds; ++a)
      for (int b = 0; b < m.num_worlds; ++b)
        if (r[a * m.num_worlds + b]) pairs.push_back(json::array({a, b}));
    rel[x.str()] = pairs;
  }
  j["rel"] = rel;
  json val;
  for (int w = 0; w < m.num_worlds; ++w) {
    json atoms = json::array();
    for (const auto& a : m.valuation[w]) atoms.push_back(a);
    val[std::to_string(w)] = atoms;
  }
  j["valuation"] = val;
  return j;
}

Model model_from_json(const json& j) {
  Model m;
  m.num_worlds = j.at("worlds").get<int>();
  m.leq.assign(m.num_worlds * m.num_worlds, 0);
  for (const auto& p : j.at("leq"))
    m.leq[p.at(0).get<int>() * m.num_worlds + p.at(1).get<int>()] = 1;
  if (j.contains("rel"))
    for (const auto& [k, pairs] : j.at("rel").items()) {
      std::vector<uint8_t> r(m.num_worlds * m.num_worlds, 0);
      for (const auto& p : pairs) r[p.at(0).get<int>() * m.num_worlds + p.at(1).get<int>()] = 1;
      m.rel[character_from_string(k)] = std::move(r);
    }
  m.valuation.assign(m.num_worlds, {});
  if (j.contains("valuation"))
    for (const auto& [k, atoms] : j.at("valuation").items())
      for (const auto& a : atoms) m.valuation[std::stoi(k)].insert(a.get<std::string>());
  return m;
}

namespace {

void pretty_rec(const Proof& p, int depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += p.conclusion.str();
  out += "   [";
  out += rule_name(p.inst.rule);
  out += " @ " + p.inst.at.str();
  if (p.inst.target) out += " -> " + p.inst.target->str();
  out += "]\n";
  for (const auto& q : p.premises) pretty_rec(q, depth + 1, out);
}

}  // namespace

std::string pretty_proof(const Proof& p) {
  std::string out;
  pretty_rec(p, 0, out);
  return out;
}

}  // namespace igl
