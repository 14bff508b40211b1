#include "igl/calculus.hpp"

#include <algorithm>

namespace igl {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Id: return "id";
    case Rule::BotL: return "botL";
    case Rule::OrL: return "orL";
    case Rule::OrR1: return "orR1";
    case Rule::OrR2: return "orR2";
    case Rule::AndL: return "andL";
    case Rule::AndR: return "andR";
    case Rule::ImpL: return "impL";
    case Rule::ImpR: return "impR";
    case Rule::DiaRProp: return "diaRprop";
    case Rule::BoxLProp: return "boxLprop";
    case Rule::DiaL: return "diaL";
    case Rule::BoxR: return "boxR";
    case Rule::DX: return "dX";
  }
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view s) {
  static const std::pair<const char*, Rule> table[] = {
      {"id", Rule::Id},         {"botL", Rule::BotL},     {"orL", Rule::OrL},
      {"orR1", Rule::OrR1},     {"orR2", Rule::OrR2},     {"andL", Rule::AndL},
      {"andR", Rule::AndR},     {"impL", Rule::ImpL},     {"impR", Rule::ImpR},
      {"diaRprop", Rule::DiaRProp}, {"boxLprop", Rule::BoxLProp}, {"diaL", Rule::DiaL},
      {"boxR", Rule::BoxR},     {"dX", Rule::DX},
  };
  for (auto& [n, r] : table)
    if (s == n) return r;
  return std::nullopt;
}

int rule_arity(Rule r) {
  switch (r) {
    case Rule::Id:
    case Rule::BotL:
      return 0;
    case Rule::OrL:
    case Rule::AndR:
    case Rule::ImpL:
      return 2;
    default:
      return 1;
  }
}

namespace {

const GSequent& component_at(const NestedSequent& g, const Name& w) {
  const NestedSequent* c = g.find(w);
  if (!c) throw RuleError("no component named " + w.str());
  return c->seq;
}

Formula principal_in(const NestedSequent& g, const RuleInstance& inst) {
  const GSequent& s = component_at(g, inst.at);
  if (!inst.principal.has_value()) throw RuleError("missing principal address");
  if (inst.principal->in_antecedent) {
    int i = inst.principal->index;
    if (i < 0 || static_cast<size_t>(i) >= s.ante.size())
      throw RuleError("antecedent index out of range at " + inst.at.str());
    return s.ante[i];
  }
  if (!s.out.has_value()) throw RuleError("no output formula at " + inst.at.str());
  return *s.out;
}

void require_kind(const Formula& f, Conn k, const char* what) {
  if (f.kind() != k) throw RuleError(std::string("principal is not ") + what);
}

void require_character(const RuleInstance& inst, const Character& c) {
  if (inst.character.has_value() && *inst.character != c)
    throw RuleError("instance character " + inst.character->str() + " does not match principal's " +
                    c.str());
}

NestedSequent with_ante_replaced(const NestedSequent& g, const Name& w, int index,
                                 const std::vector<Formula>& repl) {
  NestedSequent out = g;
  auto& ante = out.find(w)->seq.ante;
  ante.erase(ante.begin() + index);
  ante.insert(ante.begin() + index, repl.begin(), repl.end());
  return out;
}

NestedSequent with_output(const NestedSequent& g, const Name& w, std::optional<Formula> f) {
  NestedSequent out = g;
  out.find(w)->seq.out = std::move(f);
  return out;
}

NestedSequent with_child(const NestedSequent& g, const Name& w, const Character& x,
                         GSequent child_seq) {
  NestedSequent out = g;
  NestedSequent child;
  child.name = Name{out.max_name_id() + 1};
  child.seq = std::move(child_seq);
  out.find(w)->children.emplace_back(x, std::move(child));
  return out;
}

void check_propagation(const NestedSequent& g, const RuleInstance& inst, const AxiomSet& axioms,
                       const Character& x) {
  if (!inst.target.has_value()) throw RuleError("propagation rule needs a target");
  PropagationGraph pg = propagation_graph(g);
  if (!pg.has_node(*inst.target)) throw RuleError("no component named " + inst.target->str());
  Grammar gr = build_grammar(axioms);
  auto reachable = reach(gr, pg, inst.at, x);
  if (!reachable.count(*inst.target))
    throw RuleError("side condition fails: " + inst.at.str() + " -/->^{L(" + x.str() + ")} " +
                    inst.target->str());
}

}  // namespace

std::vector<NestedSequent> apply_backward(const NestedSequent& g, const RuleInstance& inst,
                                          const AxiomSet& axioms) {
  std::string why;
  if (!g.wellformed(&why)) throw RuleError("conclusion ill-formed: " + why);
  const GSequent& at = component_at(g, inst.at);

  switch (inst.rule) {
    case Rule::Id: {
      if (!at.out.has_value() || at.out->kind() != Conn::Atom)
        throw RuleError("id needs an atomic output at " + inst.at.str());
      bool found = false;
      for (const auto& f : at.ante)
        if (f == *at.out) found = true;
      if (!found) throw RuleError("id: output atom not in the antecedent");
      return {};
    }
    case Rule::BotL: {
      bool found = false;
      for (const auto& f : at.ante)
        if (f.kind() == Conn::Bottom) found = true;
      if (!found) throw RuleError("botL: no falsum in the antecedent");
      return {};
    }
    case Rule::OrL: {
      Formula p = principal_in(g, inst);
      require_kind(p, Conn::Or, "a disjunction");
      int i = inst.principal->index;
      return {with_ante_replaced(g, inst.at, i, {p.left()}),
              with_ante_replaced(g, inst.at, i, {p.right()})};
    }
    case Rule::OrR1:
    case Rule::OrR2: {
      if (!at.out.has_value()) throw RuleError("no output at " + inst.at.str());
      Formula p = *at.out;
      require_kind(p, Conn::Or, "a disjunction");
      return {with_output(g, inst.at, inst.rule == Rule::OrR1 ? p.left() : p.right())};
    }
    case Rule::AndL: {
      Formula p = principal_in(g, inst);
      require_kind(p, Conn::And, "a conjunction");
      return {with_ante_replaced(g, inst.at, inst.principal->index, {p.left(), p.right()})};
    }
    case Rule::AndR: {
      if (!at.out.has_value()) throw RuleError("no output at " + inst.at.str());
      Formula p = *at.out;
      require_kind(p, Conn::And, "a conjunction");
      return {with_output(g, inst.at, p.left()), with_output(g, inst.at, p.right())};
    }
    case Rule::ImpL: {
      Formula p = principal_in(g, inst);
      if (!inst.principal->in_antecedent) throw RuleError("impL principal must be an antecedent formula");
      require_kind(p, Conn::Imp, "an implication");
      NestedSequent left = with_output(strip_output(g), inst.at, p.left());
      NestedSequent right = g;
      right.find(inst.at)->seq.ante.push_back(p.right());
      return {left, right};
    }
    case Rule::ImpR: {
      if (!at.out.has_value()) throw RuleError("no output at " + inst.at.str());
      Formula p = *at.out;
      require_kind(p, Conn::Imp, "an implication");
      NestedSequent prem = with_output(g, inst.at, p.right());
      prem.find(inst.at)->seq.ante.push_back(p.left());
      return {prem};
    }
    case Rule::DiaRProp: {
      if (!at.out.has_value()) throw RuleError("no output at " + inst.at.str());
      Formula p = *at.out;
      require_kind(p, Conn::Dia, "a diamond");
      require_character(inst, p.character());
      check_propagation(g, inst, axioms, p.character());
      NestedSequent prem = with_output(g, inst.at, std::nullopt);
      NestedSequent* tgt = prem.find(*inst.target);
      if (tgt->seq.out.has_value()) throw RuleError("target already right-filled");
      tgt->seq.out = p.inner();
      return {prem};
    }
    case Rule::BoxLProp: {
      Formula p = principal_in(g, inst);
      if (!inst.principal->in_antecedent) throw RuleError("boxLprop principal must be an antecedent formula");
      require_kind(p, Conn::Box, "a box");
      require_character(inst, p.character());
      check_propagation(g, inst, axioms, p.character());
      NestedSequent prem = g;
      prem.find(*inst.target)->seq.ante.push_back(p.inner());
      return {prem};
    }
    case Rule::DiaL: {
      Formula p = principal_in(g, inst);
      if (!inst.principal->in_antecedent) throw RuleError("diaL principal must be an antecedent formula");
      require_kind(p, Conn::Dia, "a diamond");
      require_character(inst, p.character());
      NestedSequent prem = with_ante_replaced(g, inst.at, inst.principal->index, {});
      return {with_child(prem, inst.at, p.character(), GSequent{{p.inner()}, std::nullopt})};
    }
    case Rule::BoxR: {
      if (!at.out.has_value()) throw RuleError("no output at " + inst.at.str());
      Formula p = *at.out;
      require_kind(p, Conn::Box, "a box");
      require_character(inst, p.character());
      NestedSequent prem = with_output(g, inst.at, std::nullopt);
      return {with_child(prem, inst.at, p.character(), GSequent{{}, p.inner()})};
    }
    case Rule::DX: {
      if (!inst.character.has_value()) throw RuleError("dX needs a character");
      if (!axioms.serial.count(*inst.character))
        throw RuleError("dX: character " + inst.character->str() + " is not serial in the axiom set");
      return {with_child(g, inst.at, *inst.character, GSequent{})};
    }
  }
  throw RuleError("unknown rule");
}

int Proof::height() const {
  int h = 0;
  for (const auto& q : premises) h = std::max(h, 1 + q.height());
  return h;
}

int Proof::size() const {
  int n = 1;
  for (const auto& q : premises) n += q.size();
  return n;
}

namespace {

bool check_rec(const Proof& p, const AxiomSet& axioms, std::string path, CheckError& err) {
  std::string why;
  if (!p.conclusion.wellformed(&why)) {
    err = {path, rule_name(p.inst.rule), "conclusion ill-formed: " + why};
    return false;
  }
  std::vector<NestedSequent> want;
  try {
    want = apply_backward(p.conclusion, p.inst, axioms);
  } catch (const std::exception& e) {
    err = {path, rule_name(p.inst.rule), e.what()};
    return false;
  }
  if (want.size() != p.premises.size()) {
    err = {path, rule_name(p.inst.rule),
           "expected " + std::to_string(want.size()) + " premises, proof has " +
               std::to_string(p.premises.size())};
    return false;
  }
  for (size_t i = 0; i < want.size(); ++i) {
    std::string sub = path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
    std::string why2;
    if (!p.premises[i].conclusion.wellformed(&why2)) {
      err = {sub, rule_name(p.premises[i].inst.rule), "conclusion ill-formed: " + why2};
      return false;
    }
    if (!equivalent(p.premises[i].conclusion, want[i])) {
      err = {path, rule_name(p.inst.rule),
             "premise " + std::to_string(i) + " mismatch: stored \"" +
                 p.premises[i].conclusion.str() + "\" vs reconstructed \"" + want[i].str() + "\""};
      return false;
    }
    if (!check_rec(p.premises[i], axioms, sub, err)) return false;
  }
  return true;
}

}  // namespace

CheckResult check_proof(const Proof& p, const AxiomSet& axioms) {
  CheckResult r;
  CheckError err;
  if (check_rec(p, axioms, "", err)) {
    r.ok = true;
  } else {
    r.ok = false;
    r.error = err;
  }
  return r;
}

Proof make_leaf(NestedSequent conclusion, Rule r) {
  if (r != Rule::Id && r != Rule::BotL) throw RuleError("make_leaf: not an initial rule");
  for (const auto& [n, s] : conclusion.components()) {
    if (r == Rule::BotL) {
      for (size_t i = 0; i < s->ante.size(); ++i)
        if (s->ante[i].kind() == Conn::Bottom) {
          RuleInstance inst{r, n, FormulaAddr{true, static_cast<int>(i)}, {}, {}, {}};
          return Proof{std::move(conclusion), inst, {}};
        }
    } else {
      if (!s->out.has_value() || s->out->kind() != Conn::Atom) continue;
      for (size_t i = 0; i < s->ante.size(); ++i)
        if (s->ante[i] == *s->out) {
          RuleInstance inst{r, n, FormulaAddr{true, static_cast<int>(i)}, {}, {}, {}};
          return Proof{std::move(conclusion), inst, {}};
        }
    }
  }
  throw RuleError(std::string("make_leaf: no ") + rule_name(r) + " witness in " + conclusion.str());
}

Proof make_node(NestedSequent conclusion, RuleInstance inst, std::vector<Proof> premises,
                const AxiomSet& axioms) {
  auto want = apply_backward(conclusion, inst, axioms);
  if (want.size() != premises.size())
    throw RuleError(std::string("make_node(") + rule_name(inst.rule) + "): arity mismatch");
  for (size_t i = 0; i < want.size(); ++i)
    if (!equivalent(premises[i].conclusion, want[i]))
      throw RuleError(std::string("make_node(") + rule_name(inst.rule) + "): premise " +
                      std::to_string(i) + " proves \"" + premises[i].conclusion.str() +
                      "\" but the rule needs \"" + want[i].str() + "\"");
  return Proof{std::move(conclusion), std::move(inst), std::move(premises)};
}

std::optional<Proof> try_close(const NestedSequent& g) {
  for (const auto& [n, s] : g.components()) {
    for (size_t i = 0; i < s->ante.size(); ++i) {
      if (s->ante[i].kind() == Conn::Bottom) {
        RuleInstance inst{Rule::BotL, n, FormulaAddr{true, static_cast<int>(i)}, {}, {}, {}};
        return Proof{g, inst, {}};
      }
    }
    if (s->out.has_value() && s->out->kind() == Conn::Atom) {
      for (size_t i = 0; i < s->ante.size(); ++i) {
        if (s->ante[i] == *s->out) {
          RuleInstance inst{Rule::Id, n, FormulaAddr{true, static_cast<int>(i)}, {}, {}, {}};
          return Proof{g, inst, {}};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace igl
