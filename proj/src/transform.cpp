#include "igl/transform.hpp"

#include <algorithm>
#include <functional>

namespace igl {

const char* admissible_name(AdmissibleKind k) {
  switch (k) {
    case AdmissibleKind::BotR: return "botR";
    case AdmissibleKind::Nec: return "nec";
    case AdmissibleKind::WL: return "wL";
    case AdmissibleKind::WR: return "wR";
    case AdmissibleKind::EW: return "ew";
    case AdmissibleKind::CL: return "cL";
    case AdmissibleKind::EC: return "ec";
    case AdmissibleKind::Sft: return "sft";
  }
  return "?";
}

namespace {

int locate_ante(const NestedSequent& g, const Name& w, const Formula& f) {
  const NestedSequent* c = g.find(w);
  if (!c) throw TransformError("no component named " + w.str());
  for (size_t i = 0; i < c->seq.ante.size(); ++i)
    if (c->seq.ante[i] == f) return static_cast<int>(i);
  throw TransformError("formula " + f.str() + " not found at " + w.str());
}

Name map_name(const std::map<Name, Name>& m, const Name& n) {
  auto it = m.find(n);
  return it == m.end() ? n : it->second;
}

// Re-addresses an instance in a transformed conclusion: names are mapped,
// antecedent principals are relocated by formula.
RuleInstance relocate(const RuleInstance& inst, const NestedSequent& old_c,
                      const NestedSequent& new_c, const std::map<Name, Name>& nm) {
  RuleInstance out = inst;
  out.at = map_name(nm, inst.at);
  if (inst.target) out.target = map_name(nm, *inst.target);
  out.witness.reset();
  if (inst.principal && inst.principal->in_antecedent) {
    const NestedSequent* oc = old_c.find(inst.at);
    if (!oc) throw TransformError("relocate: missing component " + inst.at.str());
    Formula f = oc->seq.ante.at(inst.principal->index);
    out.principal = FormulaAddr{true, locate_ante(new_c, out.at, f)};
  }
  return out;
}

uint32_t proof_max_name_id(const Proof& p) {
  uint32_t m = p.conclusion.max_name_id();
  for (const auto& q : p.premises) m = std::max(m, proof_max_name_id(q));
  return m;
}

void collect_proof_names(const Proof& p, std::set<Name>& out) {
  for (const auto& [n, s] : p.conclusion.components()) {
    (void)s;
    out.insert(n);
  }
  for (const auto& q : p.premises) collect_proof_names(q, out);
}

// Rebuilds p with f applied to every conclusion. f must preserve existing
// component names and keep antecedent indices valid (append-only changes).
Proof map_conclusions(const Proof& p, const std::function<NestedSequent(const NestedSequent&)>& f,
                      const AxiomSet& axioms) {
  NestedSequent nc = f(p.conclusion);
  if (p.premises.empty()) return make_leaf(std::move(nc), p.inst.rule);
  std::vector<Proof> prem;
  prem.reserve(p.premises.size());
  for (const auto& q : p.premises) prem.push_back(map_conclusions(q, f, axioms));
  RuleInstance inst = relocate(p.inst, p.conclusion, nc, {});
  return make_node(std::move(nc), std::move(inst), std::move(prem), axioms);
}

}  // namespace

Proof rename_proof(const Proof& p, const std::map<Name, Name>& m) {
  Proof out;
  out.conclusion = renamed(p.conclusion, m);
  out.inst = p.inst;
  out.inst.at = map_name(m, p.inst.at);
  if (p.inst.target) out.inst.target = map_name(m, *p.inst.target);
  for (const auto& q : p.premises) out.premises.push_back(rename_proof(q, m));
  return out;
}

Proof weaken_left(const Proof& p, const Name& at, const std::vector<Formula>& extra,
                  const AxiomSet& axioms) {
  if (!p.conclusion.find(at)) throw TransformError("wL: no component named " + at.str());
  if (extra.empty()) return p;
  return map_conclusions(
      p,
      [&](const NestedSequent& g) {
        NestedSequent out = g;
        NestedSequent* c = out.find(at);
        for (const auto& f : extra) c->seq.ante.push_back(f);
        return out;
      },
      axioms);
}

Proof external_weaken(const Proof& p, const Name& at, const Character& x,
                      const AxiomSet& axioms) {
  if (!p.conclusion.find(at)) throw TransformError("ew: no component named " + at.str());
  Name fresh{proof_max_name_id(p) + 1};
  return map_conclusions(
      p,
      [&](const NestedSequent& g) {
        NestedSequent out = g;
        NestedSequent child;
        child.name = fresh;
        out.find(at)->children.emplace_back(x, std::move(child));
        return out;
      },
      axioms);
}

Proof necessitate(const Proof& p, const Character& x, const AxiomSet& axioms) {
  Name fresh{proof_max_name_id(p) + 1};
  return map_conclusions(
      p,
      [&](const NestedSequent& g) {
        NestedSequent out;
        out.name = fresh;
        out.children.emplace_back(x, g);
        return out;
      },
      axioms);
}

namespace {

Proof weaken_right_rec(const Proof& p, const Name& at, const Formula& a, const AxiomSet& axioms) {
  if (p.conclusion.right_filled())
    throw TransformError("wR: sequent already right-filled: " + p.conclusion.str());
  NestedSequent nc = p.conclusion;
  NestedSequent* c = nc.find(at);
  if (!c) throw TransformError("wR: no component named " + at.str());
  c->seq.out = a;
  if (p.premises.empty()) return make_leaf(std::move(nc), p.inst.rule);
  if (p.inst.rule == Rule::ImpL) {
    // The left premise already matches: stripping the new output gives back
    // the old stripped context.
    Proof right = weaken_right_rec(p.premises[1], at, a, axioms);
    RuleInstance inst = relocate(p.inst, p.conclusion, nc, {});
    return make_node(std::move(nc), std::move(inst), {p.premises[0], std::move(right)}, axioms);
  }
  std::vector<Proof> prem;
  for (const auto& q : p.premises) prem.push_back(weaken_right_rec(q, at, a, axioms));
  RuleInstance inst = relocate(p.inst, p.conclusion, nc, {});
  return make_node(std::move(nc), std::move(inst), std::move(prem), axioms);
}

}  // namespace

Proof weaken_right(const Proof& p, const Name& at, const Formula& out, const AxiomSet& axioms) {
  return weaken_right_rec(p, at, out, axioms);
}

Proof bot_right(const Proof& p, const AxiomSet& axioms) {
  auto on = p.conclusion.output_at();
  if (!on) throw TransformError("botR: no output formula");
  NestedSequent nc = p.conclusion;
  NestedSequent* c = nc.find(*on);
  if (c->seq.out->kind() != Conn::Bottom) throw TransformError("botR: output is not falsum");
  c->seq.out.reset();
  if (p.premises.empty()) return make_leaf(std::move(nc), p.inst.rule);
  if (p.inst.rule == Rule::ImpL) {
    Proof right = bot_right(p.premises[1], axioms);
    RuleInstance inst = relocate(p.inst, p.conclusion, nc, {});
    return make_node(std::move(nc), std::move(inst), {p.premises[0], std::move(right)}, axioms);
  }
  std::vector<Proof> prem;
  for (const auto& q : p.premises) prem.push_back(bot_right(q, axioms));
  RuleInstance inst = relocate(p.inst, p.conclusion, nc, {});
  return make_node(std::move(nc), std::move(inst), std::move(prem), axioms);
}

namespace {

Proof invert_rec(const Proof& p, Rule r, const Name& at, const Formula& f, int k,
                 const Name& fresh, const AxiomSet& axioms) {
  RuleInstance inst{r, at, FormulaAddr{true, locate_ante(p.conclusion, at, f)}, {}, {}, {}};
  if (r == Rule::DiaL) inst.character = f.character();
  NestedSequent target = apply_backward(p.conclusion, inst, axioms).at(k);
  if (r == Rule::DiaL) {
    // the inverted rule's new child is one component shared by every level;
    // give it a globally fresh name so names stay coherent down the branch
    NestedSequent* c = target.find(at);
    c->children.back().second.name = fresh;
  }
  if (p.premises.empty()) return make_leaf(std::move(target), p.inst.rule);
  const RuleInstance& q = p.inst;
  if (q.rule == r && q.at == at && q.principal && q.principal->in_antecedent &&
      p.conclusion.find(at)->seq.ante.at(q.principal->index) == f)
    return p.premises[k];
  std::vector<Proof> prem;
  for (const auto& sub : p.premises) prem.push_back(invert_rec(sub, r, at, f, k, fresh, axioms));
  RuleInstance ni = relocate(p.inst, p.conclusion, target, {});
  return make_node(std::move(target), std::move(ni), std::move(prem), axioms);
}

}  // namespace

Proof invert_rule(const RuleInstance& inst, int premise_index, const Proof& p,
                  const AxiomSet& axioms) {
  switch (inst.rule) {
    case Rule::BoxLProp: {
      const NestedSequent* c = p.conclusion.find(inst.at);
      if (!c) throw TransformError("invert: no component " + inst.at.str());
      Formula f = c->seq.ante.at(inst.principal->index);
      // reuses the hp-admissibility of wL
      return weaken_left(p, *inst.target, {f.inner()}, axioms);
    }
    case Rule::DX:
      // reuses the hp-admissibility of ew
      return external_weaken(p, inst.at, *inst.character, axioms);
    case Rule::OrL:
    case Rule::AndL:
    case Rule::DiaL: {
      const NestedSequent* c = p.conclusion.find(inst.at);
      if (!c) throw TransformError("invert: no component " + inst.at.str());
      Formula f = c->seq.ante.at(inst.principal->index);
      Name fresh{proof_max_name_id(p) + 1};
      return invert_rec(p, inst.rule, inst.at, f, premise_index, fresh, axioms);
    }
    default:
      throw TransformError(std::string("invert_rule: ") + rule_name(inst.rule) +
                           " is not an invertible left rule");
  }
}

// ---------------------------------------------------------------------------
// Left contraction, mutually recursive with external contraction.
// ---------------------------------------------------------------------------

namespace {

Proof cl_one(const Proof& p, const Name& w, const Formula& a, const AxiomSet& axioms);
Proof ec_core(const Proof& p, const Name& w, const Name& keep, const Name& drop,
              const AxiomSet& axioms);

std::vector<int> ante_occurrences(const NestedSequent& g, const Name& w, const Formula& a) {
  std::vector<int> occ;
  const NestedSequent* c = g.find(w);
  if (!c) throw TransformError("no component named " + w.str());
  for (size_t i = 0; i < c->seq.ante.size(); ++i)
    if (c->seq.ante[i] == a) occ.push_back(static_cast<int>(i));
  return occ;
}

// Index (at w) of the last child equal to (x)[sub] up to canonicalization.
int locate_child(const NestedSequent& g, const Name& w, const Character& x,
                 const NestedSequent& sub) {
  const NestedSequent* c = g.find(w);
  if (!c) throw TransformError("no component named " + w.str());
  std::string key = sub.canonical_key(false);
  for (int i = static_cast<int>(c->children.size()) - 1; i >= 0; --i)
    if (c->children[i].first == x && c->children[i].second.canonical_key(false) == key) return i;
  throw TransformError("no (" + x.str() + ")-child with the requested shape at " + w.str());
}

Proof cl_one(const Proof& p, const Name& w, const Formula& a, const AxiomSet& axioms) {
  const NestedSequent& c = p.conclusion;
  auto occ = ante_occurrences(c, w, a);
  if (occ.size() < 2) throw TransformError("cL: fewer than two occurrences of " + a.str());
  NestedSequent nc = c;
  {
    auto& ante = nc.find(w)->seq.ante;
    ante.erase(ante.begin() + occ.back());
  }
  if (p.premises.empty()) return make_leaf(std::move(nc), p.inst.rule);

  const RuleInstance& r = p.inst;
  bool ours = r.principal && r.principal->in_antecedent && r.at == w &&
              c.find(w)->seq.ante.at(r.principal->index) == a;
  if (!ours) {
    std::vector<Proof> prem;
    for (const auto& q : p.premises) prem.push_back(cl_one(q, w, a, axioms));
    return make_node(std::move(nc), relocate(r, c, nc, {}), std::move(prem), axioms);
  }

  switch (r.rule) {
    case Rule::BoxLProp:
    case Rule::ImpL: {
      // principal kept in every premise: contract there and reapply
      std::vector<Proof> prem;
      for (const auto& q : p.premises) prem.push_back(cl_one(q, w, a, axioms));
      return make_node(std::move(nc), relocate(r, c, nc, {}), std::move(prem), axioms);
    }
    case Rule::AndL: {
      const Proof& q = p.premises[0];
      RuleInstance inv{Rule::AndL, w,
                       FormulaAddr{true, locate_ante(q.conclusion, w, a)}, {}, {}, {}};
      Proof q2 = invert_rule(inv, 0, q, axioms);
      Proof q3 = cl_one(q2, w, a.left(), axioms);
      Proof q4 = cl_one(q3, w, a.right(), axioms);
      RuleInstance ni{Rule::AndL, w, FormulaAddr{true, locate_ante(nc, w, a)}, {}, {}, {}};
      return make_node(std::move(nc), std::move(ni), {std::move(q4)}, axioms);
    }
    case Rule::OrL: {
      std::vector<Proof> prem;
      for (int k = 0; k < 2; ++k) {
        const Proof& q = p.premises[k];
        RuleInstance inv{Rule::OrL, w,
                         FormulaAddr{true, locate_ante(q.conclusion, w, a)}, {}, {}, {}};
        Proof q2 = invert_rule(inv, k, q, axioms);
        prem.push_back(cl_one(q2, w, k == 0 ? a.left() : a.right(), axioms));
      }
      RuleInstance ni{Rule::OrL, w, FormulaAddr{true, locate_ante(nc, w, a)}, {}, {}, {}};
      return make_node(std::move(nc), std::move(ni), std::move(prem), axioms);
    }
    case Rule::DiaL: {
      const Proof& q = p.premises[0];
      RuleInstance inv{Rule::DiaL, w, FormulaAddr{true, locate_ante(q.conclusion, w, a)},
                       {}, a.character(), {}};
      Proof q2 = invert_rule(inv, 0, q, axioms);
      NestedSequent childshape;
      childshape.seq.ante.push_back(a.inner());
      int cb = locate_child(q2.conclusion, w, a.character(), childshape);
      // the other copy of the fresh child
      const NestedSequent* comp = q2.conclusion.find(w);
      int ca = -1;
      std::string key = childshape.canonical_key(false);
      for (int i = cb - 1; i >= 0; --i)
        if (comp->children[i].first == a.character() &&
            comp->children[i].second.canonical_key(false) == key) {
          ca = i;
          break;
        }
      if (ca < 0) throw TransformError("cL(diaL): duplicated child not found");
      Proof q3 = ec_core(q2, w, comp->children[ca].second.name, comp->children[cb].second.name,
                         axioms);
      RuleInstance ni{Rule::DiaL, w, FormulaAddr{true, locate_ante(nc, w, a)},
                      {}, a.character(), {}};
      return make_node(std::move(nc), std::move(ni), {std::move(q3)}, axioms);
    }
    default:
      throw TransformError(std::string("cL: unexpected principal rule ") + rule_name(r.rule));
  }
}

// Name correspondence between two subtrees that are equal up to output
// placement and renaming (children matched by stripped canonical keys).
void build_pairing(const NestedSequent& keep, const NestedSequent& drop,
                   std::map<Name, Name>& phi, std::map<Name, Name>& phi_inv) {
  phi[drop.name] = keep.name;
  phi_inv[keep.name] = drop.name;
  auto sorted_ix = [](const NestedSequent& s) {
    std::vector<std::pair<std::string, int>> keys;
    for (size_t i = 0; i < s.children.size(); ++i)
      keys.emplace_back(s.children[i].first.str() + "|" +
                            strip_output(s.children[i].second).canonical_key(false),
                        static_cast<int>(i));
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  auto ka = sorted_ix(keep);
  auto kb = sorted_ix(drop);
  if (ka.size() != kb.size()) throw TransformError("ec: child count mismatch");
  for (size_t i = 0; i < ka.size(); ++i) {
    if (ka[i].first != kb[i].first) throw TransformError("ec: children do not correspond");
    build_pairing(keep.children[ka[i].second].second, drop.children[kb[i].second].second, phi,
                  phi_inv);
  }
}

// Contracts the drop-child of w into the keep-child. Invariant: both carry
// the same edge label, strip_output(keep subtree) == drop subtree up to
// renaming, and the drop subtree is right-empty.
Proof ec_core(const Proof& p, const Name& w, const Name& keep, const Name& drop,
              const AxiomSet& axioms) {
  const NestedSequent& c = p.conclusion;
  const NestedSequent* parent = c.find(w);
  if (!parent) throw TransformError("ec: no component named " + w.str());
  int ki = -1, di = -1;
  for (size_t i = 0; i < parent->children.size(); ++i) {
    if (parent->children[i].second.name == keep) ki = static_cast<int>(i);
    if (parent->children[i].second.name == drop) di = static_cast<int>(i);
  }
  if (ki < 0 || di < 0) throw TransformError("ec: children not found at " + w.str());
  const NestedSequent& ks = parent->children[ki].second;
  const NestedSequent& ds = parent->children[di].second;
  if (parent->children[ki].first != parent->children[di].first)
    throw TransformError("ec: edge labels differ");
  if (ds.right_filled()) throw TransformError("ec: dropped child is right-filled");
  if (!equivalent(strip_output(ks), ds))
    throw TransformError("ec: children are not equal up to the output");

  NestedSequent nc = c;
  {
    auto& kids = nc.find(w)->children;
    for (size_t i = 0; i < kids.size(); ++i)
      if (kids[i].second.name == drop) {
        kids.erase(kids.begin() + i);
        break;
      }
  }
  if (p.premises.empty()) return make_leaf(std::move(nc), p.inst.rule);

  std::map<Name, Name> phi, phi_inv;  // phi: drop names -> keep names
  build_pairing(ks, ds, phi, phi_inv);
  auto keep_names = ks.names();
  auto drop_names = ds.names();
  auto side = [&](const Name& n) { return keep_names.count(n) ? 1 : drop_names.count(n) ? 2 : 0; };
  auto mirror = [&](const Name& n) -> Name {
    if (side(n) == 1) return phi_inv.at(n);
    if (side(n) == 2) return phi.at(n);
    return n;
  };

  const RuleInstance& r = p.inst;
  int s_at = side(r.at);
  int s_tgt = r.target ? side(*r.target) : 0;

  // Final instance on nc: drop-side names fold into the keep side.
  auto final_inst = [&](const NestedSequent& target) { return relocate(r, c, target, phi); };
  auto plain = [&]() {
    std::vector<Proof> prem;
    for (const auto& q : p.premises) prem.push_back(ec_core(q, w, keep, drop, axioms));
    return make_node(nc, final_inst(nc), std::move(prem), axioms);
  };

  switch (r.rule) {
    case Rule::OrL:
    case Rule::AndL:
    case Rule::DiaL: {
      if (s_at == 0) return plain();
      Formula f = c.find(r.at)->seq.ante.at(r.principal->index);
      Name m = mirror(r.at);
      std::vector<Proof> prem;
      for (size_t k = 0; k < p.premises.size(); ++k) {
        const Proof& q = p.premises[k];
        RuleInstance inv{r.rule, m, FormulaAddr{true, locate_ante(q.conclusion, m, f)}, {}, {}, {}};
        if (r.rule == Rule::DiaL) inv.character = f.character();
        Proof q2 = invert_rule(inv, static_cast<int>(k), q, axioms);
        prem.push_back(ec_core(q2, w, keep, drop, axioms));
      }
      return make_node(nc, final_inst(nc), std::move(prem), axioms);
    }
    case Rule::BoxLProp: {
      Formula f = c.find(r.at)->seq.ante.at(r.principal->index);
      Proof q = p.premises[0];
      if (s_tgt != 0) q = weaken_left(q, mirror(*r.target), {f.inner()}, axioms);
      Proof rec = ec_core(q, w, keep, drop, axioms);
      return make_node(nc, final_inst(nc), {std::move(rec)}, axioms);
    }
    case Rule::DX: {
      Proof q = p.premises[0];
      if (s_at != 0) q = external_weaken(q, mirror(r.at), *r.character, axioms);
      Proof rec = ec_core(q, w, keep, drop, axioms);
      return make_node(nc, final_inst(nc), {std::move(rec)}, axioms);
    }
    case Rule::BoxR: {
      if (s_at == 2) throw TransformError("ec: output rule inside the dropped child");
      Proof q = p.premises[0];
      if (s_at == 1) {
        Formula f = *c.find(r.at)->seq.out;
        q = external_weaken(q, mirror(r.at), f.character(), axioms);
      }
      Proof rec = ec_core(q, w, keep, drop, axioms);
      return make_node(nc, final_inst(nc), {std::move(rec)}, axioms);
    }
    case Rule::ImpR: {
      if (s_at == 2) throw TransformError("ec: output rule inside the dropped child");
      Proof q = p.premises[0];
      if (s_at == 1) {
        Formula f = *c.find(r.at)->seq.out;
        q = weaken_left(q, mirror(r.at), {f.left()}, axioms);
      }
      Proof rec = ec_core(q, w, keep, drop, axioms);
      return make_node(nc, final_inst(nc), {std::move(rec)}, axioms);
    }
    case Rule::OrR1:
    case Rule::OrR2:
    case Rule::AndR: {
      if (s_at == 2) throw TransformError("ec: output rule inside the dropped child");
      return plain();
    }
    case Rule::ImpL: {
      Formula f = c.find(r.at)->seq.ante.at(r.principal->index);
      Proof q2 = p.premises[1];
      if (s_at != 0) q2 = weaken_left(q2, mirror(r.at), {f.right()}, axioms);
      Proof rec2 = ec_core(q2, w, keep, drop, axioms);
      Proof rec1 = (s_at == 2) ? ec_core(p.premises[0], w, drop, keep, axioms)
                               : ec_core(p.premises[0], w, keep, drop, axioms);
      return make_node(nc, final_inst(nc), {std::move(rec1), std::move(rec2)}, axioms);
    }
    case Rule::DiaRProp: {
      if (s_at == 2) throw TransformError("ec: output inside the dropped child");
      if (s_tgt == 2) {
        // the output moves into the dropped copy: contract the other way
        Proof rec = ec_core(p.premises[0], w, drop, keep, axioms);
        return make_node(nc, final_inst(nc), {std::move(rec)}, axioms);
      }
      return plain();
    }
    case Rule::Id:
    case Rule::BotL:
      throw TransformError("ec: initial rule with premises");
  }
  throw TransformError("ec: unhandled rule");
}

}  // namespace

Proof contract_left(const Proof& p, const Name& at, int index_a, int index_b,
                    const AxiomSet& axioms) {
  const NestedSequent* c = p.conclusion.find(at);
  if (!c) throw TransformError("cL: no component named " + at.str());
  const auto& ante = c->seq.ante;
  if (index_a < 0 || index_b < 0 || index_a == index_b ||
      static_cast<size_t>(index_a) >= ante.size() || static_cast<size_t>(index_b) >= ante.size())
    throw TransformError("cL: bad indices");
  if (ante[index_a] != ante[index_b])
    throw TransformError("cL: formulas at the two indices differ");
  return cl_one(p, at, ante[index_a], axioms);
}

Proof external_contract(const Proof& p, const Name& at, int child_a, int child_b,
                        const AxiomSet& axioms) {
  const NestedSequent* c = p.conclusion.find(at);
  if (!c) throw TransformError("ec: no component named " + at.str());
  if (child_a < 0 || child_b < 0 || child_a == child_b ||
      static_cast<size_t>(child_a) >= c->children.size() ||
      static_cast<size_t>(child_b) >= c->children.size())
    throw TransformError("ec: bad child indices");
  const auto& ca = c->children[child_a];
  const auto& cb = c->children[child_b];
  if (ca.first != cb.first) throw TransformError("ec: edge labels differ");
  // keep the right-filled copy if there is one
  bool keep_a = ca.second.right_filled() || !cb.second.right_filled();
  const Name keep = keep_a ? ca.second.name : cb.second.name;
  const Name drop = keep_a ? cb.second.name : ca.second.name;
  return ec_core(p, at, keep, drop, axioms);
}

namespace {

NestedSequent shifted_sequent(const NestedSequent& c, const Name& at, const Name& moved,
                              const Name& dest) {
  NestedSequent out = c;
  NestedSequent* a = out.find(at);
  if (!a) throw TransformError("sft: no component named " + at.str());
  int ix = -1;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (a->children[i].second.name == moved) ix = static_cast<int>(i);
  if (ix < 0) throw TransformError("sft: child " + moved.str() + " not found at " + at.str());
  NestedSequent h = a->children[ix].second;
  if (h.find(dest)) throw TransformError("sft: destination inside the moved child");
  a->children.erase(a->children.begin() + ix);
  NestedSequent* v = out.find(dest);
  if (!v) throw TransformError("sft: no component named " + dest.str());
  for (const auto& f : h.seq.ante) v->seq.ante.push_back(f);
  if (h.seq.out) {
    if (out.right_filled()) throw TransformError("sft: output uniqueness violation");
    v->seq.out = h.seq.out;
  }
  for (const auto& kid : h.children) v->children.push_back(kid);
  return out;
}

Proof shift_rec(const Proof& p, const Name& at, const Name& moved, const Name& dest,
                const AxiomSet& axioms) {
  NestedSequent nc = shifted_sequent(p.conclusion, at, moved, dest);
  if (p.premises.empty()) return make_leaf(std::move(nc), p.inst.rule);
  std::vector<Proof> prem;
  for (const auto& q : p.premises) prem.push_back(shift_rec(q, at, moved, dest, axioms));
  std::map<Name, Name> nm{{moved, dest}};
  RuleInstance inst = relocate(p.inst, p.conclusion, nc, nm);
  return make_node(std::move(nc), std::move(inst), std::move(prem), axioms);
}

}  // namespace

Proof shift(const Proof& p, const Name& at, int child_index, const Name& dest,
            const AxiomSet& axioms) {
  const NestedSequent* a = p.conclusion.find(at);
  if (!a) throw TransformError("sft: no component named " + at.str());
  if (child_index < 0 || static_cast<size_t>(child_index) >= a->children.size())
    throw TransformError("sft: bad child index");
  const Character& x = a->children[child_index].first;
  const Name moved = a->children[child_index].second.name;
  Grammar g = build_grammar(axioms);
  auto ok = reach(g, propagation_graph(p.conclusion), at, x);
  if (!ok.count(dest))
    throw TransformError("sft side condition fails: " + at.str() + " -/->^{L(" + x.str() + ")} " +
                         dest.str());
  return shift_rec(p, at, moved, dest, axioms);
}

Proof apply_admissible(AdmissibleKind k, const Proof& p, const AdmissibleParams& params,
                       const AxiomSet& axioms) {
  switch (k) {
    case AdmissibleKind::BotR:
      return bot_right(p, axioms);
    case AdmissibleKind::Nec:
      if (!params.character) throw TransformError("nec: missing character");
      return necessitate(p, *params.character, axioms);
    case AdmissibleKind::WL:
      return weaken_left(p, params.at, params.formulas, axioms);
    case AdmissibleKind::WR:
      if (!params.out) throw TransformError("wR: missing output formula");
      return weaken_right(p, params.at, *params.out, axioms);
    case AdmissibleKind::EW:
      if (!params.character) throw TransformError("ew: missing character");
      return external_weaken(p, params.at, *params.character, axioms);
    case AdmissibleKind::CL:
      return contract_left(p, params.at, params.index_a, params.index_b, axioms);
    case AdmissibleKind::EC:
      return external_contract(p, params.at, params.index_a, params.index_b, axioms);
    case AdmissibleKind::Sft:
      if (!params.dest) throw TransformError("sft: missing destination");
      return shift(p, params.at, params.child_index, *params.dest, axioms);
  }
  throw TransformError("unknown admissible rule");
}

// ---------------------------------------------------------------------------
// Cut elimination.
// ---------------------------------------------------------------------------

CutStats& cut_stats() {
  static thread_local CutStats stats;
  return stats;
}

namespace {

thread_local std::vector<std::pair<int, long>> cut_measure_stack;

struct CutGuard {
  CutGuard(int len, long hsum) {
    if (!cut_measure_stack.empty()) {
      auto [plen, phsum] = cut_measure_stack.back();
      bool decreases = len < plen || (len == plen && hsum < phsum);
      if (!decreases)
        throw TransformError("cut: measure did not decrease: (" + std::to_string(len) + "," +
                             std::to_string(hsum) + ") after (" + std::to_string(plen) + "," +
                             std::to_string(phsum) + ")");
    }
    cut_measure_stack.emplace_back(len, hsum);
    cut_stats().recursive_cuts++;
    cut_stats().max_depth =
        std::max(cut_stats().max_depth, static_cast<int>(cut_measure_stack.size()));
  }
  ~CutGuard() { cut_measure_stack.pop_back(); }
};

void match_names_rec(const NestedSequent& a, const NestedSequent& b, std::map<Name, Name>& m) {
  m[a.name] = b.name;
  auto sorted_ix = [](const NestedSequent& s) {
    std::vector<std::pair<std::string, int>> keys;
    for (size_t i = 0; i < s.children.size(); ++i)
      keys.emplace_back(s.children[i].first.str() + "|" + s.children[i].second.canonical_key(false),
                        static_cast<int>(i));
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  auto ka = sorted_ix(a);
  auto kb = sorted_ix(b);
  if (ka.size() != kb.size()) throw TransformError("match: child count mismatch");
  for (size_t i = 0; i < ka.size(); ++i) {
    if (ka[i].first != kb[i].first) throw TransformError("match: children do not correspond");
    match_names_rec(a.children[ka[i].second].second, b.children[kb[i].second].second, m);
  }
}

// Renames `left` so that its conclusion uses exactly the names of `expected`
// (which it must equal up to renaming); internal names above the conclusion
// are moved out of the way of `avoid`.
Proof align_proof(const Proof& left, const NestedSequent& expected, uint32_t avoid_above) {
  if (!equivalent(left.conclusion, expected))
    throw TransformError("cut: context mismatch: left proves \"" + left.conclusion.str() +
                         "\", expected \"" + expected.str() + "\"");
  std::map<Name, Name> m;
  match_names_rec(left.conclusion, expected, m);
  std::set<Name> all;
  collect_proof_names(left, all);
  uint32_t next = std::max(avoid_above, expected.max_name_id()) + 1;
  for (const auto& n : all)
    if (!m.count(n)) m[n] = Name{next++};
  return rename_proof(left, m);
}

Proof cut_impl(const Proof& left0, const Proof& right, const Name& w, const Formula& a,
               const AxiomSet& axioms) {
  const NestedSequent& cr = right.conclusion;
  auto occ = ante_occurrences(cr, w, a);
  if (occ.empty())
    throw TransformError("cut: formula " + a.str() + " not in the antecedent at " + w.str());
  NestedSequent c = cr;
  {
    auto& ante = c.find(w)->seq.ante;
    ante.erase(ante.begin() + occ.back());
  }
  NestedSequent expected = graft(strip_output(c), w, GSequent{{}, a});
  Proof left = align_proof(left0, expected, std::max(proof_max_name_id(right), c.max_name_id()));

  CutGuard guard(a.length(), static_cast<long>(left.height()) + right.height());

  if (auto leaf = try_close(c)) return *leaf;

  // (1) initial-rule premises
  if (left.premises.empty()) {
    if (left.inst.rule == Rule::Id) {
      // the cut atom also sits in the shared antecedent: contract
      return cl_one(right, w, a, axioms);
    }
    // botL would have closed c above
    throw TransformError("cut: unexpected left leaf");
  }
  if (right.premises.empty()) {
    if (right.inst.rule == Rule::BotL) {
      // the only falsum was the cut occurrence itself
      Proof t = bot_right(left, axioms);  // proves strip(c)
      if (auto on = c.output_at()) return weaken_right(t, *on, *c.find(*on)->seq.out, axioms);
      return t;
    }
    // id whose antecedent witness was the cut occurrence: c equals the left
    // premise's conclusion
    if (!equivalent(c, left.conclusion))
      throw TransformError("cut: id right leaf does not collapse");
    return left;
  }

  const RuleInstance& rl = left.inst;
  const RuleInstance& rr = right.inst;
  bool left_principal = rl.principal && !rl.principal->in_antecedent;
  bool right_principal = rr.principal && rr.principal->in_antecedent && rr.at == w &&
                         cr.find(w)->seq.ante.at(rr.principal->index) == a;

  // (2a) the cut formula is not principal in the left premise
  if (!left_principal) {
    switch (rl.rule) {
      case Rule::OrL:
      case Rule::AndL:
      case Rule::DiaL: {
        Formula f = left.conclusion.find(rl.at)->seq.ante.at(rl.principal->index);
        std::vector<Proof> prem;
        for (size_t k = 0; k < left.premises.size(); ++k) {
          RuleInstance inv{rl.rule, rl.at, FormulaAddr{true, locate_ante(cr, rl.at, f)}, {}, {}, {}};
          if (rl.rule == Rule::DiaL) inv.character = f.character();
          Proof rk = invert_rule(inv, static_cast<int>(k), right, axioms);
          prem.push_back(cut_impl(left.premises[k], rk, w, a, axioms));
        }
        RuleInstance ci{rl.rule, rl.at, FormulaAddr{true, locate_ante(c, rl.at, f)}, {}, {}, {}};
        if (rl.rule == Rule::DiaL) ci.character = f.character();
        return make_node(std::move(c), std::move(ci), std::move(prem), axioms);
      }
      case Rule::BoxLProp: {
        Formula f = left.conclusion.find(rl.at)->seq.ante.at(rl.principal->index);
        Proof r2 = weaken_left(right, *rl.target, {f.inner()}, axioms);
        Proof t = cut_impl(left.premises[0], r2, w, a, axioms);
        RuleInstance ci = relocate(rl, left.conclusion, c, {});
        return make_node(std::move(c), std::move(ci), {std::move(t)}, axioms);
      }
      case Rule::DX: {
        Proof r2 = external_weaken(right, rl.at, *rl.character, axioms);
        Proof t = cut_impl(left.premises[0], r2, w, a, axioms);
        RuleInstance ci = relocate(rl, left.conclusion, c, {});
        return make_node(std::move(c), std::move(ci), {std::move(t)}, axioms);
      }
      case Rule::ImpL: {
        Formula f = left.conclusion.find(rl.at)->seq.ante.at(rl.principal->index);
        Proof r2 = weaken_left(right, rl.at, {f.right()}, axioms);
        Proof t = cut_impl(left.premises[1], r2, w, a, axioms);  // proves c + f.right()@at
        RuleInstance ci = relocate(rl, left.conclusion, c, {});
        return make_node(std::move(c), std::move(ci), {left.premises[0], std::move(t)}, axioms);
      }
      default:
        throw TransformError(std::string("cut: unexpected non-principal left rule ") +
                             rule_name(rl.rule));
    }
  }

  // (2b) the cut formula is not principal in the right premise
  if (!right_principal) {
    switch (rr.rule) {
      case Rule::OrR1:
      case Rule::OrR2:
      case Rule::AndR:
      case Rule::DiaRProp: {
        std::vector<Proof> prem;
        for (const auto& q : right.premises) prem.push_back(cut_impl(left, q, w, a, axioms));
        return make_node(std::move(c), relocate(rr, cr, c, {}), std::move(prem), axioms);
      }
      case Rule::ImpR: {
        Formula f = *cr.find(rr.at)->seq.out;
        Proof l2 = weaken_left(left, rr.at, {f.left()}, axioms);
        Proof t = cut_impl(l2, right.premises[0], w, a, axioms);
        return make_node(std::move(c), relocate(rr, cr, c, {}), {std::move(t)}, axioms);
      }
      case Rule::BoxR: {
        Formula f = *cr.find(rr.at)->seq.out;
        Proof l2 = external_weaken(left, rr.at, f.character(), axioms);
        Proof t = cut_impl(l2, right.premises[0], w, a, axioms);
        return make_node(std::move(c), relocate(rr, cr, c, {}), {std::move(t)}, axioms);
      }
      case Rule::DX: {
        Proof l2 = external_weaken(left, rr.at, *rr.character, axioms);
        Proof t = cut_impl(l2, right.premises[0], w, a, axioms);
        return make_node(std::move(c), relocate(rr, cr, c, {}), {std::move(t)}, axioms);
      }
      case Rule::OrL:
      case Rule::AndL:
      case Rule::DiaL: {
        Formula f = cr.find(rr.at)->seq.ante.at(rr.principal->index);
        std::vector<Proof> prem;
        for (size_t k = 0; k < right.premises.size(); ++k) {
          RuleInstance inv{rr.rule, rr.at,
                           FormulaAddr{true, locate_ante(left.conclusion, rr.at, f)}, {}, {}, {}};
          if (rr.rule == Rule::DiaL) inv.character = f.character();
          Proof lk = invert_rule(inv, static_cast<int>(k), left, axioms);
          prem.push_back(cut_impl(lk, right.premises[k], w, a, axioms));
        }
        return make_node(std::move(c), relocate(rr, cr, c, {}), std::move(prem), axioms);
      }
      case Rule::BoxLProp: {
        Formula f = cr.find(rr.at)->seq.ante.at(rr.principal->index);
        Proof l2 = weaken_left(left, *rr.target, {f.inner()}, axioms);
        Proof t = cut_impl(l2, right.premises[0], w, a, axioms);
        return make_node(std::move(c), relocate(rr, cr, c, {}), {std::move(t)}, axioms);
      }
      case Rule::ImpL: {
        Formula f = cr.find(rr.at)->seq.ante.at(rr.principal->index);
        Proof t0 = cut_impl(left, right.premises[0], w, a, axioms);
        Proof l2 = weaken_left(left, rr.at, {f.right()}, axioms);
        Proof t1 = cut_impl(l2, right.premises[1], w, a, axioms);
        return make_node(std::move(c), relocate(rr, cr, c, {}), {std::move(t0), std::move(t1)},
                         axioms);
      }
      default:
        throw TransformError(std::string("cut: unexpected non-principal right rule ") +
                             rule_name(rr.rule));
    }
  }

  // (3) principal in both premises
  switch (a.kind()) {
    case Conn::Or: {
      int i = rl.rule == Rule::OrR1 ? 0 : 1;
      return cut_impl(left.premises[0], right.premises[i], w, i == 0 ? a.left() : a.right(),
                      axioms);
    }
    case Conn::And: {
      Proof l1 = weaken_left(left.premises[0], w, {a.right()}, axioms);
      Proof t1 = cut_impl(l1, right.premises[0], w, a.left(), axioms);  // c + a.right()@w
      return cut_impl(left.premises[1], t1, w, a.right(), axioms);
    }
    case Conn::Imp: {
      Proof t1 = cut_impl(left, right.premises[0], w, a, axioms);  // strip(c) + out a.left()@w
      Proof lw = weaken_left(left, w, {a.right()}, axioms);
      Proof t2 = cut_impl(lw, right.premises[1], w, a, axioms);  // c + a.right()@w
      Proof t3 = cut_impl(t1, left.premises[0], w, a.left(), axioms);  // strip(c)+out a.right()@w
      return cut_impl(t3, t2, w, a.right(), axioms);
    }
    case Conn::Box: {
      Name t = *rr.target;
      Proof l2 = weaken_left(left, t, {a.inner()}, axioms);
      Proof t1 = cut_impl(l2, right.premises[0], w, a, axioms);  // c + a.inner()@t
      NestedSequent childshape;
      childshape.seq.out = a.inner();
      int cix = locate_child(left.premises[0].conclusion, w, a.character(), childshape);
      Proof t2 = shift(left.premises[0], w, cix, t, axioms);  // strip(c) + out a.inner()@t
      return cut_impl(t2, t1, t, a.inner(), axioms);
    }
    case Conn::Dia: {
      Name u = *rl.target;
      // right premise: c with a fresh (x)[inner => -] child at w; move that
      // child along the propagation path to u, then cut the smaller formula
      NestedSequent childshape;
      childshape.seq.ante.push_back(a.inner());
      int cix = locate_child(right.premises[0].conclusion, w, a.character(), childshape);
      Proof t1 = shift(right.premises[0], w, cix, u, axioms);  // c + a.inner()@u
      return cut_impl(left.premises[0], t1, u, a.inner(), axioms);
    }
    default:
      throw TransformError("cut: principal-principal with cut formula " + a.str());
  }
}

}  // namespace

Proof eliminate_cut(const Proof& left, const Proof& right, const Name& cut_at,
                    const Formula& cut_formula, const AxiomSet& axioms) {
  return cut_impl(left, right, cut_at, cut_formula, axioms);
}

}  // namespace igl
