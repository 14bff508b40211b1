#include "igl/interpolate.hpp"

#include <algorithm>
#include <functional>

#include "igl/transform.hpp"

namespace igl {

NestedSequent BiasedSequent::forget() const {
  NestedSequent g;
  g.name = name;
  g.seq.ante = seq.left;
  for (const auto& f : seq.right) g.seq.ante.push_back(f);
  g.seq.out = seq.out;
  for (const auto& [x, c] : children) g.children.emplace_back(x, c.forget());
  return g;
}

NestedSequent BiasedSequent::left_part() const {
  NestedSequent g;
  g.name = name;
  g.seq.ante = seq.left;
  for (const auto& [x, c] : children) g.children.emplace_back(x, c.left_part());
  return g;
}

NestedSequent BiasedSequent::right_part() const {
  NestedSequent g;
  g.name = name;
  g.seq.ante = seq.right;
  g.seq.out = seq.out;
  for (const auto& [x, c] : children) g.children.emplace_back(x, c.right_part());
  return g;
}

const BiasedSequent* BiasedSequent::find(const Name& n) const {
  if (name == n) return this;
  for (const auto& [x, c] : children)
    if (const auto* r = c.find(n)) return r;
  return nullptr;
}

std::vector<Name> BiasedSequent::names_preorder() const {
  std::vector<Name> out{name};
  for (const auto& [x, c] : children) {
    auto sub = c.names_preorder();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::string BiasedSequent::str() const {
  auto flist = [](const std::vector<Formula>& fs) {
    if (fs.empty()) return std::string("-");
    std::string out;
    for (size_t i = 0; i < fs.size(); ++i) {
      if (i) out += ", ";
      out += fs[i].str();
    }
    return out;
  };
  std::string out =
      flist(seq.left) + " | " + flist(seq.right) + " => " + (seq.out ? seq.out->str() : "-");
  for (const auto& [x, c] : children) out += ", (" + x.str() + ")[ " + c.str() + " ]";
  return out;
}

BiasedSequent swap_bias(const BiasedSequent& g) {
  BiasedSequent out = g;
  std::swap(out.seq.left, out.seq.right);
  for (auto& [x, c] : out.children) c = swap_bias(c);
  return out;
}

BiasedSequent apply_biasing(const NestedSequent& g, const Biasing& b) {
  BiasedSequent out;
  out.name = g.name;
  auto it = b.find(g.name);
  if (it == b.end() || it->second.size() != g.seq.ante.size())
    throw InterpolationError("biasing does not cover component " + g.name.str());
  for (size_t i = 0; i < g.seq.ante.size(); ++i)
    (it->second[i] ? out.seq.left : out.seq.right).push_back(g.seq.ante[i]);
  out.seq.out = g.seq.out;
  for (const auto& [x, c] : g.children) out.children.emplace_back(x, apply_biasing(c, b));
  return out;
}

void Interpolant::add(const Name& w, const Formula& a) {
  auto entry = std::make_pair(w, a);
  auto it = std::lower_bound(pairs.begin(), pairs.end(), entry);
  if (it == pairs.end() || *it != entry) pairs.insert(it, entry);
}

std::vector<Formula> Interpolant::at(const Name& w) const {
  std::vector<Formula> out;
  for (const auto& [n, f] : pairs)
    if (n == w) out.push_back(f);
  return out;
}

std::set<std::string> Interpolant::atoms(bool positive) const {
  std::set<std::string> out;
  for (const auto& [n, f] : pairs) {
    (void)n;
    auto sub = atomic_signature(f, positive);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::string Interpolant::str() const {
  std::string out = "{";
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += ", ";
    out += pairs[i].first.str() + " : " + pairs[i].second.str();
  }
  return out + "}";
}

Interpolant combine(CombineKind kind, const Interpolant& i, const Interpolant& j,
                    const std::vector<Name>& names) {
  Interpolant out;
  for (const auto& w : names) {
    auto is = i.at(w);
    auto js = j.at(w);
    if (is.empty() && js.empty()) {
      switch (kind) {
        case CombineKind::Implies: out.add(w, Formula::imp(Formula::top(), Formula::bottom())); break;
        case CombineKind::Or: out.add(w, Formula::bottom()); break;
        case CombineKind::And: out.add(w, Formula::top()); break;
      }
    } else if (!is.empty() && js.empty()) {
      for (const auto& c : is)
        out.add(w, kind == CombineKind::Implies ? Formula::imp(c, Formula::bottom()) : c);
    } else if (is.empty() && !js.empty()) {
      for (const auto& d : js)
        out.add(w, kind == CombineKind::Implies ? Formula::imp(Formula::top(), d) : d);
    } else {
      for (const auto& c : is)
        for (const auto& d : js) {
          switch (kind) {
            case CombineKind::Implies: out.add(w, Formula::imp(c, d)); break;
            case CombineKind::Or: out.add(w, Formula::disj(c, d)); break;
            case CombineKind::And: out.add(w, Formula::conj(c, d)); break;
          }
        }
    }
  }
  return out;
}

namespace {

Formula fold_formula(const std::vector<Formula>& fs, bool conj) {
  Formula out = fs.at(0);
  for (size_t i = 1; i < fs.size(); ++i)
    out = conj ? Formula::conj(out, fs[i]) : Formula::disj(out, fs[i]);
  return out;
}

}  // namespace

Interpolant modal_lift(LiftKind kind, const Character& x, const Interpolant& i, const Name& w,
                       const Name& u) {
  auto us = i.at(u);
  if (us.empty()) return i;
  Interpolant out;
  for (const auto& [n, f] : i.pairs)
    if (n != u) out.add(n, f);
  if (kind == LiftKind::Dia)
    out.add(w, Formula::dia(x, fold_formula(us, true)));
  else
    out.add(w, Formula::box(x, fold_formula(us, false)));
  return out;
}

// ---------------------------------------------------------------------------
// Replay: derive an interpolation proof from a constructed proof.
// ---------------------------------------------------------------------------

namespace {

std::string literal_key(const NestedSequent& g) {
  std::string k = g.name.str() + "[";
  for (const auto& f : g.seq.ante) k += f.str() + ";";
  k += "=>";
  if (g.seq.out) k += g.seq.out->str();
  for (const auto& [x, c] : g.children) k += "(" + x.str() + ")" + literal_key(c);
  return k + "]";
}

BiasedSequent make_biased(const NestedSequent& g, const Biasing& tags, bool flip) {
  BiasedSequent out;
  out.name = g.name;
  const auto& t = tags.at(g.name);
  for (size_t i = 0; i < g.seq.ante.size(); ++i) {
    bool eff_left = t.at(i) != flip;
    (eff_left ? out.seq.left : out.seq.right).push_back(g.seq.ante[i]);
  }
  out.seq.out = g.seq.out;
  for (const auto& [x, c] : g.children) out.children.emplace_back(x, make_biased(c, tags, flip));
  return out;
}

std::vector<Name> component_names(const NestedSequent& g) {
  std::vector<Name> out;
  for (const auto& [n, s] : g.components()) {
    (void)s;
    out.push_back(n);
  }
  return out;
}

// Binary combines range only over components where a premise actually
// contributed a pair. The empty-empty default clause is available through
// the public combine(), but a default pair has no derivable left (resp.
// right) side proof, so the replay never manufactures one.
std::vector<Name> live_names(const std::vector<Name>& names, const Interpolant& i,
                             const Interpolant& j) {
  std::vector<Name> out;
  for (const auto& n : names)
    if (!i.at(n).empty() || !j.at(n).empty()) out.push_back(n);
  return out;
}

InterpolationProof replay(const Proof& p, const Biasing& tags, bool flip, const AxiomSet& ax) {
  const NestedSequent& c = p.conclusion;
  const RuleInstance& r = p.inst;
  InterpolationProof node;
  node.seq = make_biased(c, tags, flip);
  node.at = r.at;
  node.target = r.target;
  node.character = r.character;
  auto names = component_names(c);

  if (p.premises.empty()) {
    int ix = r.principal->index;
    Formula f = c.find(r.at)->seq.ante.at(ix);
    bool eff_left = tags.at(r.at).at(ix) != flip;
    node.principal = f;
    if (r.rule == Rule::Id) {
      node.rule = eff_left ? "idI1" : "idI2";
      node.interp.add(r.at, eff_left ? f : Formula::top());
    } else if (r.rule == Rule::BotL) {
      node.rule = eff_left ? "botLI1" : "botLI2";
      node.interp.add(r.at, eff_left ? Formula::bottom() : Formula::top());
    } else {
      throw InterpolationError("replay: leaf with non-initial rule");
    }
    return node;
  }

  auto want = apply_backward(c, r, ax);
  for (size_t k = 0; k < want.size(); ++k)
    if (literal_key(p.premises[k].conclusion) != literal_key(want[k]))
      throw InterpolationError(
          "replay: proof is not in constructed form (premise " + std::to_string(k) + " of " +
          rule_name(r.rule) + " differs); reprove before interpolating");

  auto phys_tag = [&](const Name& w, int ix) { return tags.at(w).at(ix); };

  switch (r.rule) {
    case Rule::OrL: {
      int ix = r.principal->index;
      Formula f = c.find(r.at)->seq.ante.at(ix);
      bool eff_left = phys_tag(r.at, ix) != flip;
      node.principal = f;
      auto n0 = replay(p.premises[0], tags, flip, ax);
      auto n1 = replay(p.premises[1], tags, flip, ax);
      node.rule = eff_left ? "orL_I1" : "orL_I2";
      node.interp = combine(eff_left ? CombineKind::Or : CombineKind::And, n0.interp, n1.interp,
                            live_names(names, n0.interp, n1.interp));
      node.premises = {std::move(n0), std::move(n1)};
      return node;
    }
    case Rule::AndL: {
      int ix = r.principal->index;
      Formula f = c.find(r.at)->seq.ante.at(ix);
      bool phys = phys_tag(r.at, ix);
      node.principal = f;
      Biasing t2 = tags;
      auto& v = t2[r.at];
      v[ix] = phys;
      v.insert(v.begin() + ix + 1, phys);
      auto n0 = replay(p.premises[0], t2, flip, ax);
      node.rule = (phys != flip) ? "andL_IP1" : "andL_IP2";
      node.interp = n0.interp;
      node.premises = {std::move(n0)};
      return node;
    }
    case Rule::OrR1:
    case Rule::OrR2: {
      node.principal = c.find(r.at)->seq.out;
      auto n0 = replay(p.premises[0], tags, flip, ax);
      node.rule = r.rule == Rule::OrR1 ? "orR1_IP" : "orR2_IP";
      node.interp = n0.interp;
      node.premises = {std::move(n0)};
      return node;
    }
    case Rule::AndR: {
      node.principal = c.find(r.at)->seq.out;
      auto n0 = replay(p.premises[0], tags, flip, ax);
      auto n1 = replay(p.premises[1], tags, flip, ax);
      node.rule = "andR_I";
      node.interp = combine(CombineKind::And, n0.interp, n1.interp,
                            live_names(names, n0.interp, n1.interp));
      node.premises = {std::move(n0), std::move(n1)};
      return node;
    }
    case Rule::ImpR: {
      node.principal = c.find(r.at)->seq.out;
      Biasing t2 = tags;
      t2[r.at].push_back(flip);  // effective right part
      auto n0 = replay(p.premises[0], t2, flip, ax);
      node.rule = "impR_IP";
      node.interp = n0.interp;
      node.premises = {std::move(n0)};
      return node;
    }
    case Rule::ImpL: {
      int ix = r.principal->index;
      Formula f = c.find(r.at)->seq.ante.at(ix);
      bool phys = phys_tag(r.at, ix);
      bool eff_left = phys != flip;
      node.principal = f;
      auto n0 = replay(p.premises[0], tags, eff_left ? !flip : flip, ax);
      Biasing t2 = tags;
      t2[r.at].push_back(phys);
      auto n1 = replay(p.premises[1], t2, flip, ax);
      node.rule = eff_left ? "impL_I1" : "impL_I2";
      node.interp = combine(eff_left ? CombineKind::Implies : CombineKind::And, n0.interp,
                            n1.interp, live_names(names, n0.interp, n1.interp));
      node.premises = {std::move(n0), std::move(n1)};
      return node;
    }
    case Rule::DiaL: {
      int ix = r.principal->index;
      Formula f = c.find(r.at)->seq.ante.at(ix);
      bool phys = phys_tag(r.at, ix);
      bool eff_left = phys != flip;
      node.principal = f;
      Name child = want[0].find(r.at)->children.back().second.name;
      node.child = child;
      Biasing t2 = tags;
      auto& v = t2[r.at];
      v.erase(v.begin() + ix);
      t2[child] = {phys};
      auto n0 = replay(p.premises[0], t2, flip, ax);
      node.rule = eff_left ? "diaL_I1" : "diaL_I2";
      node.interp = modal_lift(eff_left ? LiftKind::Dia : LiftKind::Box, f.character(), n0.interp,
                               r.at, child);
      node.premises = {std::move(n0)};
      return node;
    }
    case Rule::BoxLProp: {
      int ix = r.principal->index;
      Formula f = c.find(r.at)->seq.ante.at(ix);
      bool phys = phys_tag(r.at, ix);
      node.principal = f;
      Biasing t2 = tags;
      t2[*r.target].push_back(phys);
      auto n0 = replay(p.premises[0], t2, flip, ax);
      node.rule = (phys != flip) ? "boxLprop_IP1" : "boxLprop_IP2";
      node.interp = n0.interp;
      node.premises = {std::move(n0)};
      return node;
    }
    case Rule::DiaRProp: {
      node.principal = c.find(r.at)->seq.out;
      auto n0 = replay(p.premises[0], tags, flip, ax);
      node.rule = "diaRprop_IP";
      node.interp = n0.interp;
      node.premises = {std::move(n0)};
      return node;
    }
    case Rule::BoxR: {
      Formula f = *c.find(r.at)->seq.out;
      node.principal = f;
      Name child = want[0].find(r.at)->children.back().second.name;
      node.child = child;
      Biasing t2 = tags;
      t2[child] = {};
      auto n0 = replay(p.premises[0], t2, flip, ax);
      node.rule = "boxR_I";
      node.interp = modal_lift(LiftKind::Box, f.character(), n0.interp, r.at, child);
      node.premises = {std::move(n0)};
      return node;
    }
    case Rule::DX: {
      Name child = want[0].find(r.at)->children.back().second.name;
      node.child = child;
      Biasing t2 = tags;
      t2[child] = {};
      auto n0 = replay(p.premises[0], t2, flip, ax);
      node.rule = "dX_I";
      node.interp = modal_lift(LiftKind::Box, *r.character, n0.interp, r.at, child);
      node.premises = {std::move(n0)};
      return node;
    }
    default:
      throw InterpolationError(std::string("replay: unexpected rule ") + rule_name(r.rule));
  }
}

}  // namespace

InterpolationProof derive_interpolation_proof(const Proof& p, const Biasing& biasing,
                                              const AxiomSet& axioms) {
  return replay(p, biasing, false, axioms);
}

// ---------------------------------------------------------------------------
// Side-proof extraction.
// ---------------------------------------------------------------------------

namespace {

Proof top_out_proof(const NestedSequent& base, const Name& w, const AxiomSet& ax) {
  NestedSequent g = graft(base, w, GSequent{{}, Formula::top()});
  RuleInstance impr{Rule::ImpR, w, FormulaAddr{false, 0}, {}, {}, {}};
  auto prem = apply_backward(g, impr, ax);
  return make_node(g, impr, {make_leaf(prem.at(0), Rule::BotL)}, ax);
}

Proof claim_or_search(const NestedSequent& goal, const AxiomSet& ax) {
  if (auto leaf = try_close(goal)) return *leaf;
  SearchBudget b;
  b.max_noninvertible = 8;
  if (auto p = prove(goal, ax, b)) return *p;
  throw InterpolationError("no construction for side goal: " + goal.str());
}

int locate(const NestedSequent& g, const Name& w, const Formula& f) {
  const NestedSequent* c = g.find(w);
  if (!c) throw InterpolationError("no component " + w.str());
  for (size_t i = 0; i < c->seq.ante.size(); ++i)
    if (c->seq.ante[i] == f) return static_cast<int>(i);
  throw InterpolationError("formula " + f.str() + " not at " + w.str());
}

// Claim of a premise node, with fallback to direct construction and search.
Proof get_claim(const InterpolationProof& prem, const ClaimMap& m, const Name& u, const Formula& e,
                bool left_side, const AxiomSet& ax) {
  auto it = m.find({u, e});
  if (it != m.end()) return left_side ? it->second.left : it->second.right;
  if (left_side) {
    NestedSequent base = prem.seq.left_part();
    if (e.is_top()) return top_out_proof(base, u, ax);
    return claim_or_search(graft(base, u, GSequent{{}, e}), ax);
  }
  return claim_or_search(graft(prem.seq.right_part(), u, GSequent{{e}, std::nullopt}), ax);
}

// base >u (0 => fold&(ds)) from per-conjunct proofs.
Proof fold_and_right(const NestedSequent& base, const Name& u, const std::vector<Formula>& ds,
                     const std::function<Proof(int)>& leaf, const AxiomSet& ax) {
  Proof acc = leaf(0);
  Formula f = ds[0];
  for (size_t i = 1; i < ds.size(); ++i) {
    Formula f2 = Formula::conj(f, ds[i]);
    NestedSequent goal = graft(base, u, GSequent{{}, f2});
    RuleInstance inst{Rule::AndR, u, FormulaAddr{false, 0}, {}, {}, {}};
    acc = make_node(goal, inst, {std::move(acc), leaf(static_cast<int>(i))}, ax);
    f = f2;
  }
  return acc;
}

// base >u (0 => fold|(ds)) from a proof of the i-th disjunct.
Proof pick_or_right(const NestedSequent& base, const Name& u, const std::vector<Formula>& ds,
                    size_t pick, Proof leaf, const AxiomSet& ax) {
  // formulas of the left-assoc fold prefix chain
  std::vector<Formula> chain{ds[0]};
  for (size_t i = 1; i < ds.size(); ++i) chain.push_back(Formula::disj(chain.back(), ds[i]));
  // start at the disjunct, wrap upward
  Proof acc = std::move(leaf);
  size_t level = pick == 0 ? 0 : pick;  // chain index where ds[pick] enters
  if (pick > 0) {
    NestedSequent goal = graft(base, u, GSequent{{}, chain[pick]});
    RuleInstance inst{Rule::OrR2, u, FormulaAddr{false, 0}, {}, {}, {}};
    acc = make_node(goal, inst, {std::move(acc)}, ax);
  }
  for (size_t i = level + 1; i < ds.size(); ++i) {
    NestedSequent goal = graft(base, u, GSequent{{}, chain[i]});
    RuleInstance inst{Rule::OrR1, u, FormulaAddr{false, 0}, {}, {}, {}};
    acc = make_node(goal, inst, {std::move(acc)}, ax);
  }
  return acc;
}

// base >u (fold&(ds) => 0) from a proof with all conjuncts as antecedents.
Proof decompose_and_ante(const NestedSequent& base, const Name& u, const std::vector<Formula>& ds,
                         Proof flat, const AxiomSet& ax) {
  Proof acc = std::move(flat);
  Formula f = ds[0];
  for (size_t i = 1; i < ds.size(); ++i) {
    Formula f2 = Formula::conj(f, ds[i]);
    std::vector<Formula> rest(ds.begin() + i + 1, ds.end());
    GSequent add;
    add.ante.push_back(f2);
    for (const auto& g : rest) add.ante.push_back(g);
    NestedSequent goal = graft(base, u, add);
    RuleInstance inst{Rule::AndL, u, FormulaAddr{true, locate(goal, u, f2)}, {}, {}, {}};
    acc = make_node(goal, inst, {std::move(acc)}, ax);
    f = f2;
  }
  return acc;

}

// base >u (fold|(ds) => 0) from per-disjunct proofs.
Proof decompose_or_ante(const NestedSequent& base, const Name& u, const std::vector<Formula>& ds,
                        const std::function<Proof(int)>& leaf, const AxiomSet& ax) {
  Proof acc = leaf(0);
  Formula f = ds[0];
  for (size_t i = 1; i < ds.size(); ++i) {
    Formula f2 = Formula::disj(f, ds[i]);
    NestedSequent goal = graft(base, u, GSequent{{f2}, std::nullopt});
    RuleInstance inst{Rule::OrL, u, FormulaAddr{true, locate(goal, u, f2)}, {}, {}, {}};
    acc = make_node(goal, inst, {std::move(acc), leaf(static_cast<int>(i))}, ax);
    f = f2;
  }
  return acc;
}

bool proof_references(const Proof& p, const Name& n) {
  if (p.inst.at == n || (p.inst.target && *p.inst.target == n)) return true;
  for (const auto& q : p.premises)
    if (proof_references(q, n)) return true;
  return false;
}

NestedSequent without_child(const NestedSequent& g, const Name& n) {
  NestedSequent out = g;
  std::function<bool(NestedSequent&)> rec = [&](NestedSequent& s) {
    for (size_t i = 0; i < s.children.size(); ++i) {
      if (s.children[i].second.name == n) {
        s.children.erase(s.children.begin() + i);
        return true;
      }
      if (rec(s.children[i].second)) return true;
    }
    return false;
  };
  if (!rec(out)) throw TransformError("prune: child not found");
  return out;
}

Proof rebuild_without(const Proof& p, const Name& n, const AxiomSet& ax) {
  NestedSequent nc = without_child(p.conclusion, n);
  if (p.premises.empty()) return make_leaf(std::move(nc), p.inst.rule);
  std::vector<Proof> prem;
  for (const auto& q : p.premises) prem.push_back(rebuild_without(q, n, ax));
  RuleInstance inst = p.inst;
  inst.witness.reset();
  if (inst.principal && inst.principal->in_antecedent) {
    Formula f = p.conclusion.find(inst.at)->seq.ante.at(inst.principal->index);
    int ix = -1;
    const auto& ante = nc.find(inst.at)->seq.ante;
    for (size_t i = 0; i < ante.size(); ++i)
      if (ante[i] == f) ix = static_cast<int>(i);
    inst.principal = FormulaAddr{true, ix};
  }
  return make_node(std::move(nc), std::move(inst), std::move(prem), ax);
}

// Removes an empty, unreferenced child component from the whole proof.
std::optional<Proof> prune_component(const Proof& p, const Name& n, const AxiomSet& ax) {
  if (proof_references(p, n)) return std::nullopt;
  try {
    return rebuild_without(p, n, ax);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct Extractor {
  const AxiomSet& ax;

  ClaimMap run(const InterpolationProof& ip) {
    std::vector<ClaimMap> sub;
    for (const auto& q : ip.premises) sub.push_back(run(q));
    ClaimMap out;
    NestedSequent l = ip.seq.left_part();
    NestedSequent r = ip.seq.right_part();
    auto lgoal = [&](const Name& u, const Formula& e) { return graft(l, u, GSequent{{}, e}); };
    auto rgoal = [&](const Name& u, const Formula& e) {
      return graft(r, u, GSequent{{e}, std::nullopt});
    };

    const std::string& rule = ip.rule;

    if (ip.premises.empty()) {
      for (const auto& [u, e] : ip.interp.pairs) {
        Proof lp = e.is_top() ? top_out_proof(l, u, ax) : claim_or_search(lgoal(u, e), ax);
        Proof rp = claim_or_search(rgoal(u, e), ax);
        out.emplace(std::make_pair(u, e), SideProofs{std::move(lp), std::move(rp)});
      }
      return out;
    }

    auto add = [&](const Name& u, const Formula& e, Proof lp, Proof rp) {
      out.emplace(std::make_pair(u, e), SideProofs{std::move(lp), std::move(rp)});
    };

    // --- interpolant-preserving rules -------------------------------------
    if (rule == "andL_IP1" || rule == "andL_IP2" || rule == "orR1_IP" || rule == "orR2_IP" ||
        rule == "impR_IP" || rule == "boxLprop_IP1" || rule == "boxLprop_IP2" ||
        rule == "diaRprop_IP") {
      const InterpolationProof& prem = ip.premises[0];
      for (const auto& [u, e] : ip.interp.pairs) {
        Proof lp = get_claim(prem, sub[0], u, e, true, ax);
        Proof rp = get_claim(prem, sub[0], u, e, false, ax);
        if (rule == "andL_IP1") {
          RuleInstance inst{Rule::AndL, ip.at, FormulaAddr{true, locate(lgoal(u, e), ip.at, *ip.principal)}, {}, {}, {}};
          lp = make_node(lgoal(u, e), inst, {std::move(lp)}, ax);
        } else if (rule == "andL_IP2") {
          RuleInstance inst{Rule::AndL, ip.at, FormulaAddr{true, locate(rgoal(u, e), ip.at, *ip.principal)}, {}, {}, {}};
          rp = make_node(rgoal(u, e), inst, {std::move(rp)}, ax);
        } else if (rule == "orR1_IP" || rule == "orR2_IP") {
          RuleInstance inst{rule == "orR1_IP" ? Rule::OrR1 : Rule::OrR2, ip.at,
                            FormulaAddr{false, 0}, {}, {}, {}};
          rp = make_node(rgoal(u, e), inst, {std::move(rp)}, ax);
        } else if (rule == "impR_IP") {
          RuleInstance inst{Rule::ImpR, ip.at, FormulaAddr{false, 0}, {}, {}, {}};
          rp = make_node(rgoal(u, e), inst, {std::move(rp)}, ax);
        } else if (rule == "boxLprop_IP1") {
          RuleInstance inst{Rule::BoxLProp, ip.at,
                            FormulaAddr{true, locate(lgoal(u, e), ip.at, *ip.principal)},
                            ip.target, ip.principal->character(), {}};
          lp = make_node(lgoal(u, e), inst, {std::move(lp)}, ax);
        } else if (rule == "boxLprop_IP2") {
          RuleInstance inst{Rule::BoxLProp, ip.at,
                            FormulaAddr{true, locate(rgoal(u, e), ip.at, *ip.principal)},
                            ip.target, ip.principal->character(), {}};
          rp = make_node(rgoal(u, e), inst, {std::move(rp)}, ax);
        } else if (rule == "diaRprop_IP") {
          RuleInstance inst{Rule::DiaRProp, ip.at, FormulaAddr{false, 0}, ip.target,
                            ip.principal->character(), {}};
          rp = make_node(rgoal(u, e), inst, {std::move(rp)}, ax);
        }
        add(u, e, std::move(lp), std::move(rp));
      }
      return out;
    }

    // --- binary combiners --------------------------------------------------
    if (rule == "orL_I1" || rule == "orL_I2" || rule == "andR_I" || rule == "impL_I1" ||
        rule == "impL_I2") {
      const InterpolationProof& p0 = ip.premises[0];
      const InterpolationProof& p1 = ip.premises[1];
      const Interpolant& i1 = p0.interp;
      const Interpolant& i2 = p1.interp;

      for (const auto& [u, e] : ip.interp.pairs) {
        auto c1 = i1.at(u);
        auto c2 = i2.at(u);
        // classify the pair; e1/e2 are the contributing premise formulas
        std::optional<Formula> e1, e2;
        if (!c1.empty() && !c2.empty()) {
          for (const auto& a : c1) {
            for (const auto& b : c2) {
              Formula composed = rule == "impL_I1"
                                     ? Formula::imp(a, b)
                                     : (rule == "orL_I1" ? Formula::disj(a, b)
                                                         : Formula::conj(a, b));
              if (composed == e) {
                e1 = a;
                e2 = b;
                break;
              }
            }
            if (e1) break;
          }
          if (!e1)
            throw InterpolationError("extract: pair " + e.str() + " not decomposable at " +
                                     u.str());
        } else if (!c1.empty()) {
          if (rule == "impL_I1") {
            e1 = e.left();  // e == e1 -> bottom
          } else {
            e1 = e;
          }
        } else if (!c2.empty()) {
          if (rule == "impL_I1") {
            e2 = e.right();  // e == top -> e2
          } else {
            e2 = e;
          }
        }
        // default pairs leave both e1 and e2 empty

        Proof lp = build_left(rule, ip, p0, p1, sub[0], sub[1], u, e, e1, e2, l, lgoal(u, e));
        Proof rp = build_right(rule, ip, p0, p1, sub[0], sub[1], u, e, e1, e2, r, rgoal(u, e));
        add(u, e, std::move(lp), std::move(rp));
      }
      return out;
    }

    // --- modal lifts --------------------------------------------------------
    if (rule == "diaL_I1" || rule == "diaL_I2" || rule == "boxR_I" || rule == "dX_I") {
      const InterpolationProof& prem = ip.premises[0];
      const Name u = *ip.child;
      const Name v = ip.at;
      Character x = ip.character ? *ip.character
                                 : (ip.principal ? ip.principal->character() : Character{});
      auto ds = prem.interp.at(u);
      std::optional<Formula> lifted;
      if (!ds.empty())
        lifted = rule == "diaL_I1" ? Formula::dia(x, fold_formula(ds, true))
                                   : Formula::box(x, fold_formula(ds, false));

      for (const auto& [z, e] : ip.interp.pairs) {
        if (lifted && z == v && e == *lifted) {
          add(z, e, lift_left(rule, ip, prem, sub[0], ds, x, lgoal(z, e)),
              lift_right(rule, ip, prem, sub[0], ds, x, rgoal(z, e)));
        } else {
          add(z, e, untouched_left(rule, ip, prem, sub[0], z, e, lgoal(z, e)),
              untouched_right(rule, ip, prem, sub[0], z, e, rgoal(z, e)));
        }
      }
      return out;
    }

    throw InterpolationError("extract: unknown rule " + rule);
  }

  // ---- binary combiner constructions -------------------------------------

  Proof build_left(const std::string& rule, const InterpolationProof& ip,
                   const InterpolationProof& p0, const InterpolationProof& p1, const ClaimMap& m0,
                   const ClaimMap& m1, const Name& u, const Formula& e,
                   const std::optional<Formula>& e1, const std::optional<Formula>& e2,
                   const NestedSequent& l, const NestedSequent& goal) {
    (void)e;
    const Formula f = *ip.principal;
    const Name v = ip.at;
    if (rule == "orL_I1") {
      // L has f = A|B at v; premises have A (resp. B) instead
      RuleInstance orl{Rule::OrL, v, FormulaAddr{true, locate(goal, v, f)}, {}, {}, {}};
      auto prem_goals = apply_backward(goal, orl, ax);
      Proof b0, b1;
      if (e1 && e2) {
        RuleInstance r1{Rule::OrR1, u, FormulaAddr{false, 0}, {}, {}, {}};
        RuleInstance r2{Rule::OrR2, u, FormulaAddr{false, 0}, {}, {}, {}};
        b0 = make_node(prem_goals[0], r1, {get_claim(p0, m0, u, *e1, true, ax)}, ax);
        b1 = make_node(prem_goals[1], r2, {get_claim(p1, m1, u, *e2, true, ax)}, ax);
      } else {
        b0 = e1 ? get_claim(p0, m0, u, *e1, true, ax) : claim_or_search(prem_goals[0], ax);
        b1 = e2 ? get_claim(p1, m1, u, *e2, true, ax) : claim_or_search(prem_goals[1], ax);
      }
      return make_node(goal, orl, {std::move(b0), std::move(b1)}, ax);
    }
    // orL_I2 / andR_I / impL_I2: the left parts of the premises equal l
    if (rule == "orL_I2" || rule == "andR_I" || rule == "impL_I2") {
      if (e1 && e2) {
        RuleInstance andr{Rule::AndR, u, FormulaAddr{false, 0}, {}, {}, {}};
        return make_node(goal, andr,
                         {get_claim(p0, m0, u, *e1, true, ax), get_claim(p1, m1, u, *e2, true, ax)},
                         ax);
      }
      if (e1) return get_claim(p0, m0, u, *e1, true, ax);
      if (e2) return get_claim(p1, m1, u, *e2, true, ax);
      return top_out_proof(l, u, ax);  // default pair is top
    }
    if (rule == "impL_I1") {
      // impR at u, then impL at v inside
      Formula ea = e1 ? *e1 : Formula::top();
      Formula eb = e2 ? *e2 : Formula::bottom();
      RuleInstance impr{Rule::ImpR, u, FormulaAddr{false, 0}, {}, {}, {}};
      NestedSequent inner_goal = apply_backward(goal, impr, ax).at(0);
      RuleInstance impl{Rule::ImpL, v, FormulaAddr{true, locate(inner_goal, v, f)}, {}, {}, {}};
      // premise 0: l + ea@u + out f.left()@v  == R(p0) > u (ea => 0)
      Proof t0 = get_claim(p0, m0, u, ea, false, ax);
      // premise 1: l + f.right()@v + ea@u + out eb@u
      Proof t1 = weaken_left(get_claim(p1, m1, u, eb, true, ax), u, {ea}, ax);
      Proof inner = make_node(inner_goal, impl, {std::move(t0), std::move(t1)}, ax);
      return make_node(goal, impr, {std::move(inner)}, ax);
    }
    throw InterpolationError("extract: unknown combiner " + rule);
  }

  Proof build_right(const std::string& rule, const InterpolationProof& ip,
                    const InterpolationProof& p0, const InterpolationProof& p1, const ClaimMap& m0,
                    const ClaimMap& m1, const Name& u, const Formula& e,
                    const std::optional<Formula>& e1, const std::optional<Formula>& e2,
                    const NestedSequent& r, const NestedSequent& goal) {
    (void)r;
    const Formula f = *ip.principal;
    const Name v = ip.at;
    if (rule == "orL_I1") {
      // right parts of both premises equal r
      if (e1 && e2) {
        RuleInstance orl{Rule::OrL, u, FormulaAddr{true, locate(goal, u, e)}, {}, {}, {}};
        return make_node(
            goal, orl,
            {get_claim(p0, m0, u, *e1, false, ax), get_claim(p1, m1, u, *e2, false, ax)}, ax);
      }
      if (e1) return get_claim(p0, m0, u, *e1, false, ax);
      if (e2) return get_claim(p1, m1, u, *e2, false, ax);
      return make_leaf(goal, Rule::BotL);  // default pair is bottom
    }
    if (rule == "orL_I2") {
      RuleInstance orl{Rule::OrL, v, FormulaAddr{true, locate(goal, v, f)}, {}, {}, {}};
      auto prem_goals = apply_backward(goal, orl, ax);
      auto branch = [&](int k, const InterpolationProof& p, const ClaimMap& m,
                        const std::optional<Formula>& mine,
                        const std::optional<Formula>& other) -> Proof {
        if (e1 && e2) {
          Proof base = weaken_left(get_claim(p, m, u, *mine, false, ax), u, {*other}, ax);
          RuleInstance andl{Rule::AndL, u, FormulaAddr{true, locate(prem_goals[k], u, e)}, {}, {}, {}};
          return make_node(prem_goals[k], andl, {std::move(base)}, ax);
        }
        if (mine) return get_claim(p, m, u, *mine, false, ax);
        return claim_or_search(prem_goals[k], ax);
      };
      Proof b0 = branch(0, p0, m0, e1, e2);
      Proof b1 = branch(1, p1, m1, e2, e1);
      return make_node(goal, orl, {std::move(b0), std::move(b1)}, ax);
    }
    if (rule == "andR_I") {
      if (e1 && e2) {
        RuleInstance andl{Rule::AndL, u, FormulaAddr{true, locate(goal, u, e)}, {}, {}, {}};
        NestedSequent flat_goal = apply_backward(goal, andl, ax).at(0);
        RuleInstance andr{Rule::AndR, v, FormulaAddr{false, 0}, {}, {}, {}};
        auto prem_goals = apply_backward(flat_goal, andr, ax);
        Proof i0 = weaken_left(get_claim(p0, m0, u, *e1, false, ax), u, {*e2}, ax);
        Proof i1 = weaken_left(get_claim(p1, m1, u, *e2, false, ax), u, {*e1}, ax);
        Proof mid = make_node(flat_goal, andr, {std::move(i0), std::move(i1)}, ax);
        return make_node(goal, andl, {std::move(mid)}, ax);
      }
      RuleInstance andr{Rule::AndR, v, FormulaAddr{false, 0}, {}, {}, {}};
      auto prem_goals = apply_backward(goal, andr, ax);
      Proof i0 = e1 ? get_claim(p0, m0, u, *e1, false, ax) : claim_or_search(prem_goals[0], ax);
      Proof i1 = e2 ? get_claim(p1, m1, u, *e2, false, ax) : claim_or_search(prem_goals[1], ax);
      return make_node(goal, andr, {std::move(i0), std::move(i1)}, ax);
    }
    if (rule == "impL_I2") {
      RuleInstance impl{Rule::ImpL, v, FormulaAddr{true, locate(goal, v, f)}, {}, {}, {}};
      auto prem_goals = apply_backward(goal, impl, ax);
      auto part = [&](int k, const InterpolationProof& p, const ClaimMap& m,
                      const std::optional<Formula>& mine,
                      const std::optional<Formula>& other) -> Proof {
        if (e1 && e2) {
          Proof base = weaken_left(get_claim(p, m, u, *mine, false, ax), u, {*other}, ax);
          RuleInstance andl{Rule::AndL, u, FormulaAddr{true, locate(prem_goals[k], u, e)}, {}, {}, {}};
          return make_node(prem_goals[k], andl, {std::move(base)}, ax);
        }
        if (mine) return get_claim(p, m, u, *mine, false, ax);
        return claim_or_search(prem_goals[k], ax);
      };
      Proof t0 = part(0, p0, m0, e1, e2);
      Proof t1 = part(1, p1, m1, e2, e1);
      return make_node(goal, impl, {std::move(t0), std::move(t1)}, ax);
    }
    if (rule == "impL_I1") {
      Formula ea = e1 ? *e1 : Formula::top();
      Formula eb = e2 ? *e2 : Formula::bottom();
      RuleInstance impl{Rule::ImpL, u, FormulaAddr{true, locate(goal, u, e)}, {}, {}, {}};
      auto prem_goals = apply_backward(goal, impl, ax);
      // premise 0: strip(r) + e@u + out ea@u == L(p0) > u (0 => ea), weakened
      Proof t0;
      if (ea.is_top() && !e1) {
        RuleInstance impr{Rule::ImpR, u, FormulaAddr{false, 0}, {}, {}, {}};
        NestedSequent ig = apply_backward(prem_goals[0], impr, ax).at(0);
        t0 = make_node(prem_goals[0], impr, {make_leaf(ig, Rule::BotL)}, ax);
      } else {
        t0 = weaken_left(get_claim(p0, m0, u, ea, true, ax), u, {e}, ax);
      }
      // premise 1: r + e@u + eb@u == R(p1) > u (eb => 0), weakened
      Proof t1;
      if (eb.kind() == Conn::Bottom && !e2) {
        t1 = make_leaf(prem_goals[1], Rule::BotL);
      } else {
        t1 = weaken_left(get_claim(p1, m1, u, eb, false, ax), u, {e}, ax);
      }
      return make_node(goal, impl, {std::move(t0), std::move(t1)}, ax);
    }
    throw InterpolationError("extract: unknown combiner " + rule);
  }

  // ---- modal lift constructions -------------------------------------------

  Proof lift_left(const std::string& rule, const InterpolationProof& ip,
                  const InterpolationProof& prem, const ClaimMap& m, const std::vector<Formula>& ds,
                  const Character& x, const NestedSequent& goal) {
    const Name u = *ip.child;
    const Name v = ip.at;
    NestedSequent lp = prem.seq.left_part();
    if (rule == "diaL_I1") {
      Proof fold = fold_and_right(
          lp, u, ds, [&](int i) { return get_claim(prem, m, u, ds[i], true, ax); }, ax);
      // diamond the conjunction back to v, then consume the principal
      RuleInstance dial{Rule::DiaL, v, FormulaAddr{true, locate(goal, v, *ip.principal)}, {}, x, {}};
      NestedSequent mid = apply_backward(goal, dial, ax).at(0);
      RuleInstance dpr{Rule::DiaRProp, v, FormulaAddr{false, 0},
                       mid.find(v)->children.back().second.name, x, {}};
      Proof moved = make_node(mid, dpr, {std::move(fold)}, ax);
      return make_node(goal, dial, {std::move(moved)}, ax);
    }
    // box lifts (diaL_I2 / boxR_I / dX_I): the premise's left part carries an
    // empty child at u; the picked disjunct becomes its output, then boxR.
    Proof pick = pick_or_right(lp, u, ds, 0, get_claim(prem, m, u, ds[0], true, ax), ax);
    RuleInstance boxr{Rule::BoxR, v, FormulaAddr{false, 0}, {}, x, {}};
    return make_node(goal, boxr, {std::move(pick)}, ax);
  }

  Proof lift_right(const std::string& rule, const InterpolationProof& ip,
                   const InterpolationProof& prem, const ClaimMap& m,
                   const std::vector<Formula>& ds, const Character& x, const NestedSequent& goal) {
    const Name u = *ip.child;
    const Name v = ip.at;
    NestedSequent rp = prem.seq.right_part();
    Formula folded = rule == "diaL_I1" ? fold_formula(ds, true) : fold_formula(ds, false);
    if (rule == "diaL_I1") {
      Proof flat = get_claim(prem, m, u, ds[0], false, ax);
      if (ds.size() > 1) {
        std::vector<Formula> rest(ds.begin() + 1, ds.end());
        flat = weaken_left(flat, u, rest, ax);
      }
      Proof dec = decompose_and_ante(rp, u, ds, std::move(flat), ax);
      RuleInstance dial{Rule::DiaL, v,
                        FormulaAddr{true, locate(goal, v, Formula::dia(x, folded))}, {}, x, {}};
      return make_node(goal, dial, {std::move(dec)}, ax);
    }
    // box lifts: open the box below the fresh child, propagate the folded
    // disjunction into it, then split it with orL at the child.
    RuleInstance open = rule == "diaL_I2"
                            ? RuleInstance{Rule::DiaL, v,
                                           FormulaAddr{true, locate(goal, v, *ip.principal)},
                                           {}, x, {}}
                        : rule == "boxR_I"
                            ? RuleInstance{Rule::BoxR, v, FormulaAddr{false, 0}, {}, x, {}}
                            : RuleInstance{Rule::DX, v, {}, {}, x, {}};
    NestedSequent mid = apply_backward(goal, open, ax).at(0);
    Name fresh = mid.find(v)->children.back().second.name;
    RuleInstance blp{Rule::BoxLProp, v, FormulaAddr{true, locate(mid, v, Formula::box(x, folded))},
                     fresh, x, {}};
    Proof dec = decompose_or_ante(
        mid, fresh, ds,
        [&](int i) {
          // the premise claim, with the boxed disjunction weakened in at v
          Proof c = get_claim(prem, m, u, ds[i], false, ax);
          return weaken_left(c, v, {Formula::box(x, folded)}, ax);
        },
        ax);
    Proof mid_proof = make_node(mid, blp, {std::move(dec)}, ax);
    return make_node(goal, open, {std::move(mid_proof)}, ax);
  }

  Proof untouched_left(const std::string& rule, const InterpolationProof& ip,
                       const InterpolationProof& prem, const ClaimMap& m, const Name& z,
                       const Formula& e, const NestedSequent& goal) {
    const Name u = *ip.child;
    const Name v = ip.at;
    Proof claim = get_claim(prem, m, z, e, true, ax);
    if (rule == "diaL_I1") {
      RuleInstance dial{Rule::DiaL, v, FormulaAddr{true, locate(goal, v, *ip.principal)},
                        {}, ip.principal->character(), {}};
      return make_node(goal, dial, {std::move(claim)}, ax);
    }
    if (rule == "dX_I") {
      RuleInstance dx{Rule::DX, v, {}, {}, *ip.character, {}};
      return make_node(goal, dx, {std::move(claim)}, ax);
    }
    // diaL_I2 / boxR_I: the left part of the premise has an empty child at u
    if (auto pruned = prune_component(claim, u, ax)) return *pruned;
    return claim_or_search(goal, ax);
  }

  Proof untouched_right(const std::string& rule, const InterpolationProof& ip,
                        const InterpolationProof& prem, const ClaimMap& m, const Name& z,
                        const Formula& e, const NestedSequent& goal) {
    const Name u = *ip.child;
    const Name v = ip.at;
    Proof claim = get_claim(prem, m, z, e, false, ax);
    if (rule == "diaL_I2") {
      RuleInstance dial{Rule::DiaL, v, FormulaAddr{true, locate(goal, v, *ip.principal)},
                        {}, ip.principal->character(), {}};
      return make_node(goal, dial, {std::move(claim)}, ax);
    }
    if (rule == "boxR_I") {
      RuleInstance boxr{Rule::BoxR, v, FormulaAddr{false, 0}, {}, ip.principal->character(), {}};
      return make_node(goal, boxr, {std::move(claim)}, ax);
    }
    if (rule == "dX_I") {
      RuleInstance dx{Rule::DX, v, {}, {}, *ip.character, {}};
      return make_node(goal, dx, {std::move(claim)}, ax);
    }
    // diaL_I1: the right part of the premise has an empty child at u
    if (auto pruned = prune_component(claim, u, ax)) return *pruned;
    return claim_or_search(goal, ax);
  }

};

}  // namespace

ClaimMap extract_side_proofs(const InterpolationProof& ip, const AxiomSet& axioms) {
  Extractor ex{axioms};
  return ex.run(ip);
}

LyndonResult lyndon_interpolant(const Proof& p, const AxiomSet& axioms, InterpolantMode mode) {
  const NestedSequent& c = p.conclusion;
  if (!c.children.empty() || !c.seq.ante.empty() || !c.seq.out || c.seq.out->kind() != Conn::Imp)
    throw InterpolationError("conclusion must be a single component '- => A -> B'");
  if (p.inst.rule != Rule::ImpR) throw InterpolationError("last rule must be impR");
  Formula a = c.seq.out->left();
  Formula b = c.seq.out->right();
  Name w = c.name;
  const Proof& sub = p.premises[0];

  Biasing bias;
  bias[w] = {true};
  auto ip = derive_interpolation_proof(sub, bias, axioms);
  auto claims = extract_side_proofs(ip, axioms);

  std::vector<Formula> cs;
  for (const auto& [n, f] : ip.interp.pairs) {
    if (n != w) throw InterpolationError("root interpolant names a missing component");
    cs.push_back(f);
  }
  if (cs.empty()) throw InterpolationError("empty root interpolant");

  bool meet = mode == InterpolantMode::Meet;
  Formula inter = fold_formula(cs, meet);

  NestedSequent l = ip.seq.left_part();    // A => -
  NestedSequent r = ip.seq.right_part();   // - => B

  Proof body_a = meet ? fold_and_right(
                            l, w, cs,
                            [&](int i) { return claims.at({w, cs[i]}).left; }, axioms)
                      : pick_or_right(l, w, cs, 0, claims.at({w, cs[0]}).left, axioms);

  Proof body_b;
  if (meet) {
    Proof flat = claims.at({w, cs[0]}).right;
    if (cs.size() > 1) {
      std::vector<Formula> rest(cs.begin() + 1, cs.end());
      flat = weaken_left(flat, w, rest, axioms);
    }
    body_b = decompose_and_ante(r, w, cs, std::move(flat), axioms);
  } else {
    body_b = decompose_or_ante(
        r, w, cs, [&](int i) { return claims.at({w, cs[i]}).right; }, axioms);
  }

  NestedSequent goal_a;
  goal_a.name = w;
  goal_a.seq.out = Formula::imp(a, inter);
  RuleInstance impr{Rule::ImpR, w, FormulaAddr{false, 0}, {}, {}, {}};
  Proof proof_a = make_node(goal_a, impr, {std::move(body_a)}, axioms);

  NestedSequent goal_b;
  goal_b.name = w;
  goal_b.seq.out = Formula::imp(inter, b);
  Proof proof_b = make_node(goal_b, impr, {std::move(body_b)}, axioms);

  bool sig_ok = true;
  for (bool pos : {true, false}) {
    auto ia = atomic_signature(inter, pos);
    auto aa = atomic_signature(a, pos);
    auto ba = atomic_signature(b, pos);
    for (const auto& at : ia)
      if (!aa.count(at) || !ba.count(at)) sig_ok = false;
  }

  return LyndonResult{inter, std::move(proof_a), std::move(proof_b), sig_ok};
}

Formula simplify_interpolant(const Formula& f) {
  switch (f.kind()) {
    case Conn::Atom:
    case Conn::Bottom:
      return f;
    case Conn::And: {
      Formula l = simplify_interpolant(f.left());
      Formula r = simplify_interpolant(f.right());
      if (l.is_top()) return r;
      if (r.is_top()) return l;
      return Formula::conj(l, r);
    }
    case Conn::Or: {
      Formula l = simplify_interpolant(f.left());
      Formula r = simplify_interpolant(f.right());
      if (l.kind() == Conn::Bottom) return r;
      if (r.kind() == Conn::Bottom) return l;
      return Formula::disj(l, r);
    }
    case Conn::Imp:
      if (f.is_top()) return f;
      return Formula::imp(simplify_interpolant(f.left()), simplify_interpolant(f.right()));
    case Conn::Dia:
      return Formula::dia(f.character(), simplify_interpolant(f.inner()));
    case Conn::Box:
      return Formula::box(f.character(), simplify_interpolant(f.inner()));
  }
  return f;
}

}  // namespace igl
