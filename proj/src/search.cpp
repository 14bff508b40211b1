#include "igl/search.hpp"

#include <map>
#include <string>

namespace igl {

namespace {

// Per-branch bookkeeping. Copied at branch points.
struct BranchState {
  // boxLprop applications per (component, principal formula, target)
  std::map<std::tuple<Name, std::string, Name>, int> prop_count;
  // impL re-selections per (component, principal formula)
  std::map<std::pair<Name, std::string>, int> impl_count;
};

struct Searcher {
  const AxiomSet& axioms;
  Grammar grammar;
  SearchBudget budget;
  int initial_components = 0;
  // canonical sequent -> highest branch budget that already failed
  std::map<std::string, int> failed_at;

  static constexpr int kImpLReselectCap = 3;

  explicit Searcher(const AxiomSet& ax, const SearchBudget& b)
      : axioms(ax), grammar(build_grammar(ax)), budget(b) {}

  bool may_grow(const NestedSequent& g) const {
    return g.component_count() < initial_components + budget.max_new_components;
  }

  std::optional<Proof> node(const NestedSequent& g, const RuleInstance& inst, int budget_left,
                            const BranchState& st) {
    auto premises = apply_backward(g, inst, axioms);
    std::vector<Proof> sub;
    sub.reserve(premises.size());
    for (const auto& prem : premises) {
      auto p = dfs(prem, budget_left, st);
      if (!p) return std::nullopt;
      sub.push_back(std::move(*p));
    }
    return Proof{g, inst, std::move(sub)};
  }

  // Saturation: apply the first available invertible (or choice-free) rule.
  // Returns a rule instance, or nullopt when saturated.
  std::optional<RuleInstance> saturation_step(const NestedSequent& g, BranchState& st) {
    auto comps = g.components();
    // andL / diaL: consume their principal, always safe
    for (const auto& [n, s] : comps) {
      for (size_t i = 0; i < s->ante.size(); ++i) {
        if (s->ante[i].kind() == Conn::And)
          return RuleInstance{Rule::AndL, n, FormulaAddr{true, static_cast<int>(i)}, {}, {}, {}};
        if (s->ante[i].kind() == Conn::Dia && may_grow(g))
          return RuleInstance{Rule::DiaL, n, FormulaAddr{true, static_cast<int>(i)},
                              {}, s->ante[i].character(), {}};
      }
    }
    // orL: invertible, branches without choice
    for (const auto& [n, s] : comps)
      for (size_t i = 0; i < s->ante.size(); ++i)
        if (s->ante[i].kind() == Conn::Or)
          return RuleInstance{Rule::OrL, n, FormulaAddr{true, static_cast<int>(i)}, {}, {}, {}};
    // andR / boxR: the output determines the rule, no choice involved
    for (const auto& [n, s] : comps) {
      if (!s->out.has_value()) continue;
      if (s->out->kind() == Conn::And)
        return RuleInstance{Rule::AndR, n, FormulaAddr{false, 0}, {}, {}, {}};
      if (s->out->kind() == Conn::Box && may_grow(g))
        return RuleInstance{Rule::BoxR, n, FormulaAddr{false, 0}, {}, s->out->character(), {}};
    }
    // boxLprop saturation under blocking
    PropagationGraph pg = propagation_graph(g);
    for (const auto& [n, s] : comps) {
      for (size_t i = 0; i < s->ante.size(); ++i) {
        if (s->ante[i].kind() != Conn::Box) continue;
        const Formula box = s->ante[i];
        auto targets = reach(grammar, pg, n, box.character());
        for (const auto& u : targets) {
          const auto& tgt = g.find(u)->seq;
          bool present = false;
          for (const auto& f : tgt.ante)
            if (f == box.inner()) present = true;
          if (present) continue;
          auto key = std::make_tuple(n, box.str(), u);
          if (st.prop_count[key] >= budget.max_propagations_per_pair) continue;
          st.prop_count[key]++;
          return RuleInstance{Rule::BoxLProp, n, FormulaAddr{true, static_cast<int>(i)},
                              u, box.character(), {}};
        }
      }
    }
    // dX: once per (component, character); only when no x-child exists yet
    for (const auto& x : axioms.serial) {
      for (const auto& [n, s] : comps) {
        (void)s;
        const NestedSequent* comp = g.find(n);
        bool has_child = false;
        for (const auto& [y, c] : comp->children) {
          (void)c;
          if (y == x) has_child = true;
        }
        if (!has_child && may_grow(g))
          return RuleInstance{Rule::DX, n, {}, {}, x, {}};
      }
    }
    return std::nullopt;
  }

  std::optional<Proof> dfs(const NestedSequent& g, int budget_left, BranchState st) {
    if (auto leaf = try_close(g)) return leaf;

    if (auto inst = saturation_step(g, st)) return node(g, *inst, budget_left, st);

    std::string key = g.canonical_key(false);
    if (auto it = failed_at.find(key); it != failed_at.end() && it->second >= budget_left)
      return std::nullopt;
    if (budget_left == 0) {
      failed_at[key] = std::max(failed_at[key], 0);
      return std::nullopt;
    }

    auto comps = g.components();

    // Output moves.
    for (const auto& [n, s] : comps) {
      if (!s->out.has_value()) continue;
      switch (s->out->kind()) {
        case Conn::Imp: {
          if (auto p = node(g, RuleInstance{Rule::ImpR, n, FormulaAddr{false, 0}, {}, {}, {}},
                            budget_left - 1, st))
            return p;
          break;
        }
        case Conn::Or: {
          for (Rule r : {Rule::OrR1, Rule::OrR2})
            if (auto p = node(g, RuleInstance{r, n, FormulaAddr{false, 0}, {}, {}, {}},
                              budget_left - 1, st))
              return p;
          break;
        }
        case Conn::Dia: {
          PropagationGraph pg = propagation_graph(g);
          for (const auto& u : reach(grammar, pg, n, s->out->character())) {
            if (auto p = node(g,
                              RuleInstance{Rule::DiaRProp, n, FormulaAddr{false, 0}, u,
                                           s->out->character(), {}},
                              budget_left - 1, st))
              return p;
          }
          break;
        }
        default:
          break;
      }
    }

    // impL on antecedent implications.
    for (const auto& [n, s] : comps) {
      for (size_t i = 0; i < s->ante.size(); ++i) {
        if (s->ante[i].kind() != Conn::Imp) continue;
        auto key2 = std::make_pair(n, s->ante[i].str());
        if (st.impl_count[key2] >= kImpLReselectCap) continue;
        BranchState st2 = st;
        st2.impl_count[key2]++;
        if (auto p = node(g, RuleInstance{Rule::ImpL, n, FormulaAddr{true, static_cast<int>(i)},
                                          {}, {}, {}},
                          budget_left - 1, st2))
          return p;
      }
    }

    failed_at[key] = std::max(failed_at[key], budget_left);
    return std::nullopt;
  }
};

}  // namespace

std::optional<Proof> prove(const NestedSequent& g, const AxiomSet& axioms,
                           const SearchBudget& budget) {
  std::string why;
  if (!g.wellformed(&why)) throw SequentError("prove: " + why);
  Searcher s(axioms, budget);
  s.initial_components = g.component_count();
  for (int d = 0; d <= budget.max_noninvertible; ++d) {
    if (auto p = s.dfs(g, d, BranchState{})) return p;
  }
  return std::nullopt;
}

std::optional<Proof> prove_formula(const Formula& f, const AxiomSet& axioms,
                                   const SearchBudget& budget) {
  NestedSequent g;
  g.name = Name{0};
  g.seq.out = f;
  return prove(g, axioms, budget);
}

}  // namespace igl
