#include "igl/semantics.hpp"

#include <algorithm>
#include <functional>

namespace igl {

bool Model::related(const Character& x, int a, int b) const {
  auto it = rel.find(x);
  if (it == rel.end()) return false;
  return it->second[a * num_worlds + b] != 0;
}

std::vector<Violation> validate_model(const Model& m, const AxiomSet& axioms) {
  std::vector<Violation> out;
  const int n = m.num_worlds;
  auto world = [](int w) { return std::to_string(w); };

  for (int a = 0; a < n; ++a)
    if (!m.le(a, a)) out.push_back({"preorder", "not reflexive at " + world(a)});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m.le(a, b) && m.le(b, c) && !m.le(a, c))
          out.push_back({"preorder", "not transitive at " + world(a) + "," + world(b) + "," + world(c)});

  for (const auto& [x, r] : m.rel) {
    (void)r;
    // F3: w Rx u iff u Rx~ w
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (m.related(x, a, b) != m.related(x.converse(), b, a)) {
          out.push_back({"F3", x.str() + " vs " + x.converse().str() + " at " + world(a) + "," + world(b)});
        }
    // F1: w <= w' and w Rx v imply exists v' with w' Rx v' and v <= v'
    for (int w = 0; w < n; ++w)
      for (int w2 = 0; w2 < n; ++w2) {
        if (!m.le(w, w2)) continue;
        for (int v = 0; v < n; ++v) {
          if (!m.related(x, w, v)) continue;
          bool ok = false;
          for (int v2 = 0; v2 < n && !ok; ++v2)
            if (m.related(x, w2, v2) && m.le(v, v2)) ok = true;
          if (!ok)
            out.push_back({"F1", "for " + x.str() + " at " + world(w) + "<=" + world(w2) + ", " +
                                     world(w) + "R" + world(v)});
        }
      }
    // F2: w Rx v and v <= v' imply exists w' with w <= w' and w' Rx v'
    for (int w = 0; w < n; ++w)
      for (int v = 0; v < n; ++v) {
        if (!m.related(x, w, v)) continue;
        for (int v2 = 0; v2 < n; ++v2) {
          if (!m.le(v, v2)) continue;
          bool ok = false;
          for (int w2 = 0; w2 < n && !ok; ++w2)
            if (m.le(w, w2) && m.related(x, w2, v2)) ok = true;
          if (!ok)
            out.push_back({"F2", "for " + x.str() + " at " + world(w) + "R" + world(v) + "<=" + world(v2)});
        }
      }
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (m.le(a, b))
        for (const auto& atom : m.valuation[a])
          if (!m.valuation[b].count(atom))
            out.push_back({"monotonicity", atom + " true at " + world(a) + " but not at " + world(b)});

  for (const auto& x : axioms.serial) {
    for (int w = 0; w < n; ++w) {
      bool ok = false;
      for (int u = 0; u < n && !ok; ++u)
        if (m.related(x, w, u)) ok = true;
      if (!ok) out.push_back({"seriality", "no " + x.str() + "-successor of " + world(w)});
    }
  }

  // R_{x1} o ... o R_{xk} subset of R_x for each path axiom (x, x1...xk),
  // and the converse-closed variant.
  auto check_path = [&](const Character& x, const CharString& s) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a) pairs.emplace_back(a, a);
    for (const auto& y : s) {
      std::vector<std::pair<int, int>> next;
      for (auto [a, b] : pairs)
        for (int c = 0; c < n; ++c)
          if (m.related(y, b, c)) next.emplace_back(a, c);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      pairs = std::move(next);
    }
    for (auto [a, b] : pairs)
      if (!m.related(x, a, b))
        out.push_back({"path", x.str() + " <- " + charstring_str(s) + " fails at " + world(a) + "," + world(b)});
  };
  for (const auto& [x, s] : axioms.paths) {
    check_path(x, s);
    check_path(x.converse(), converse_string(s));
  }

  return out;
}

bool eval_formula(const Model& m, int world, const Formula& a) {
  const int n = m.num_worlds;
  switch (a.kind()) {
    case Conn::Atom:
      return m.valuation[world].count(a.atom_name()) > 0;
    case Conn::Bottom:
      return false;
    case Conn::Or:
      return eval_formula(m, world, a.left()) || eval_formula(m, world, a.right());
    case Conn::And:
      return eval_formula(m, world, a.left()) && eval_formula(m, world, a.right());
    case Conn::Imp:
      for (int u = 0; u < n; ++u)
        if (m.le(world, u) && eval_formula(m, u, a.left()) && !eval_formula(m, u, a.right()))
          return false;
      return true;
    case Conn::Dia:
      for (int u = 0; u < n; ++u)
        if (m.related(a.character(), world, u) && eval_formula(m, u, a.inner())) return true;
      return false;
    case Conn::Box:
      for (int u = 0; u < n; ++u) {
        if (!m.le(world, u)) continue;
        for (int v = 0; v < n; ++v)
          if (m.related(a.character(), u, v) && !eval_formula(m, v, a.inner())) return false;
      }
      return true;
  }
  return false;
}

static bool edges_realized(const Model& m, const Interpretation& iota, const NestedSequent& g) {
  for (const auto& [x, c] : g.children) {
    if (!m.related(x, iota.at(g.name), iota.at(c.name))) return false;
    if (!edges_realized(m, iota, c)) return false;
  }
  return true;
}

bool eval_sequent(const Model& m, const Interpretation& iota, const NestedSequent& g) {
  // (1) every edge of tr(g) realized by the interpretation
  if (!edges_realized(m, iota, g)) return true;
  // (2) some component's implication holds at its world
  for (const auto& [n, s] : g.components()) {
    Formula ante = Formula::top();
    bool first = true;
    for (const auto& f : s->ante) {
      ante = first ? f : Formula::conj(ante, f);
      first = false;
    }
    Formula cons = s->out ? *s->out : Formula::bottom();
    if (eval_formula(m, iota.at(n), Formula::imp(ante, cons))) return true;
  }
  return false;
}

bool sequent_valid_on(const Model& m, const NestedSequent& g) {
  std::vector<Name> names;
  for (const auto& [n, s] : g.components()) names.push_back(n);
  const int k = static_cast<int>(names.size());
  std::vector<int> assign(k, 0);
  while (true) {
    Interpretation iota;
    for (int i = 0; i < k; ++i) iota[names[i]] = assign[i];
    if (!eval_sequent(m, iota, g)) return false;
    int i = 0;
    for (; i < k; ++i) {
      if (++assign[i] < m.num_worlds) break;
      assign[i] = 0;
    }
    if (i == k) return true;
  }
}

namespace {

// All pre-orders on n worlds (reflexive-transitive closures of arbitrary
// relations, deduplicated).
std::vector<std::vector<uint8_t>> enumerate_preorders(int n) {
  std::vector<std::pair<int, int>> offdiag;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) offdiag.emplace_back(a, b);
  std::set<std::vector<uint8_t>> seen;
  std::vector<std::vector<uint8_t>> out;
  for (uint32_t bits = 0; bits < (1u << offdiag.size()); ++bits) {
    std::vector<uint8_t> leq(n * n, 0);
    for (int a = 0; a < n; ++a) leq[a * n + a] = 1;
    for (size_t i = 0; i < offdiag.size(); ++i)
      if (bits & (1u << i)) leq[offdiag[i].first * n + offdiag[i].second] = 1;
    // transitive closure
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (leq[a * n + k] && leq[k * n + b]) leq[a * n + b] = 1;
    if (seen.insert(leq).second) out.push_back(std::move(leq));
  }
  return out;
}

bool f1_f2_hold(const std::vector<uint8_t>& leq, const std::vector<uint8_t>& r, int n) {
  // F1/F2 for the forward relation r and its converse.
  auto le = [&](int a, int b) { return leq[a * n + b] != 0; };
  auto rel = [&](int a, int b) { return r[a * n + b] != 0; };
  for (int w = 0; w < n; ++w)
    for (int w2 = 0; w2 < n; ++w2) {
      if (!le(w, w2)) continue;
      for (int v = 0; v < n; ++v) {
        if (rel(w, v)) {  // F1 forward
          bool ok = false;
          for (int v2 = 0; v2 < n && !ok; ++v2)
            if (rel(w2, v2) && le(v, v2)) ok = true;
          if (!ok) return false;
        }
        if (rel(v, w)) {  // F1 for the converse relation
          bool ok = false;
          for (int v2 = 0; v2 < n && !ok; ++v2)
            if (rel(v2, w2) && le(v, v2)) ok = true;
          if (!ok) return false;
        }
      }
    }
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v) {
      for (int v2 = 0; v2 < n; ++v2) {
        if (rel(w, v) && le(v, v2)) {  // F2 forward
          bool ok = false;
          for (int w2 = 0; w2 < n && !ok; ++w2)
            if (le(w, w2) && rel(w2, v2)) ok = true;
          if (!ok) return false;
        }
        if (rel(v, w) && le(v, v2)) {  // F2 for the converse relation
          bool ok = false;
          for (int w2 = 0; w2 < n && !ok; ++w2)
            if (le(w, w2) && rel(v2, w2)) ok = true;
          if (!ok) return false;
        }
      }
    }
  return true;
}

}  // namespace

std::vector<Model> enumerate_models(const AxiomSet& axioms,
                                    const std::vector<Character>& forward_chars,
                                    const std::vector<std::string>& atoms, int num_worlds) {
  if (num_worlds > 4) throw EnumerationLimit("enumeration capped at 4 worlds");
  if (forward_chars.size() > 2) throw EnumerationLimit("enumeration capped at 2 forward characters");
  const int n = num_worlds;
  const int cells = n * n;

  auto preorders = enumerate_preorders(n);

  std::vector<Model> out;
  for (const auto& leq : preorders) {
    // Candidate forward relations, F1/F2-filtered against this pre-order.
    std::vector<std::vector<uint8_t>> cands;
    for (uint32_t bits = 0; bits < (1u << cells); ++bits) {
      std::vector<uint8_t> r(cells, 0);
      for (int i = 0; i < cells; ++i)
        if (bits & (1u << i)) r[i] = 1;
      if (f1_f2_hold(leq, r, n)) cands.push_back(std::move(r));
    }

    // Monotone valuations.
    std::vector<std::vector<std::set<std::string>>> vals;
    {
      const size_t slots = atoms.size() * static_cast<size_t>(n);
      for (uint64_t bits = 0; bits < (1ull << slots); ++bits) {
        std::vector<std::set<std::string>> v(n);
        size_t ix = 0;
        for (size_t a = 0; a < atoms.size(); ++a)
          for (int w = 0; w < n; ++w, ++ix)
            if (bits & (1ull << ix)) v[w].insert(atoms[a]);
        bool mono = true;
        for (int a = 0; a < n && mono; ++a)
          for (int b = 0; b < n && mono; ++b)
            if (leq[a * n + b])
              for (const auto& at : v[a])
                if (!v[b].count(at)) {
                  mono = false;
                  break;
                }
        if (mono) vals.push_back(std::move(v));
      }
    }

    // Combine relation choices per forward character.
    std::vector<size_t> pick(forward_chars.size(), 0);
    while (true) {
      Model m;
      m.num_worlds = n;
      m.leq = leq;
      for (size_t i = 0; i < forward_chars.size(); ++i) {
        const auto& r = cands[pick[i]];
        m.rel[forward_chars[i]] = r;
        std::vector<uint8_t> conv(cells, 0);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (r[a * n + b]) conv[b * n + a] = 1;
        m.rel[forward_chars[i].converse()] = std::move(conv);
      }

      // Axiom frame conditions.
      bool ok = true;
      for (const auto& x : axioms.serial) {
        for (int w = 0; w < n && ok; ++w) {
          bool has = false;
          for (int u = 0; u < n && !has; ++u)
            if (m.related(x, w, u)) has = true;
          ok = has;
        }
        if (!ok) break;
      }
      if (ok) {
        for (const auto& [x, s] : axioms.paths) {
          std::vector<std::pair<int, int>> pairs;
          for (int a = 0; a < n; ++a) pairs.emplace_back(a, a);
          for (const auto& y : s) {
            std::vector<std::pair<int, int>> next;
            for (auto [a, b] : pairs)
              for (int c = 0; c < n; ++c)
                if (m.related(y, b, c)) next.emplace_back(a, c);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            pairs = std::move(next);
          }
          for (auto [a, b] : pairs)
            if (!m.related(x, a, b)) {
              ok = false;
              break;
            }
          if (!ok) break;
        }
      }
      if (ok) {
        for (const auto& v : vals) {
          Model mv = m;
          mv.valuation = v;
          out.push_back(std::move(mv));
        }
      }

      size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < cands.size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  }
  return out;
}

namespace {

void collect_formula_atoms(const Formula& f, std::set<std::string>& atoms,
                           std::set<Character>& chars) {
  switch (f.kind()) {
    case Conn::Atom:
      atoms.insert(f.atom_name());
      return;
    case Conn::Bottom:
      return;
    case Conn::Or:
    case Conn::And:
    case Conn::Imp:
      collect_formula_atoms(f.left(), atoms, chars);
      collect_formula_atoms(f.right(), atoms, chars);
      return;
    case Conn::Dia:
    case Conn::Box: {
      Character c = f.character();
      chars.insert(c.backward ? c.converse() : c);
      collect_formula_atoms(f.inner(), atoms, chars);
      return;
    }
  }
}

}  // namespace

std::optional<Countermodel> find_countermodel(const Formula& a, const AxiomSet& axioms,
                                              int max_worlds) {
  std::set<std::string> atom_set;
  std::set<Character> char_set;
  collect_formula_atoms(a, atom_set, char_set);
  for (const auto& x : axioms.serial) char_set.insert(x.backward ? x.converse() : x);
  for (const auto& [x, s] : axioms.paths) {
    char_set.insert(x.backward ? x.converse() : x);
    for (const auto& y : s) char_set.insert(y.backward ? y.converse() : y);
  }
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  std::vector<Character> chars(char_set.begin(), char_set.end());

  for (int n = 1; n <= max_worlds; ++n) {
    for (const auto& m : enumerate_models(axioms, chars, atoms, n)) {
      for (int w = 0; w < n; ++w)
        if (!eval_formula(m, w, a)) return Countermodel{m, w};
    }
  }
  return std::nullopt;
}

}  // namespace igl
