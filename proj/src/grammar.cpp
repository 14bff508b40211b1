#include "igl/grammar.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace igl {

Grammar::Grammar(std::vector<Production> prods) : prods_(std::move(prods)) {
  std::sort(prods_.begin(), prods_.end());
  prods_.erase(std::unique(prods_.begin(), prods_.end()), prods_.end());
}

bool Grammar::has_epsilon_production() const {
  for (const auto& p : prods_)
    if (p.rhs.empty()) return true;
  return false;
}

Grammar build_grammar(const AxiomSet& axioms) {
  std::vector<Production> prods;
  auto check = [&](const Character& c) {
    if (!axioms.alphabet.empty() && !axioms.alphabet.contains(c))
      throw AlphabetError("character '" + c.str() + "' outside the declared alphabet");
  };
  for (const auto& [lhs, rhs] : axioms.paths) {
    check(lhs);
    for (const auto& c : rhs) check(c);
    prods.push_back(Production{lhs, rhs});
    prods.push_back(Production{lhs.converse(), converse_string(rhs)});
  }
  return Grammar(std::move(prods));
}

bool derives_bounded(const Grammar& g, const Character& x, const CharString& s, int bound) {
  const bool can_shrink = g.has_epsilon_production();
  std::set<CharString> seen;
  std::deque<std::pair<CharString, int>> queue;  // (string, steps used)
  CharString start{x};
  queue.emplace_back(start, 0);
  seen.insert(start);
  while (!queue.empty()) {
    auto [cur, steps] = queue.front();
    queue.pop_front();
    if (cur == s) return true;
    if (steps >= bound) continue;
    int remaining = bound - steps;
    for (size_t i = 0; i < cur.size(); ++i) {
      for (const auto& p : g.productions()) {
        if (p.lhs != cur[i]) continue;
        CharString next;
        next.reserve(cur.size() - 1 + p.rhs.size());
        next.insert(next.end(), cur.begin(), cur.begin() + i);
        next.insert(next.end(), p.rhs.begin(), p.rhs.end());
        next.insert(next.end(), cur.begin() + i + 1, cur.end());
        // Each step removes at most one character, so strings longer than
        // |s| + remaining steps can never reach s.
        size_t cap = s.size() + (can_shrink ? static_cast<size_t>(remaining - 1) : 0);
        if (next.size() > cap) continue;
        if (seen.insert(next).second) queue.emplace_back(next, steps + 1);
      }
    }
  }
  return false;
}

namespace {

// CFL-reachability over the propagation graph. Grammar symbols:
//   terminal t(x)     — a single edge labeled x
//   nonterminal N(x)  — the language L(x)
// with N(x) -> t(x) for every character, N(x) -> N(y1)...N(yk) for every
// production x -> y1...yk (binarized), and N(x) -> epsilon kept and seeded
// as self-loops.
struct CflSolver {
  std::map<Character, int> term, nonterm;
  int num_symbols = 0;
  struct Unary {
    int from, to;
  };  // to -> from
  struct Binary {
    int left, right, to;
  };  // to -> left right
  std::vector<Unary> unary;
  std::vector<Binary> binary;
  std::vector<int> epsilon_nonterms;

  int intern_term(const Character& c) {
    auto [it, fresh] = term.emplace(c, num_symbols);
    if (fresh) num_symbols++;
    return it->second;
  }
  int intern_nonterm(const Character& c) {
    auto [it, fresh] = nonterm.emplace(c, num_symbols);
    if (fresh) num_symbols++;
    return it->second;
  }

  void build(const Grammar& g, const PropagationGraph& pg) {
    for (const auto& [u, x, v] : pg.edges) {
      int t = intern_term(x);
      int n = intern_nonterm(x);
      unary.push_back(Unary{t, n});
    }
    for (const auto& p : g.productions()) {
      int lhs = intern_nonterm(p.lhs);
      // terminal self-derivation even if the character never labels an edge
      unary.push_back(Unary{intern_term(p.lhs), lhs});
      if (p.rhs.empty()) {
        epsilon_nonterms.push_back(lhs);
        continue;
      }
      std::vector<int> rhs;
      for (const auto& c : p.rhs) {
        int n = intern_nonterm(c);
        unary.push_back(Unary{intern_term(c), n});
        rhs.push_back(n);
      }
      if (rhs.size() == 1) {
        unary.push_back(Unary{rhs[0], lhs});
      } else {
        int prev = rhs[0];
        for (size_t i = 1; i + 1 < rhs.size(); ++i) {
          int fresh = num_symbols++;
          binary.push_back(Binary{prev, rhs[i], fresh});
          // fresh nonterminals chain left to right
          std::swap(prev, fresh);
        }
        binary.push_back(Binary{prev, rhs.back(), lhs});
      }
    }
    std::sort(unary.begin(), unary.end(), [](const Unary& a, const Unary& b) {
      return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    unary.erase(std::unique(unary.begin(), unary.end(),
                            [](const Unary& a, const Unary& b) {
                              return a.from == b.from && a.to == b.to;
                            }),
                unary.end());
  }
};

}  // namespace

std::set<Name> reach(const Grammar& g, const PropagationGraph& pg, const Name& source,
                     const Character& x) {
  if (!pg.has_node(source)) throw SequentError("reach: unknown source " + source.str());

  // Node indexing.
  std::map<Name, int> node_ix;
  for (const auto& n : pg.nodes) node_ix.emplace(n, static_cast<int>(node_ix.size()));
  const int nn = static_cast<int>(node_ix.size());

  CflSolver solver;
  solver.build(g, pg);
  solver.intern_nonterm(x);  // ensure the query symbol exists
  const int ns = solver.num_symbols;

  // facts[sym] is an nn x nn adjacency matrix.
  std::vector<std::vector<uint8_t>> facts(ns, std::vector<uint8_t>(nn * nn, 0));
  std::deque<std::tuple<int, int, int>> worklist;  // (sym, u, v)
  auto add = [&](int sym, int u, int v) {
    uint8_t& cell = facts[sym][u * nn + v];
    if (!cell) {
      cell = 1;
      worklist.emplace_back(sym, u, v);
    }
  };

  for (const auto& [u, c, v] : pg.edges) {
    auto it = solver.term.find(c);
    if (it != solver.term.end()) add(it->second, node_ix[u], node_ix[v]);
  }
  for (int nt : solver.epsilon_nonterms)
    for (int u = 0; u < nn; ++u) add(nt, u, u);

  // Index productions by participating symbol.
  std::vector<std::vector<int>> unary_by_from(ns), bin_by_left(ns), bin_by_right(ns);
  for (size_t i = 0; i < solver.unary.size(); ++i)
    unary_by_from[solver.unary[i].from].push_back(static_cast<int>(i));
  for (size_t i = 0; i < solver.binary.size(); ++i) {
    bin_by_left[solver.binary[i].left].push_back(static_cast<int>(i));
    bin_by_right[solver.binary[i].right].push_back(static_cast<int>(i));
  }

  while (!worklist.empty()) {
    auto [sym, u, v] = worklist.front();
    worklist.pop_front();
    for (int i : unary_by_from[sym]) add(solver.unary[i].to, u, v);
    for (int i : bin_by_left[sym]) {
      const auto& b = solver.binary[i];
      for (int w = 0; w < nn; ++w)
        if (facts[b.right][v * nn + w]) add(b.to, u, w);
    }
    for (int i : bin_by_right[sym]) {
      const auto& b = solver.binary[i];
      for (int w = 0; w < nn; ++w)
        if (facts[b.left][w * nn + u]) add(b.to, w, v);
    }
  }

  std::set<Name> out;
  int q = solver.nonterm.at(x);
  int src = node_ix.at(source);
  for (const auto& [n, ix] : node_ix)
    if (facts[q][src * nn + ix]) out.insert(n);
  return out;
}

}  // namespace igl
