#include "igl/interpolate.hpp"

#include <functional>
#include <random>

#include "doctest.h"

using namespace igl;

namespace {

const Character a{"a", false};

SearchBudget budget() {
  SearchBudget b;
  b.max_noninvertible = 8;
  return b;
}

LyndonResult pipeline(const std::string& text, const AxiomSet& ax,
                      InterpolantMode mode = InterpolantMode::Meet) {
  Formula f = parse_formula(text);
  auto p = prove_formula(f, ax, budget());
  REQUIRE_MESSAGE(p.has_value(), "not provable: ", text);
  auto res = lyndon_interpolant(*p, ax, mode);
  auto ra = check_proof(res.proof_a_to_i, ax);
  if (!ra.ok) MESSAGE("A->I: ", ra.error->str());
  REQUIRE(ra.ok);
  auto rb = check_proof(res.proof_i_to_b, ax);
  if (!rb.ok) MESSAGE("I->B: ", rb.error->str());
  REQUIRE(rb.ok);
  CHECK(equivalent(res.proof_a_to_i.conclusion,
                   NestedSequent{Name{0}, GSequent{{}, Formula::imp(f.left(), res.interpolant)}, {}}));
  CHECK(equivalent(res.proof_i_to_b.conclusion,
                   NestedSequent{Name{0}, GSequent{{}, Formula::imp(res.interpolant, f.right())}, {}}));
  CHECK(res.signature_ok);
  return res;
}

Interpolant mk(std::initializer_list<std::pair<int, const char*>> items) {
  Interpolant i;
  for (auto& [n, f] : items) i.add(Name{static_cast<uint32_t>(n)}, parse_formula(f));
  return i;
}

}  // namespace

TEST_CASE("combine pairs formulas per the constraints") {
  std::vector<Name> names{Name{0}};
  Interpolant i = mk({{0, "c"}});
  Interpolant j = mk({{0, "d"}});
  auto imp = combine(CombineKind::Implies, i, j, names);
  CHECK(imp.pairs.size() == 1);
  CHECK(imp.pairs[0].second == parse_formula("c -> d"));

  auto disj = combine(CombineKind::Or, mk({{0, "c1"}, {0, "c2"}}), Interpolant{}, names);
  CHECK(disj.pairs.size() == 2);
  CHECK(disj.at(Name{0}) == std::vector<Formula>{parse_formula("c1"), parse_formula("c2")});
}

TEST_CASE("combine's empty-side defaults") {
  std::vector<Name> names{Name{0}};
  auto imp = combine(CombineKind::Implies, Interpolant{}, Interpolant{}, names);
  REQUIRE(imp.pairs.size() == 1);
  CHECK(imp.pairs[0].second == parse_formula("true -> false"));
  auto orr = combine(CombineKind::Or, Interpolant{}, Interpolant{}, names);
  CHECK(orr.pairs[0].second == Formula::bottom());
  auto andd = combine(CombineKind::And, Interpolant{}, Interpolant{}, names);
  CHECK(andd.pairs[0].second == Formula::top());
}

TEST_CASE("modal lift folds the pairs of one component") {
  Interpolant i = mk({{1, "c1"}, {1, "c2"}, {2, "d"}});
  auto lifted = modal_lift(LiftKind::Dia, a, i, Name{0}, Name{1});
  REQUIRE(lifted.pairs.size() == 2);
  CHECK(lifted.at(Name{0}) == std::vector<Formula>{parse_formula("<a>(c1 & c2)")});
  CHECK(lifted.at(Name{2}) == std::vector<Formula>{parse_formula("d")});

  // identity when the component has no pairs
  auto same = modal_lift(LiftKind::Box, a, i, Name{0}, Name{5});
  CHECK(same.pairs == i.pairs);

  // singleton fold collapses
  auto single = modal_lift(LiftKind::Box, a, mk({{1, "c"}}), Name{0}, Name{1});
  CHECK(single.at(Name{0}) == std::vector<Formula>{parse_formula("[a]c")});
}

TEST_CASE("swap_bias exchanges the parts and is an involution") {
  NestedSequent g = parse_sequent("p, q => r, (a)[ s => - ]");
  Biasing b;
  b[Name{0}] = {true, false};
  b[Name{1}] = {false};
  BiasedSequent bs = apply_biasing(g, b);
  CHECK(bs.seq.left == std::vector<Formula>{parse_formula("p")});
  CHECK(bs.seq.right == std::vector<Formula>{parse_formula("q")});
  BiasedSequent sw = swap_bias(bs);
  CHECK(sw.seq.left == std::vector<Formula>{parse_formula("q")});
  CHECK(sw.seq.right == std::vector<Formula>{parse_formula("p")});
  CHECK(sw.seq.out == bs.seq.out);
  CHECK(swap_bias(sw).forget().canonical_key(true) == bs.forget().canonical_key(true));
  // left part is right-empty, consequents stay in the right part
  CHECK(!bs.left_part().right_filled());
  CHECK(bs.right_part().right_filled());
}

TEST_CASE("derive assigns idI1 vs idI2 by the part of the closing atom") {
  AxiomSet ax;
  Formula f = parse_formula("p -> p");
  auto p = prove_formula(f, ax, budget());
  REQUIRE(p.has_value());
  const Proof& sub = p->premises[0];  // p => p

  Biasing left_bias;
  left_bias[Name{0}] = {true};
  auto ip1 = derive_interpolation_proof(sub, left_bias, ax);
  REQUIRE(ip1.interp.pairs.size() == 1);
  CHECK(ip1.interp.pairs[0].second == parse_formula("p"));
  CHECK(ip1.rule == "idI1");

  Biasing right_bias;
  right_bias[Name{0}] = {false};
  auto ip2 = derive_interpolation_proof(sub, right_bias, ax);
  CHECK(ip2.interp.pairs[0].second == Formula::top());
  CHECK(ip2.rule == "idI2");
}

TEST_CASE("derive on the conjunction-to-disjunction example") {
  AxiomSet ax;
  Formula f = parse_formula("(p & q) -> (q | r)");
  auto p = prove_formula(f, ax, budget());
  REQUIRE(p.has_value());
  Biasing bias;
  bias[Name{0}] = {true};
  auto ip = derive_interpolation_proof(p->premises[0], bias, ax);
  REQUIRE(ip.interp.pairs.size() == 1);
  CHECK(ip.interp.pairs[0].second == parse_formula("q"));
}

TEST_CASE("extraction produces checkable side proofs for the running example") {
  AxiomSet ax;
  auto res = pipeline("(p & q) -> (q | r)", ax);
  CHECK(res.interpolant == parse_formula("q"));
}

TEST_CASE("falsum interpolant") {
  AxiomSet ax;
  auto res = pipeline("false -> p", ax);
  CHECK(res.interpolant == Formula::bottom());
}

TEST_CASE("nested implication keeps the right part out of the interpolant") {
  AxiomSet ax;
  auto res = pipeline("p -> (q -> p)", ax);
  CHECK(res.interpolant == parse_formula("p"));
}

TEST_CASE("join and meet modes both verify") {
  AxiomSet ax;
  auto meet = pipeline("(p & q) -> (q | r)", ax, InterpolantMode::Meet);
  auto join = pipeline("(p & q) -> (q | r)", ax, InterpolantMode::Join);
  CHECK(meet.interpolant == join.interpolant);  // singleton root interpolant
}

TEST_CASE("interpolation through modal rules") {
  AxiomSet ax;
  pipeline("<a>(p & q) -> <a>p", ax);
  pipeline("[a](p -> q) -> ([a]p -> [a]q)", ax);
  pipeline("(<a>p | <a>q) -> <a>(p | q)", ax);
  pipeline("p -> [a]<a^>p", ax);
}

TEST_CASE("interpolation under a reflexivity axiom") {
  AxiomSet t;
  t.paths.emplace_back(a, CharString{});
  auto res = pipeline("[a]p -> p", t);
  CHECK(res.interpolant == parse_formula("p"));
}

TEST_CASE("interpolation under a transitivity axiom") {
  AxiomSet four;
  four.paths.emplace_back(a, CharString{a, a});
  auto res = pipeline("[a]p -> [a][a]p", four);
  CHECK(atomic_signature(res.interpolant, true) == std::set<std::string>{"p"});
}

TEST_CASE("signature algebra identities on random interpolant pairs") {
  std::mt19937 rng(31);
  std::vector<std::string> pool{"p", "q", "p -> q", "p & q", "<a>p", "[a]q", "p | q"};
  std::vector<Name> names{Name{0}, Name{1}};
  for (int t = 0; t < 80; ++t) {
    Interpolant i, j;
    int ni = rng() % 3, nj = rng() % 3;
    for (int k = 0; k < ni; ++k)
      i.add(names[rng() % 2], parse_formula(pool[rng() % pool.size()]));
    for (int k = 0; k < nj; ++k)
      j.add(names[rng() % 2], parse_formula(pool[rng() % pool.size()]));

    for (bool pos : {true, false}) {
      auto imp = combine(CombineKind::Implies, i, j, names);
      std::set<std::string> want = i.atoms(!pos);
      for (const auto& at : j.atoms(pos)) want.insert(at);
      CHECK(imp.atoms(pos) == want);

      for (auto kind : {CombineKind::Or, CombineKind::And}) {
        auto both = combine(kind, i, j, names);
        std::set<std::string> uni = i.atoms(pos);
        for (const auto& at : j.atoms(pos)) uni.insert(at);
        CHECK(both.atoms(pos) == uni);
      }

      auto lifted = modal_lift(LiftKind::Box, a, i, Name{0}, Name{1});
      CHECK(lifted.atoms(pos) == i.atoms(pos));
      auto dlifted = modal_lift(LiftKind::Dia, a, i, Name{0}, Name{1});
      CHECK(dlifted.atoms(pos) == i.atoms(pos));
    }
  }
}

TEST_CASE("interpolant names stay within the biased sequent") {
  AxiomSet ax;
  Formula f = parse_formula("<a>(p & q) -> <a>p");
  auto p = prove_formula(f, ax, budget());
  REQUIRE(p.has_value());
  Biasing bias;
  bias[Name{0}] = {true};
  std::function<void(const InterpolationProof&)> walk = [&](const InterpolationProof& node) {
    auto names = node.seq.names_preorder();
    for (const auto& [n, g] : node.interp.pairs) {
      (void)g;
      CHECK(std::find(names.begin(), names.end(), n) != names.end());
    }
    for (const auto& q : node.premises) walk(q);
  };
  walk(derive_interpolation_proof(p->premises[0], bias, ax));
}

TEST_CASE("extracted side proofs re-prove under search") {
  AxiomSet ax;
  Formula f = parse_formula("(p & q) -> (q | r)");
  auto p = prove_formula(f, ax, budget());
  REQUIRE(p.has_value());
  Biasing bias;
  bias[Name{0}] = {true};
  auto ip = derive_interpolation_proof(p->premises[0], bias, ax);
  auto claims = extract_side_proofs(ip, ax);
  for (const auto& [key, sp] : claims) {
    CHECK(check_proof(sp.left, ax).ok);
    CHECK(check_proof(sp.right, ax).ok);
    CHECK(prove(sp.left.conclusion, ax, budget()).has_value());
    CHECK(prove(sp.right.conclusion, ax, budget()).has_value());
  }
}

TEST_CASE("simplifier collapses units") {
  CHECK(simplify_interpolant(parse_formula("true & p")) == parse_formula("p"));
  CHECK(simplify_interpolant(parse_formula("p & true")) == parse_formula("p"));
  CHECK(simplify_interpolant(parse_formula("false | p")) == parse_formula("p"));
  CHECK(simplify_interpolant(parse_formula("(true & p) | false")) == parse_formula("p"));
  CHECK(simplify_interpolant(parse_formula("true")) == Formula::top());
}
