#include "igl/search.hpp"

#include <chrono>

#include "doctest.h"
#include "igl/semantics.hpp"

using namespace igl;

namespace {

const Character a{"a", false};

SearchBudget budget(int branch = 8) {
  SearchBudget b;
  b.max_noninvertible = branch;
  return b;
}

bool provable(const std::string& text, const AxiomSet& ax, int branch = 8) {
  auto p = prove_formula(parse_formula(text), ax, budget(branch));
  if (!p) return false;
  auto r = check_proof(*p, ax);
  if (!r.ok) {
    MESSAGE("checker rejected: ", r.error->str());
    return false;
  }
  return true;
}

AxiomSet t_axioms() {
  AxiomSet ax;
  ax.paths.emplace_back(a, CharString{});
  return ax;
}
AxiomSet four_axioms() {
  AxiomSet ax;
  ax.paths.emplace_back(a, CharString{a, a});
  return ax;
}
AxiomSet b_axioms() {
  AxiomSet ax;
  ax.paths.emplace_back(a, CharString{a.converse()});
  return ax;
}
AxiomSet five_axioms() {
  AxiomSet ax;
  ax.paths.emplace_back(a, CharString{a.converse(), a});
  return ax;
}
AxiomSet d_axioms() {
  AxiomSet ax;
  ax.serial.insert(a);
  return ax;
}

}  // namespace

TEST_CASE("base axioms are provable with the empty axiom set") {
  AxiomSet ax;
  CHECK(provable("[a](p -> q) -> ([a]p -> [a]q)", ax));                       // A1
  CHECK(provable("([a](p & q) -> [a]p & [a]q) & ([a]p & [a]q -> [a](p & q))", ax));  // A2
  CHECK(provable("(<a>(p | q) -> <a>p | <a>q) & (<a>p | <a>q -> <a>(p | q))", ax));  // A3
  CHECK(provable("[a](p -> q) -> (<a>p -> <a>q)", ax));                       // A4
  CHECK(provable("[a]p & <a>q -> <a>(p & q)", ax));                           // A5
  CHECK(provable("<a>false -> false", ax));                                   // A6
  CHECK(provable("(p -> [a]<a^>p) & (<a>[a^]p -> p)", ax));                   // A7
  CHECK(provable("(<a>p -> [a]q) -> [a](p -> q)", ax));                       // A8
  CHECK(provable("<a>(p -> q) -> ([a]p -> <a>q)", ax));                       // A9
}

TEST_CASE("modal cube instances under their matching axiom") {
  CHECK(provable("[a]p -> p", t_axioms()));
  CHECK(provable("p -> <a>p", t_axioms()));
  CHECK(provable("[a]p -> [a][a]p", four_axioms()));
  CHECK(provable("<a><a>p -> <a>p", four_axioms()));
  CHECK(provable("<a^>p -> <a>p", b_axioms()));
  CHECK(provable("[a]p -> [a^]p", b_axioms()));
  CHECK(provable("<a^><a>p -> <a>p", five_axioms()));
  CHECK(provable("[a]p -> [a^][a]p", five_axioms()));
  CHECK(provable("[a]p -> <a>p", d_axioms()));
}

TEST_CASE("cube instances fail without their axiom and admit countermodels") {
  AxiomSet empty;
  for (const char* goal : {"[a]p -> p", "[a]p -> [a][a]p", "<a^>p -> <a>p",
                           "<a^><a>p -> <a>p", "[a]p -> <a>p"}) {
    CHECK(!prove_formula(parse_formula(goal), empty, budget(5)).has_value());
    auto cm = find_countermodel(parse_formula(goal), empty, 3);
    REQUIRE(cm.has_value());
    CHECK(cm->model.num_worlds <= 3);
    CHECK(!eval_formula(cm->model, cm->world, parse_formula(goal)));
  }
}

TEST_CASE("intuitionistic flavor: no excluded middle, no double negation elimination") {
  AxiomSet ax;
  CHECK(!prove_formula(parse_formula("p | (p -> false)"), ax, budget(6)).has_value());
  CHECK(!prove_formula(parse_formula("((p -> false) -> false) -> p"), ax, budget(6)).has_value());
  CHECK(provable("p -> ((p -> false) -> false)", ax));
}

TEST_CASE("propositional staples") {
  AxiomSet ax;
  CHECK(provable("p -> (q -> p)", ax));
  CHECK(provable("(p -> q -> r) -> (p -> q) -> p -> r", ax));
  CHECK(provable("p & q -> q | r", ax));
  CHECK(provable("(p -> r) & (q -> r) -> (p | q -> r)", ax));
  CHECK(provable("false -> p", ax));
}

TEST_CASE("search works on sequent goals") {
  AxiomSet ax;
  NestedSequent g = parse_sequent("p, p -> q => q");
  auto p = prove(g, ax, budget());
  REQUIRE(p.has_value());
  CHECK(check_proof(*p, ax).ok);
  CHECK(equivalent(p->conclusion, g));
}

TEST_CASE("generalized identity is provable") {
  AxiomSet ax;
  std::vector<std::string> formulas{"p",           "p & q",     "p | q",           "p -> q",
                                    "<a>p",        "[a]p",      "<a>(p & q)",      "[a](p | q)",
                                    "<a^>[a]p",    "p -> <a>q", "(p -> q) -> q",   "[a][a]p"};
  for (const auto& f : formulas) {
    NestedSequent g;
    g.name = Name{0};
    Formula formula = parse_formula(f);
    g.seq.ante.push_back(Formula::atom("r"));
    g.seq.ante.push_back(formula);
    g.seq.out = formula;
    auto p = prove(g, ax, budget());
    REQUIRE_MESSAGE(p.has_value(), "identity failed for ", f);
    CHECK(check_proof(*p, ax).ok);
  }
}

TEST_CASE("search is deterministic") {
  AxiomSet ax = four_axioms();
  Formula f = parse_formula("[a]p -> [a][a]p");
  auto p1 = prove_formula(f, ax, budget());
  auto p2 = prove_formula(f, ax, budget());
  REQUIRE(p1.has_value());
  REQUIRE(p2.has_value());
  CHECK(p1->conclusion.canonical_key(true) == p2->conclusion.canonical_key(true));
  CHECK(p1->size() == p2->size());
  CHECK(p1->height() == p2->height());
}

TEST_CASE("success is monotone in the budget") {
  AxiomSet ax;
  std::vector<std::string> goals{"p -> (q -> p)", "p & q -> q | r",
                                 "<a>(p -> q) -> ([a]p -> <a>q)"};
  for (const auto& g : goals) {
    Formula f = parse_formula(g);
    int first_success = -1;
    for (int b = 0; b <= 6; ++b) {
      bool ok = prove_formula(f, ax, budget(b)).has_value();
      if (ok && first_success < 0) first_success = b;
      if (first_success >= 0) CHECK(ok);
    }
    CHECK(first_success >= 0);
  }
}

TEST_CASE("axiom corpus proofs are found quickly") {
  AxiomSet ax;
  auto t0 = std::chrono::steady_clock::now();
  CHECK(provable("(p -> [a]<a^>p) & (<a>[a^]p -> p)", ax, 12));
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(dt < 5.0);
}
