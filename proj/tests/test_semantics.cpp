#include "igl/semantics.hpp"

#include <random>

#include "doctest.h"

using namespace igl;

namespace {

const Character a{"a", false};

Model single_world(bool p_true) {
  Model m;
  m.num_worlds = 1;
  m.leq = {1};
  m.rel[a] = {0};
  m.rel[a.converse()] = {0};
  m.valuation.resize(1);
  if (p_true) m.valuation[0].insert("p");
  return m;
}

}  // namespace

TEST_CASE("validate_model flags F3 violations") {
  Model m;
  m.num_worlds = 2;
  m.leq = {1, 0, 0, 1};
  m.rel[a] = {0, 1, 0, 0};            // w Ra u
  m.rel[a.converse()] = {0, 0, 0, 0};  // but not u Ra^ w
  m.valuation.resize(2);
  auto v = validate_model(m, AxiomSet{});
  bool f3 = false;
  for (const auto& viol : v)
    if (viol.condition == "F3") f3 = true;
  CHECK(f3);
}

TEST_CASE("validate_model flags monotonicity violations") {
  Model m;
  m.num_worlds = 2;
  m.leq = {1, 1, 0, 1};  // w <= u
  m.valuation.resize(2);
  m.valuation[0].insert("p");  // p at w but not at u
  auto v = validate_model(m, AxiomSet{});
  bool mono = false;
  for (const auto& viol : v)
    if (viol.condition == "monotonicity") mono = true;
  CHECK(mono);
}

TEST_CASE("validate_model flags seriality violations") {
  AxiomSet ax;
  ax.serial.insert(a);
  Model m;
  m.num_worlds = 1;
  m.leq = {1};
  m.rel[a] = {0};
  m.rel[a.converse()] = {0};
  m.valuation.resize(1);
  auto v = validate_model(m, ax);
  bool ser = false;
  for (const auto& viol : v)
    if (viol.condition == "seriality") ser = true;
  CHECK(ser);
}

TEST_CASE("validate_model checks path conditions") {
  AxiomSet ax;
  ax.paths.emplace_back(a, CharString{a, a});  // transitivity
  Model m;
  m.num_worlds = 3;
  m.leq = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  m.rel[a] = {0, 1, 0, 0, 0, 1, 0, 0, 0};  // 0->1->2 but not 0->2
  std::vector<uint8_t> conv(9, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m.rel[a][i * 3 + j]) conv[j * 3 + i] = 1;
  m.rel[a.converse()] = conv;
  m.valuation.resize(3);
  auto v = validate_model(m, ax);
  bool path = false;
  for (const auto& viol : v)
    if (viol.condition == "path") path = true;
  CHECK(path);
}

TEST_CASE("eval_formula base clauses") {
  Model m = single_world(true);
  CHECK(!eval_formula(m, 0, Formula::bottom()));
  CHECK(eval_formula(m, 0, Formula::atom("p")));
  CHECK(!eval_formula(m, 0, Formula::atom("q")));
  CHECK(eval_formula(m, 0, Formula::top()));
}

TEST_CASE("diamond finds a successor") {
  Model m;
  m.num_worlds = 2;
  m.leq = {1, 0, 0, 1};
  m.rel[a] = {0, 1, 0, 0};
  m.rel[a.converse()] = {0, 0, 1, 0};
  m.valuation.resize(2);
  m.valuation[1].insert("p");
  CHECK(validate_model(m, AxiomSet{}).empty());
  CHECK(eval_formula(m, 0, Formula::dia(a, Formula::atom("p"))));
  CHECK(!eval_formula(m, 1, Formula::dia(a, Formula::atom("p"))));
  // two-step box clause
  CHECK(eval_formula(m, 0, Formula::box(a, Formula::atom("p"))));
}

TEST_CASE("eval_sequent vacuous when edges are not realized") {
  Model m = single_world(false);
  m.rel[a] = {0};
  m.rel[a.converse()] = {0};
  NestedSequent g = parse_sequent("- => p, (a)[ q => - ]");
  // no world pair realizes the a-edge, so condition (1) fails
  Interpretation iota{{Name{0}, 0}, {Name{1}, 0}};
  CHECK(eval_sequent(m, iota, g));
}

TEST_CASE("eval_sequent on flat sequents") {
  Model m = single_world(false);
  NestedSequent valid = parse_sequent("p => p");
  CHECK(eval_sequent(m, {{Name{0}, 0}}, valid));
  NestedSequent refuted = parse_sequent("- => p");
  CHECK(!eval_sequent(m, {{Name{0}, 0}}, refuted));
  CHECK(!sequent_valid_on(m, refuted));
  CHECK(sequent_valid_on(m, valid));
}

TEST_CASE("countermodel for the excluded middle") {
  Formula em = parse_formula("p | (p -> false)");
  auto cm = find_countermodel(em, AxiomSet{}, 3);
  REQUIRE(cm.has_value());
  CHECK(cm->model.num_worlds == 2);
  CHECK(!eval_formula(cm->model, cm->world, em));
  CHECK(validate_model(cm->model, AxiomSet{}).empty());
}

TEST_CASE("countermodel for a non-theorem with modalities") {
  Formula f = parse_formula("<a>p -> p");
  auto cm = find_countermodel(f, AxiomSet{}, 3);
  REQUIRE(cm.has_value());
  CHECK(cm->model.num_worlds == 2);
  CHECK(!eval_formula(cm->model, cm->world, f));
}

TEST_CASE("no countermodel for the box distribution axiom") {
  Formula f = parse_formula("[a](p -> q) -> ([a]p -> [a]q)");
  CHECK(!find_countermodel(f, AxiomSet{}, 3).has_value());
}

TEST_CASE("general monotonicity on enumerated models") {
  std::mt19937 rng(5);
  std::vector<std::string> atoms{"p", "q"};
  AxiomSet ax;
  auto models = enumerate_models(ax, {a}, atoms, 2);
  REQUIRE(!models.empty());
  std::vector<Formula> formulas{
      parse_formula("p"),
      parse_formula("p -> q"),
      parse_formula("<a>p"),
      parse_formula("[a]p"),
      parse_formula("p & (q | p)"),
      parse_formula("[a](p -> q)"),
      parse_formula("<a^>p -> q"),
  };
  int checked = 0;
  for (const auto& m : models) {
    if (rng() % 7) continue;  // sample to keep the test quick
    for (const auto& f : formulas)
      for (int w = 0; w < m.num_worlds; ++w)
        for (int u = 0; u < m.num_worlds; ++u)
          if (m.le(w, u) && eval_formula(m, w, f)) {
            CHECK(eval_formula(m, u, f));
            checked++;
          }
  }
  CHECK(checked > 100);
}

TEST_CASE("edge-language soundness on validated models") {
  // with the transitivity production a -> aa, any aa-path implies an a-edge
  AxiomSet ax;
  ax.paths.emplace_back(a, CharString{a, a});
  Grammar g = build_grammar(ax);
  auto models = enumerate_models(ax, {a}, {}, 3);
  REQUIRE(!models.empty());
  CharString s{a, a};
  REQUIRE(derives_bounded(g, a, s, 2));
  for (const auto& m : models) {
    for (int w = 0; w < m.num_worlds; ++w)
      for (int v = 0; v < m.num_worlds; ++v)
        for (int u = 0; u < m.num_worlds; ++u)
          if (m.related(a, w, v) && m.related(a, v, u)) CHECK(m.related(a, w, u));
  }
}

TEST_CASE("enumerated models validate") {
  AxiomSet ax;
  ax.serial.insert(a);
  auto models = enumerate_models(ax, {a}, {"p"}, 2);
  REQUIRE(!models.empty());
  int probe = 0;
  for (const auto& m : models) {
    if (probe++ % 17) continue;
    CHECK(validate_model(m, ax).empty());
  }
}

TEST_CASE("enumeration refuses beyond its caps") {
  CHECK_THROWS_AS(enumerate_models(AxiomSet{}, {a}, {}, 5), EnumerationLimit);
  CHECK_THROWS_AS(
      enumerate_models(AxiomSet{}, {a, Character{"b", false}, Character{"c", false}}, {}, 2),
      EnumerationLimit);
}
