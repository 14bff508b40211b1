#include "igl/transform.hpp"

#include <random>

#include "doctest.h"
#include "igl/search.hpp"

using namespace igl;

namespace {

const Character a{"a", false};

SearchBudget budget() {
  SearchBudget b;
  b.max_noninvertible = 6;
  return b;
}

Proof must_prove(const std::string& text, const AxiomSet& ax) {
  NestedSequent g = parse_sequent(text);
  auto p = prove(g, ax, budget());
  REQUIRE_MESSAGE(p.has_value(), "could not prove ", text);
  REQUIRE(check_proof(*p, ax).ok);
  return *p;
}

void check_hp(const Proof& in, const Proof& out, const AxiomSet& ax) {
  auto r = check_proof(out, ax);
  if (!r.ok) MESSAGE(r.error->str());
  REQUIRE(r.ok);
  CHECK(out.height() <= in.height());
}

// a small deterministic corpus of provable sequents, some nested, some with
// duplicates and falsum for the structural rules
std::vector<std::pair<std::string, AxiomSet>> corpus() {
  AxiomSet empty;
  AxiomSet t;
  t.paths.emplace_back(a, CharString{});
  AxiomSet four;
  four.paths.emplace_back(a, CharString{a, a});
  AxiomSet d;
  d.serial.insert(a);
  std::vector<std::pair<std::string, AxiomSet>> out;
  for (const char* s : {
           "p => p",
           "p, q => p",
           "p & q => q | r",
           "p -> q, p => q",
           "- => p -> q -> p",
           "<a>(p & q) => <a>p",
           "[a]p, <a>q => <a>(p & q)",
           "- => [a](p -> p)",
           "p | q, p -> r, q -> r => r",
           "- => <a>p -> <a>(p | q)",
           "[a](p -> q) => [a]p -> [a]q",
           "false => q",
           "p, false | p => p",
           "- => -, (a)[ p => p ]",
           "q => -, (a)[ p => p ], (a)[ false => - ]",
       })
    out.emplace_back(s, empty);
  out.emplace_back("[a]p => p", t);
  out.emplace_back("[a]p => [a][a]p", four);
  out.emplace_back("[a]p => <a>p", d);
  out.emplace_back("<a><a>p => <a>p", four);
  return out;
}

}  // namespace

TEST_CASE("wL adds antecedent formulas without changing height") {
  AxiomSet ax;
  Proof p = must_prove("p => p", ax);
  Proof out = weaken_left(p, Name{0}, {Formula::atom("r")}, ax);
  check_hp(p, out, ax);
  CHECK(equivalent(out.conclusion, parse_sequent("p, r => p")));
}

TEST_CASE("nec wraps a proof in a fresh modal context") {
  AxiomSet ax;
  Proof p = must_prove("p & q => q", ax);
  Proof out = necessitate(p, a, ax);
  check_hp(p, out, ax);
  REQUIRE(out.conclusion.children.size() == 1);
  CHECK(out.conclusion.seq.ante.empty());
  CHECK(!out.conclusion.seq.out.has_value());
  CHECK(equivalent(out.conclusion.children[0].second, p.conclusion));
}

TEST_CASE("wR fills a right-empty proof") {
  AxiomSet ax;
  Proof p = must_prove("false => -", ax);
  Proof out = weaken_right(p, Name{0}, Formula::atom("z"), ax);
  check_hp(p, out, ax);
  CHECK(equivalent(out.conclusion, parse_sequent("false => z")));

  // a non-leaf right-empty proof
  Proof q = must_prove("p, p -> false => -", ax);
  Proof out2 = weaken_right(q, Name{0}, Formula::atom("z"), ax);
  check_hp(q, out2, ax);
  CHECK(equivalent(out2.conclusion, parse_sequent("p, p -> false => z")));
}

TEST_CASE("botR deletes a falsum output") {
  AxiomSet ax;
  Proof p = must_prove("p, p -> false => false", ax);
  Proof out = bot_right(p, ax);
  check_hp(p, out, ax);
  CHECK(equivalent(out.conclusion, parse_sequent("p, p -> false => -")));
}

TEST_CASE("ew adds an empty child anywhere") {
  AxiomSet ax;
  Proof p = must_prove("[a](p -> q) => [a]p -> [a]q", ax);
  Proof out = external_weaken(p, Name{0}, a, ax);
  check_hp(p, out, ax);
  CHECK(out.conclusion.children.size() == p.conclusion.children.size() + 1);
}

TEST_CASE("cL contracts duplicated antecedent formulas") {
  AxiomSet ax;
  for (const char* text : {"p, p => p", "p & q, p & q => q", "p | q, p | q, r => r",
                           "<a>p, <a>p => <a>(p | q)", "p -> q, p -> q, p => q"}) {
    Proof base = must_prove(text, ax);
    const auto& ante = base.conclusion.seq.ante;
    int i = -1, j = -1;
    for (size_t s = 0; s < ante.size() && i < 0; ++s)
      for (size_t t = s + 1; t < ante.size(); ++t)
        if (ante[s] == ante[t]) {
          i = static_cast<int>(s);
          j = static_cast<int>(t);
          break;
        }
    REQUIRE(i >= 0);
    Proof out = contract_left(base, Name{0}, i, j, ax);
    check_hp(base, out, ax);
    CHECK(out.conclusion.seq.ante.size() == ante.size() - 1);
  }
}

TEST_CASE("cL with a propagated principal") {
  AxiomSet t;
  t.paths.emplace_back(a, CharString{});
  Proof base = must_prove("[a]p, [a]p => p", t);
  Proof out = contract_left(base, Name{0}, 0, 1, t);
  check_hp(base, out, t);
  CHECK(equivalent(out.conclusion, parse_sequent("[a]p => p")));
}

TEST_CASE("ec on duplicated right-empty children") {
  AxiomSet ax;
  Proof base = must_prove("<a>false => p, (a)[ false => - ], (a)[ false => - ]", ax);
  Proof out = external_contract(base, Name{0}, 0, 1, ax);
  check_hp(base, out, ax);
  CHECK(out.conclusion.children.size() == 1);
}

TEST_CASE("ec after duplicating work inside one copy") {
  AxiomSet ax;
  // proof must work inside the children: p & q decomposed in each copy
  Proof base = must_prove("[a]false => r, (a)[ p & false => - ], (a)[ p & false => - ]", ax);
  Proof out = external_contract(base, Name{0}, 0, 1, ax);
  check_hp(base, out, ax);
  CHECK(equivalent(out.conclusion, parse_sequent("[a]false => r, (a)[ p & false => - ]")));
}

TEST_CASE("sft moves a child along a reflexive propagation path") {
  AxiomSet ax;
  // two a-children: move the second into the first along the edge (w,a,w1)
  Proof base = must_prove("- => -, (a)[ p => p ], (a)[ q, false => - ]", ax);
  Proof out = shift(base, Name{0}, 1, Name{1}, ax);
  check_hp(base, out, ax);
  CHECK(equivalent(out.conclusion, parse_sequent("- => -, (a)[ p, q, false => p ]")));
}

TEST_CASE("sft respects the side condition") {
  AxiomSet ax;
  Proof base = must_prove("- => -, (a)[ p => p ], (b)[ false => - ]", ax);
  // no string in L(b) labels a path from w0 to w1
  CHECK_THROWS_AS(shift(base, Name{0}, 1, Name{1}, ax), TransformError);
}

TEST_CASE("invert andL") {
  AxiomSet ax;
  Proof base = must_prove("p & q => p", ax);
  RuleInstance inst{Rule::AndL, Name{0}, FormulaAddr{true, 0}, {}, {}, {}};
  Proof out = invert_rule(inst, 0, base, ax);
  check_hp(base, out, ax);
  CHECK(equivalent(out.conclusion, parse_sequent("p, q => p")));
}

TEST_CASE("invert orL on a symmetric premise") {
  AxiomSet ax;
  Proof base = must_prove("p | p => p", ax);
  RuleInstance inst{Rule::OrL, Name{0}, FormulaAddr{true, 0}, {}, {}, {}};
  Proof out = invert_rule(inst, 0, base, ax);
  check_hp(base, out, ax);
  CHECK(equivalent(out.conclusion, parse_sequent("p => p")));
}

TEST_CASE("invert diaL") {
  AxiomSet ax;
  Proof base = must_prove("<a>p => <a>(p | q)", ax);
  RuleInstance inst{Rule::DiaL, Name{0}, FormulaAddr{true, 0}, {}, a, {}};
  Proof out = invert_rule(inst, 0, base, ax);
  check_hp(base, out, ax);
  CHECK(equivalent(out.conclusion, parse_sequent("- => <a>(p | q), (a)[ p => - ]")));
}

TEST_CASE("invert boxLprop is left weakening on the premise shape") {
  AxiomSet t;
  t.paths.emplace_back(a, CharString{});
  Proof base = must_prove("[a]p => p", t);
  RuleInstance inst{Rule::BoxLProp, Name{0}, FormulaAddr{true, 0}, Name{0}, a, {}};
  Proof out = invert_rule(inst, 0, base, t);
  check_hp(base, out, t);
  CHECK(equivalent(out.conclusion, parse_sequent("[a]p, p => p")));
}

TEST_CASE("invert dX adds an empty child") {
  AxiomSet d;
  d.serial.insert(a);
  Proof base = must_prove("[a]p => <a>p", d);
  RuleInstance inst{Rule::DX, Name{0}, {}, {}, a, {}};
  Proof out = invert_rule(inst, 0, base, d);
  check_hp(base, out, d);
  CHECK(out.conclusion.children.size() == 1);
}

TEST_CASE("admissibility corpus: all transformations preserve checkability and height") {
  std::mt19937 rng(97);
  int transformed = 0;
  for (const auto& [text, ax] : corpus()) {
    Proof base = must_prove(text, ax);

    // wL with a couple of formulas at a random component
    auto comps = base.conclusion.components();
    Name at = comps[rng() % comps.size()].first;
    Proof wl = weaken_left(base, at, {Formula::atom("zz"), parse_formula("zz -> q")}, ax);
    check_hp(base, wl, ax);
    transformed++;

    // ew everywhere
    Proof ew = external_weaken(base, at, a, ax);
    check_hp(base, ew, ax);
    transformed++;

    // nec
    Proof nec = necessitate(base, a, ax);
    check_hp(base, nec, ax);
    transformed++;

    // cL: duplicate a random antecedent formula by weakening, then contract
    if (!base.conclusion.find(at)->seq.ante.empty()) {
      const auto& ante = base.conclusion.find(at)->seq.ante;
      Formula f = ante[rng() % ante.size()];
      Proof dup = weaken_left(base, at, {f}, ax);
      int i = -1, j = -1;
      const auto& dante = dup.conclusion.find(at)->seq.ante;
      for (size_t s = 0; s < dante.size(); ++s)
        if (dante[s] == f) {
          if (i < 0)
            i = static_cast<int>(s);
          else if (j < 0)
            j = static_cast<int>(s);
        }
      Proof cl = contract_left(dup, at, i, j, ax);
      check_hp(dup, cl, ax);
      CHECK(equivalent(cl.conclusion, base.conclusion));
      transformed++;
    }

    // ec: duplicate a child by ew twice... instead, add two empty children and contract
    Proof ew2 = external_weaken(ew, at, a, ax);
    const auto& kids = ew2.conclusion.find(at)->children;
    int ca = -1, cb = -1;
    for (size_t s = 0; s < kids.size(); ++s) {
      if (kids[s].first == a && kids[s].second.seq.ante.empty() &&
          kids[s].second.children.empty() && !kids[s].second.seq.out) {
        if (ca < 0)
          ca = static_cast<int>(s);
        else if (cb < 0)
          cb = static_cast<int>(s);
      }
    }
    REQUIRE(ca >= 0);
    REQUIRE(cb >= 0);
    Proof ec = external_contract(ew2, at, ca, cb, ax);
    check_hp(ew2, ec, ax);
    transformed++;

    // wR on right-empty proofs
    if (!base.conclusion.right_filled()) {
      Proof wr = weaken_right(base, at, Formula::atom("zz"), ax);
      check_hp(base, wr, ax);
      transformed++;
    }
  }
  CHECK(transformed >= 50);
}

TEST_CASE("cut on a flat example") {
  AxiomSet ax;
  Proof left = must_prove("p & q => p", ax);
  Proof right = must_prove("p & q, p => p | r", ax);
  Proof out = eliminate_cut(left, right, Name{0}, Formula::atom("p"), ax);
  auto r = check_proof(out, ax);
  if (!r.ok) MESSAGE(r.error->str());
  REQUIRE(r.ok);
  CHECK(equivalent(out.conclusion, parse_sequent("p & q => p | r")));
}

TEST_CASE("cut where the left premise is an id instance") {
  AxiomSet ax;
  Proof left = must_prove("p & q, p => p", ax);
  REQUIRE(left.inst.rule == Rule::Id);
  Proof right = must_prove("p & q, p, p => q | p", ax);
  Proof out = eliminate_cut(left, right, Name{0}, Formula::atom("p"), ax);
  REQUIRE(check_proof(out, ax).ok);
  CHECK(equivalent(out.conclusion, parse_sequent("p & q, p => q | p")));
}

TEST_CASE("cut where the right premise closes by botL on another falsum") {
  AxiomSet ax;
  Proof left = must_prove("false, r => p", ax);
  Proof right = must_prove("false, r, p => q", ax);
  Proof out = eliminate_cut(left, right, Name{0}, Formula::atom("p"), ax);
  REQUIRE(check_proof(out, ax).ok);
  CHECK(equivalent(out.conclusion, parse_sequent("false, r => q")));
  CHECK(out.inst.rule == Rule::BotL);
  CHECK(out.premises.empty());
}

TEST_CASE("cut on an implication with principal reductions on both sides") {
  AxiomSet ax;
  Proof left = must_prove("q, p => p -> q", ax);
  Proof right = must_prove("q, p, p -> q => q", ax);
  Proof out = eliminate_cut(left, right, Name{0}, parse_formula("p -> q"), ax);
  REQUIRE(check_proof(out, ax).ok);
  CHECK(equivalent(out.conclusion, parse_sequent("q, p => q")));
}

TEST_CASE("cut on a boxed formula uses the shift rule") {
  AxiomSet t;
  t.paths.emplace_back(a, CharString{});
  Proof left = must_prove("[a]p, q => [a]p", t);
  Proof right = must_prove("[a]p, q, [a]p => p & q", t);
  cut_stats().reset();
  Proof out = eliminate_cut(left, right, Name{0}, parse_formula("[a]p"), t);
  REQUIRE(check_proof(out, t).ok);
  CHECK(equivalent(out.conclusion, parse_sequent("[a]p, q => p & q")));
  CHECK(cut_stats().recursive_cuts >= 1);
}

TEST_CASE("cut on a diamond formula") {
  AxiomSet ax;
  Proof left = must_prove("<a>(p & q) => <a>p", ax);
  Proof right = must_prove("<a>(p & q), <a>p => <a>(p | r)", ax);
  Proof out = eliminate_cut(left, right, Name{0}, parse_formula("<a>p"), ax);
  REQUIRE(check_proof(out, ax).ok);
  CHECK(equivalent(out.conclusion, parse_sequent("<a>(p & q) => <a>(p | r)")));
}

TEST_CASE("cut corpus: glued pairs eliminate, verify, and respect the measure") {
  AxiomSet ax;
  struct Item {
    const char* lhs;    // proves  lctx => A
    const char* rhs;    // proves  rctx, A => D
    const char* cutf;
    const char* conclusion;
  };
  std::vector<Item> items{
      {"p & q => q", "q, r => r & q", "q", "p & q, r => r & q"},
      {"p => p | q", "p | q, p -> s, q -> s => s", "p | q", "p, p -> s, q -> s => s"},
      {"<a>(p & q) => <a>p", "<a>p => <a>(p | r)", "<a>p", "<a>(p & q) => <a>(p | r)"},
      {"[a](p & q) => [a]p", "[a]p, <a>s => <a>(p & s)", "[a]p",
       "[a](p & q), <a>s => <a>(p & s)"},
      {"p -> q, p => q", "q, s => q & s", "q", "p -> q, p, s => q & s"},
      {"- => p -> p", "p -> p, s => s", "p -> p", "s => s"},
  };
  long total_cuts = 0;
  for (const auto& it : items) {
    Proof lhs = must_prove(it.lhs, ax);
    Proof rhs = must_prove(it.rhs, ax);
    // align contexts by weakening both sides to the union
    NestedSequent target = parse_sequent(it.conclusion);
    Formula cutf = parse_formula(it.cutf);
    // left side: target stripped with output cutf
    NestedSequent lgoal = graft(strip_output(target), Name{0}, GSequent{{}, cutf});
    std::vector<Formula> lmissing;
    {
      auto have = lhs.conclusion.seq.ante;
      for (const auto& f : lgoal.seq.ante) {
        auto itf = std::find(have.begin(), have.end(), f);
        if (itf != have.end())
          have.erase(itf);
        else
          lmissing.push_back(f);
      }
    }
    Proof lfull = weaken_left(lhs, lhs.conclusion.name, lmissing, ax);
    // right side: target with cutf added
    std::vector<Formula> rmissing;
    {
      auto have = rhs.conclusion.seq.ante;
      NestedSequent rgoal = graft(target, Name{0}, GSequent{{cutf}, std::nullopt});
      for (const auto& f : rgoal.seq.ante) {
        auto itf = std::find(have.begin(), have.end(), f);
        if (itf != have.end())
          have.erase(itf);
        else
          rmissing.push_back(f);
      }
    }
    Proof rfull = weaken_left(rhs, rhs.conclusion.name, rmissing, ax);
    cut_stats().reset();
    Proof out = eliminate_cut(lfull, rfull, target.name, cutf, ax);
    total_cuts += cut_stats().recursive_cuts;
    auto r = check_proof(out, ax);
    if (!r.ok) MESSAGE(r.error->str());
    REQUIRE(r.ok);
    CHECK(equivalent(out.conclusion, target));
  }
  CHECK(total_cuts > 0);
}
