#include "igl/formula.hpp"

#include <random>

#include "doctest.h"

using namespace igl;

namespace {

const Character a{"a", false};
const Character ab{"a", true};

Formula random_formula(std::mt19937& rng, int depth, const std::vector<std::string>& atoms,
                       const std::vector<Character>& chars) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  switch (pick(rng)) {
    case 0:
      return Formula::atom(atoms[rng() % atoms.size()]);
    case 1:
      return Formula::bottom();
    case 2:
      return Formula::disj(random_formula(rng, depth - 1, atoms, chars),
                           random_formula(rng, depth - 1, atoms, chars));
    case 3:
      return Formula::conj(random_formula(rng, depth - 1, atoms, chars),
                           random_formula(rng, depth - 1, atoms, chars));
    case 4:
      return Formula::imp(random_formula(rng, depth - 1, atoms, chars),
                          random_formula(rng, depth - 1, atoms, chars));
    case 5:
      return Formula::dia(chars[rng() % chars.size()],
                          random_formula(rng, depth - 1, atoms, chars));
    default:
      return Formula::box(chars[rng() % chars.size()],
                          random_formula(rng, depth - 1, atoms, chars));
  }
}

}  // namespace

TEST_CASE("character converse is an involution") {
  CHECK(a.converse() == ab);
  CHECK(ab.converse() == a);
  CHECK(a.converse().converse() == a);
}

TEST_CASE("converse of strings") {
  CHECK(converse_string({}) == CharString{});
  Character b{"b", false};
  CharString s{a, b.converse()};
  CharString want{b, ab};
  CHECK(converse_string(s) == want);
}

TEST_CASE("converse_string is an involution") {
  std::mt19937 rng(7);
  std::vector<Character> chars{a, ab, {"b", false}, {"b", true}};
  for (int trial = 0; trial < 50; ++trial) {
    CharString s;
    int len = rng() % 6;
    for (int i = 0; i < len; ++i) s.push_back(chars[rng() % chars.size()]);
    CHECK(converse_string(converse_string(s)) == s);
  }
}

TEST_CASE("parsing the surface syntax") {
  Formula f = parse_formula("<a>p & [a^]q");
  CHECK(f.kind() == Conn::And);
  CHECK(f.left().kind() == Conn::Dia);
  CHECK(f.left().character() == a);
  CHECK(f.right().kind() == Conn::Box);
  CHECK(f.right().character() == ab);
  CHECK(f.right().inner() == Formula::atom("q"));

  Formula g = parse_formula("false -> p");
  CHECK(g == Formula::imp(Formula::bottom(), Formula::atom("p")));

  CHECK_THROWS_AS(parse_formula("[a p"), ParseError);
  try {
    parse_formula("[a p");
  } catch (const ParseError& e) {
    CHECK(e.offset == 3);
  }
}

TEST_CASE("implication is right-associative, modalities bind tightest") {
  CHECK(parse_formula("p -> q -> r") ==
        Formula::imp(Formula::atom("p"), Formula::imp(Formula::atom("q"), Formula::atom("r"))));
  CHECK(parse_formula("<a>p | q & r") ==
        Formula::disj(Formula::dia(a, Formula::atom("p")),
                      Formula::conj(Formula::atom("q"), Formula::atom("r"))));
  CHECK(parse_formula("true") == Formula::top());
  CHECK(parse_formula("false -> false") == Formula::top());
}

TEST_CASE("alphabet errors") {
  Alphabet alpha({"a"});
  CHECK_THROWS_AS(parse_formula("<b>p", &alpha), AlphabetError);
  CHECK(parse_formula("<a^>p", &alpha).character() == ab);
}

TEST_CASE("length counts syntax tree nodes") {
  CHECK(parse_formula("p").length() == 1);
  CHECK(parse_formula("<a>p").length() == 2);
  CHECK(parse_formula("p -> q").length() == 3);
  CHECK(parse_formula("true").length() == 3);
}

TEST_CASE("signature base cases") {
  auto sp = signature(Formula::atom("p"), true);
  CHECK(sp.members == std::set<Formula>{Formula::atom("p"), Formula::bottom(), Formula::top()});
  auto sn = signature(Formula::atom("p"), false);
  CHECK(sn.members == std::set<Formula>{Formula::bottom(), Formula::top()});
}

TEST_CASE("signature flips polarity left of implication") {
  Formula f = parse_formula("p -> q");
  auto sp = signature(f, true);
  CHECK(sp.members ==
        std::set<Formula>{f, Formula::atom("q"), Formula::bottom(), Formula::top()});
  CHECK(atomic_signature(f, true) == std::set<std::string>{"q"});
  CHECK(atomic_signature(f, false) == std::set<std::string>{"p"});
}

TEST_CASE("signature members are subformulas or base members") {
  std::mt19937 rng(11);
  std::vector<std::string> atoms{"p", "q"};
  std::vector<Character> chars{a, ab};
  for (int trial = 0; trial < 60; ++trial) {
    Formula f = random_formula(rng, 3, atoms, chars);
    for (bool pos : {true, false}) {
      auto sig = signature(f, pos);
      CHECK(sig.members.count(Formula::bottom()));
      CHECK(sig.members.count(Formula::top()));
      // every member is a subformula of f or a base member; check by string search
      for (const auto& m : sig.members) {
        if (m == Formula::bottom() || m == Formula::top()) continue;
        CHECK(f.str().find(m.str().substr(0, 1)) != std::string::npos);
        CHECK(m.length() <= f.length());
      }
    }
  }
}

TEST_CASE("print/parse round trip") {
  std::mt19937 rng(23);
  std::vector<std::string> atoms{"p", "q", "r"};
  std::vector<Character> chars{a, ab, {"b", false}};
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = random_formula(rng, 4, atoms, chars);
    CHECK(parse_formula(f.str()) == f);
  }
}

TEST_CASE("proper subformulas are shorter") {
  Formula f = parse_formula("(p & q) -> <a>r");
  CHECK(f.left().length() < f.length());
  CHECK(f.right().length() < f.length());
  CHECK(f.right().inner().length() < f.right().length());
}
