#include <random>

#include "doctest.h"
#include "subtower/corpus.hpp"
#include "subtower/formula.hpp"
#include "subtower/sequent.hpp"

using namespace subtower;

namespace {
Formula I(const char* s) { return parse_formula(s, Polarity::Intuitionistic); }
Formula C(const char* s) { return parse_formula(s, Polarity::Classical); }
}  // namespace

TEST_CASE("parse: implication associates to the right") {
  Formula f = I("p -o (q -o p)");
  REQUIRE(f.kind() == Kind::Lolli);
  CHECK(f.left() == Formula::var("p"));
  CHECK(f.right() == Formula::lolli(Formula::var("q"), Formula::var("p")));
  CHECK(I("p -o q -o p") == f);
}

TEST_CASE("parse: classical tensor of a bang and a dual literal") {
  Formula f = C("!p * q^");
  REQUIRE(f.kind() == Kind::Tensor);
  CHECK(f.left() == Formula::bang(Formula::var("p")));
  CHECK(f.right() == Formula::dual_var("q"));
}

TEST_CASE("parse: precedence of unary, multiplicative, additive, implication") {
  CHECK(I("!p * q & r -o s") ==
        Formula::lolli(Formula::with(Formula::tensor(Formula::bang(Formula::var("p")), Formula::var("q")),
                                     Formula::var("r")),
                       Formula::var("s")));
  CHECK(C("p | q + r * s") == Formula::plus(Formula::par(Formula::var("p"), Formula::var("q")),
                                            Formula::tensor(Formula::var("r"), Formula::var("s"))));
  CHECK(I("1 * top + bot & 0") == I("((1 * top) + bot) & 0"));
}

TEST_CASE("parse: utf-8 aliases") {
  CHECK(I("p ⊸ q ⊗ r") == I("p -o q * r"));
  CHECK(C("p⊥ ⅋ ?q") == C("p^ | ?q"));
}

TEST_CASE("parse: errors carry positions and polarity") {
  CHECK_THROWS_AS(I("p | q"), PolarityError);
  CHECK_THROWS_AS(I("p^"), PolarityError);
  CHECK_THROWS_AS(C("p -o q"), PolarityError);
  try {
    I("p -o");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(I("(p"), ParseError);
  CHECK_THROWS_AS(I("p q"), ParseError);
}

TEST_CASE("dual: table entries") {
  CHECK(dual(C("p")) == C("p^"));
  CHECK(dual(C("p^")) == C("p"));
  CHECK(dual(C("p * q")) == C("p^ | q^"));
  CHECK(dual(C("p & q")) == C("p^ + q^"));
  CHECK(dual(C("!p")) == C("?p^"));
  CHECK(dual(C("1")) == C("bot"));
  CHECK(dual(C("top")) == C("0"));
  CHECK(dual(C("?(p | 1)")) == C("!(p^ * bot)"));
  CHECK_THROWS_AS(dual(I("p -o q")), std::invalid_argument);
}

TEST_CASE("dual: involution on every classical formula up to size 5") {
  Grammar g = Grammar::of(Polarity::Classical, lang::classical_full(), {"p", "q"});
  for (Formula f : formulas_up_to(g, 5)) REQUIRE(dual(dual(f)) == f);
}

TEST_CASE("print: parsing round-trips printing") {
  Grammar gc = Grammar::of(Polarity::Classical, lang::classical_full(), {"p", "q"});
  for (Formula f : formulas_up_to(gc, 5)) REQUIRE(C(to_string(f).c_str()) == f);
  Grammar gi = Grammar::of(Polarity::Intuitionistic, lang::intuitionistic_full(), {"p", "q"});
  for (Formula f : formulas_up_to(gi, 5)) REQUIRE(I(to_string(f).c_str()) == f);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula_up_to(gi, 25, rng);
    REQUIRE(I(to_string(f).c_str()) == f);
  }
}

TEST_CASE("closure: sets, not multisets") {
  Closure a = subformula_closure(I("!p"));
  CHECK(a.size() == 2);
  CHECK(a.bang == std::vector<Formula>{I("!p")});
  Closure b = subformula_closure(I("p -o q"));
  CHECK(b.size() == 3);
  CHECK(b.bang.empty());
  Closure c = subformula_closure(I("!(p * p)"));
  CHECK(c.size() == 3);
  CHECK(c.index_of(I("p * p")) >= 0);
  CHECK(c.index_of(I("q")) == -1);
}

TEST_CASE("closure: contains the formula and is no larger than it") {
  Grammar g = Grammar::of(Polarity::Intuitionistic, lang::intuitionistic_full(), {"p"});
  for (Formula f : formulas_up_to(g, 6)) {
    Closure s = subformula_closure(f);
    REQUIRE(s.index_of(f) >= 0);
    REQUIRE(s.size() <= f.size());
    for (Formula b : s.bang) REQUIRE(b.kind() == Kind::Bang);
  }
}

TEST_CASE("fragments") {
  Fragment imp{Conn::Lolli};
  CHECK(in_fragment(I("p -o q"), imp));
  CHECK_FALSE(in_fragment(I("p * q"), imp));
  CHECK(in_fragment(I("1"), lang::fl()));
  CHECK(Fragment::parse("{-o,!}") == Fragment{Conn::Lolli, Conn::Bang});
  CHECK(Fragment::parse("-o,!") == Fragment::parse("{ -o , ! }"));
  CHECK(lang::intuitionistic_full().includes(lang::fl()));
  CHECK(I("!(p -o top)").connectives() == Fragment{Conn::Bang, Conn::Lolli, Conn::Top});
}

TEST_CASE("sequents: canonical multiset order") {
  Sequent a = parse_sequent("q, p, q |- p", Side::Intuitionistic);
  Sequent b = parse_sequent("q, q, p |- p", Side::Intuitionistic);
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK(parse_sequent("p |-", Side::Intuitionistic).stoup() == Formula{});
  Sequent c = parse_sequent("|- p^, ?q", Side::Classical);
  CHECK(c.is_classical());
  CHECK(c.ctx().size() == 2);
  CHECK(parse_sequent(to_string(a), Side::Intuitionistic) == a);
  CHECK_THROWS_AS(parse_sequent("p |- q, r", Side::Intuitionistic), ParseError);
}
