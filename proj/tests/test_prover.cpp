#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subtower/corpus.hpp"
#include "subtower/prover.hpp"
#include "subtower/translate.hpp"

using namespace subtower;

namespace {

Sequent IS(const char* s) { return parse_sequent(s, Side::Intuitionistic); }
Sequent CS(const char* s) { return parse_sequent(s, Side::Classical); }
Formula I(const char* s) { return parse_formula(s, Polarity::Intuitionistic); }

Outcome run(const char* sys, const Sequent& s) { return prove(system_by_name(sys), s).outcome; }

}  // namespace

TEST_CASE("prove: K combinator needs weakening") {
  CHECK(run("BCK", IS("|- p -o (q -o p)")) == Outcome::Proved);
  CHECK(run("BCI", IS("|- p -o (q -o p)")) == Outcome::Refuted);
}

TEST_CASE("prove: functorial promotion loses dereliction") {
  CHECK(run("LLW", CS("|- ?p^, p")) == Outcome::Proved);
  CHECK(run("ELLW", CS("|- ?p^, p")) == Outcome::Refuted);
}

TEST_CASE("prove: proofs are certified and cut-free") {
  for (const char* s : {"!p |- p * p", "p & q |- q", "0 |- p", "p |- top", "p, p -o q |- q", "|- 1"}) {
    Verdict v = prove(system_by_name("ILZW"), IS(s));
    INFO(s);
    REQUIRE(v.proved());
    REQUIRE(v.proof);
    CHECK(check_proof(system_by_name("ILZW"), *v.proof, false));
  }
}

TEST_CASE("prove: right weakening separates ILZW and ILZW'") {
  CHECK(run("ILZW'", IS("p |- q -o q")) == Outcome::Proved);
  CHECK(run("ILZW'", IS("p, p -o bot |- q")) == Outcome::Proved);
  CHECK(run("ILZW", IS("p, p -o bot |- q")) == Outcome::Refuted);
}

TEST_CASE("prove: budgets") {
  Budget tiny;
  tiny.max_nodes = 1;
  CHECK(prove(system_by_name("ILZW"), IS("!p |- p * p * p"), tiny).outcome == Outcome::Unknown);
  Budget zero;
  zero.max_depth = 0;
  CHECK_THROWS_AS(prove(system_by_name("ILZW"), IS("p |- p"), zero), std::invalid_argument);
  CHECK_THROWS_AS(prove(system_by_name("BCK"), IS("p * q |- p")), std::invalid_argument);
  Budget parsed = parse_budget("depth=10,nodes=500,cap=3");
  CHECK(parsed.max_depth == 10);
  CHECK(parsed.max_nodes == 500);
  CHECK(parsed.counter_cap == 3);
  CHECK(parse_budget(to_string(parsed)).max_nodes == 500);
  CHECK_THROWS_AS(parse_budget("depth"), std::invalid_argument);
  CHECK_THROWS_AS(parse_budget("colour=3"), std::invalid_argument);
}

TEST_CASE("prove_bck: examples") {
  CHECK(prove_bck(IS("|- p -o (q -o p)")).outcome == Outcome::Proved);
  CHECK(prove_bck(IS("|- (p -o p -o q) -o (p -o q)")).outcome == Outcome::Refuted);
  CHECK(prove_bck(IS("p |- p")).outcome == Outcome::Proved);
  CHECK_THROWS_AS(prove_bck(IS("|- !p -o p")), std::invalid_argument);
  CHECK(bck_bound(IS("|- p -o (q -o p)")) == 4);
}

TEST_CASE("prove_bck: agrees with the independent oracle up to total size 7") {
  oracle::Bck o;
  for (const Sequent& s : implicational_sequents({"p", "q"}, 7)) {
    std::vector<int> gamma;
    for (Formula f : s.ctx()) gamma.push_back(o.parse(to_string(f)));
    bool expected = o.provable(gamma, o.parse(to_string(s.stoup())));
    Verdict v = prove_bck(s);
    INFO(to_string(s));
    REQUIRE(v.conclusive());
    REQUIRE(v.proved() == expected);
  }
}

TEST_CASE("prove_bck: conservativity of ILLW over BCK") {
  Budget b;
  b.max_nodes = 50000;
  for (const Sequent& s : implicational_sequents({"p", "q"}, 6)) {
    Verdict v = prove(system_by_name("ILLW"), s, b);
    if (!v.conclusive()) continue;
    INFO(to_string(s));
    REQUIRE(v.proved() == prove_bck(s).proved());
  }
}

TEST_CASE("deduce: BCK with an atom axiom, both routes") {
  System bck = system_by_name("BCK");
  std::vector<Formula> phi{I("p")};
  Verdict d = deduce(bck, phi, IS("|- q -o p"), default_budget(), Route::Direct);
  Verdict r = deduce(bck, phi, IS("|- q -o p"), default_budget(), Route::Reduction);
  CHECK(d.proved());
  CHECK(r.proved());
  CHECK(d.uses_axiom_cuts);
  CHECK(check_proof(with_axioms(bck, phi), *d.proof, true));
}

TEST_CASE("deduce: empty axiom set is plain provability") {
  System flew = system_by_name("FLew");
  Grammar g = Grammar::of(Polarity::Intuitionistic, lang::fl(), {"p", "q"});
  for (Formula f : formulas_up_to(g, 4)) {
    Sequent s = Sequent::intuitionistic({}, f);
    Verdict plain = prove(flew, s);
    Verdict red = deduce(flew, {}, s, default_budget());
    if (plain.conclusive() && red.conclusive()) REQUIRE(plain.proved() == red.proved());
  }
}

TEST_CASE("deduce: InFLew goes through LLW") {
  System in = system_by_name("InFLew");
  std::vector<Formula> phi{parse_formula("p", Polarity::Classical)};
  Reduced red = reduce_deducibility(in, phi, CS("|- p"));
  CHECK(red.system.name == "LLW");
  CHECK(red.goal == CS("|- ?p^, p"));
  CHECK(deduce(in, phi, CS("|- p"), default_budget()).proved());
  CHECK_THROWS_AS(reduce_deducibility(system_by_name("ILL"), {}, IS("|- p")), std::invalid_argument);
}

TEST_CASE("deduce: reduction targets") {
  std::vector<Formula> phi{I("p")};
  CHECK(reduce_deducibility(system_by_name("FLei"), phi, IS("|- p")).system.name == "ILZW");
  CHECK(reduce_deducibility(system_by_name("FLew"), phi, IS("|- p")).system.name == "ILZW'");
  CHECK(reduce_deducibility(system_by_name("BCK"), phi, IS("|- p")).goal == IS("!p |- p"));
}

TEST_CASE("prenex_expand_prove: least number of copies") {
  System flew = system_by_name("FLew");
  Verdict one = prenex_expand_prove(flew, IS("!p |- p"));
  REQUIRE(one.proved());
  CHECK(one.witness_n == 1u);
  Verdict zero = prenex_expand_prove(flew, IS("p |- p"));
  REQUIRE(zero.proved());
  CHECK(zero.witness_n == 0u);
  Verdict two = prenex_expand_prove(flew, IS("!p |- p * p"));
  REQUIRE(two.proved());
  CHECK(two.witness_n == 2u);
  CHECK_THROWS_AS(prenex_expand_prove(flew, IS("p -o !p |- p")), std::invalid_argument);
}

TEST_CASE("prenex_expand_prove: agrees with direct ILZW search") {
  Sequent s = IS("!(p -o q), p |- q");
  Verdict direct = prove(system_by_name("ILZW"), s);
  Verdict expanded = prenex_expand_prove(system_by_name("FLei"), s);
  CHECK(direct.proved());
  CHECK(expanded.proved());
  CHECK(expanded.witness_n == 1u);
}

TEST_CASE("split_prenex") {
  auto p = split_prenex(IS("!p, !(p -o q), q |- q"));
  REQUIRE(p);
  CHECK(p->banged.size() == 2);
  CHECK(p->rest == IS("q |- q"));
  CHECK_FALSE(split_prenex(IS("!p -o q |- q")));
  auto c = split_prenex(CS("|- ?p, q"));
  REQUIRE(c);
  CHECK(c->banged == std::vector<Formula>{parse_formula("p", Polarity::Classical)});
}

TEST_CASE("property: ELLW proofs are LLW proofs") {
  Grammar g = Grammar::of(Polarity::Classical, lang::classical_full(), {"p"});
  Budget b;
  b.max_nodes = 20000;
  std::size_t both = 0;
  for (Formula f : formulas_up_to(g, 5)) {
    Sequent s = Sequent::classical({f});
    Verdict e = prove(system_by_name("ELLW"), s, b);
    if (!e.proved()) continue;
    Verdict l = prove(system_by_name("LLW"), s, b);
    INFO(to_string(s));
    REQUIRE(l.outcome != Outcome::Refuted);
    both += l.proved();
  }
  CHECK(both > 0);
}

TEST_CASE("property: ILAL proofs survive erasure") {
  Grammar g = Grammar::of(Polarity::Intuitionistic, lang::light(), {"p", "q"});
  System ilal = system_by_name("ILAL"), target = system_by_name("ILLW:-o,!");
  std::mt19937_64 rng(2);
  std::size_t found = 0;
  for (int i = 0; i < 300; ++i) {
    auto fs = random_multiset(g, 6, 3, rng);
    Sequent s = Sequent::intuitionistic(std::vector<Formula>(fs.begin() + 1, fs.end()), fs.front());
    if (!prove(ilal, s).proved()) continue;
    ++found;
    INFO(to_string(s));
    REQUIRE(prove(target, erase_paragraph(s)).proved());
  }
  CHECK(found > 5);
}
