#include <algorithm>

#include "doctest.h"
#include "subtower/corpus.hpp"
#include "subtower/proof.hpp"
#include "subtower/prover.hpp"
#include "subtower/system.hpp"

using namespace subtower;

namespace {

Sequent IS(const char* s) { return parse_sequent(s, Side::Intuitionistic); }
Sequent CS(const char* s) { return parse_sequent(s, Side::Classical); }

bool has(const std::vector<RuleApplication>& apps, const std::string& rule, const std::vector<Sequent>& premises) {
  return std::any_of(apps.begin(), apps.end(),
                     [&](const RuleApplication& a) { return a.rule == rule && a.premises == premises; });
}

}  // namespace

TEST_CASE("systems: catalog and fragments") {
  for (const std::string& n : system_names()) CHECK_NOTHROW(system_by_name(n));
  CHECK_THROWS_AS(system_by_name("NOPE"), std::invalid_argument);
  System flew = system_by_name("FLew");
  CHECK(flew.language == lang::fl());
  CHECK(flew.right_weakening);
  CHECK_FALSE(system_by_name("FLei").right_weakening);
  CHECK(system_by_name("BCK").language == Fragment{Conn::Lolli});
  CHECK(system_by_name("BCI").weakening == Weakening::None);
  CHECK(system_by_name("ELLW").exponentials == Exponentials::Functorial);
  CHECK(system_by_name("IEZW").exponentials == Exponentials::Functorial);
  CHECK(system_by_name("ILAL").exponentials == Exponentials::Light);
  System r = system_by_name("ILLW:-o,!");
  CHECK(r.language == Fragment{Conn::Lolli, Conn::Bang});
  CHECK(system_by_name("ILZWprime").right_weakening);
}

TEST_CASE("with_axioms: fragment checks") {
  System bck = with_axioms(system_by_name("BCK"), {parse_formula("p", Polarity::Intuitionistic)});
  CHECK(bck.axioms.size() == 1);
  CHECK_THROWS_AS(with_axioms(system_by_name("BCK"), {parse_formula("p * q", Polarity::Intuitionistic)}),
                  std::invalid_argument);
  CHECK(with_axioms(system_by_name("FLew"), {}).axioms.empty());
  System in = with_axioms(system_by_name("InFLew"), {parse_formula("p", Polarity::Classical)});
  ProofTree ax{CS("|- p"), "Ax", {}, {}};
  CHECK(check_proof(in, ax, false));
  CHECK_FALSE(check_proof(system_by_name("InFLew"), ax, false));
}

TEST_CASE("applicable_rules: BCK identity") {
  auto apps = applicable_rules(system_by_name("BCK"), IS("p |- p"));
  CHECK(has(apps, "Init", {}));
  CHECK(has(apps, "W", {IS("|- p")}));
}

TEST_CASE("applicable_rules: BCK right implication is the only step") {
  auto apps = applicable_rules(system_by_name("BCK"), IS("|- p -o p"));
  REQUIRE(apps.size() == 1);
  CHECK(apps[0].rule == "-oR");
  CHECK(apps[0].premises == std::vector<Sequent>{IS("p |- p")});
}

TEST_CASE("applicable_rules: LLW identity and weakenings") {
  auto apps = applicable_rules(system_by_name("LLW"), CS("|- p, p^"));
  CHECK(has(apps, "Init", {}));
  CHECK(has(apps, "W", {CS("|- p")}));
  CHECK(has(apps, "W", {CS("|- p^")}));
}

TEST_CASE("applicable_rules: axioms close, cuts never appear") {
  System s = with_axioms(system_by_name("BCK"), {parse_formula("p", Polarity::Intuitionistic)});
  CHECK(has(applicable_rules(s, IS("|- p")), "Ax", {}));
  for (const auto& a : applicable_rules(system_by_name("ILZW"), IS("!p, p -o q |- q * p"))) CHECK(a.rule != "Cut");
  CHECK_THROWS_AS(applicable_rules(system_by_name("BCK"), IS("p * q |- p")), std::invalid_argument);
}

TEST_CASE("applicable_rules: implication-left enumerates every context split") {
  auto apps = applicable_rules(system_by_name("BCI"), IS("p -o q, p, r |- q"));
  std::size_t n = std::count_if(apps.begin(), apps.end(), [](const RuleApplication& a) { return a.rule == "-oL"; });
  CHECK(n == 4);
}

TEST_CASE("check_proof: single-node identities") {
  System bck = system_by_name("BCK");
  CHECK(check_proof(bck, ProofTree{IS("p |- p"), "Init", {}, {}}, false));
  CheckResult bad = check_proof(bck, ProofTree{IS("p |- q"), "Init", {}, {}}, false);
  CHECK_FALSE(bad.ok);
  CHECK(bad.path.empty());
}

TEST_CASE("check_proof: cut only when allowed, violations carry a path") {
  System ilzw = system_by_name("ILZW");
  Sequent goal = IS("p |- p");
  ProofTree id{goal, "Init", {}, {}};
  ProofTree cut{goal, "Cut", parse_formula("p", Polarity::Intuitionistic), {id, id}};
  CHECK(check_proof(ilzw, cut, true));
  CHECK_FALSE(check_proof(ilzw, cut, false));
  ProofTree wrong{IS("|- p -o q"), "-oR", {}, {ProofTree{IS("p |- q"), "Init", {}, {}}}};
  CheckResult r = check_proof(ilzw, wrong, false);
  CHECK_FALSE(r.ok);
  CHECK(r.path == std::vector<std::size_t>{0});
}

TEST_CASE("check_proof: JSON round trip") {
  Verdict v = prove(system_by_name("ILZW"), IS("!p |- p * p"));
  REQUIRE(v.proved());
  std::string js = proof_to_json(*v.proof);
  ProofTree back = proof_from_json(js, Side::Intuitionistic);
  CHECK(proof_to_json(back) == js);
  CHECK(check_proof(system_by_name("ILZW"), back, false));
}

// One backward step over found subproofs is accepted by the checker.
TEST_CASE("property: applicable_rules steps assemble into checked proofs") {
  Budget b;
  b.max_nodes = 20000;
  for (const char* name : {"ILZW", "ILZW'", "ILL", "FLew", "BCK"}) {
    System sys = system_by_name(name);
    Grammar g = Grammar::of(Polarity::Intuitionistic, sys.language, {"p", "q"});
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
      auto fs = random_multiset(g, 6, 3, rng);
      Sequent goal = Sequent::intuitionistic(std::vector<Formula>(fs.begin() + 1, fs.end()), fs.front());
      for (const auto& app : applicable_rules(sys, goal)) {
        ProofTree t{goal, app.rule, app.principal, {}};
        bool closed = true;
        for (const Sequent& p : app.premises) {
          Verdict v = prove(sys, p, b);
          if (!v.proved()) {
            closed = false;
            break;
          }
          t.children.push_back(*v.proof);
        }
        if (!closed) continue;
        CheckResult r = check_proof(sys, t, false);
        INFO(name << " " << to_string(goal) << " via " << app.rule);
        REQUIRE(r.ok);
      }
    }
  }
}

TEST_CASE("property: weakening admissibility on found proofs") {
  Budget b;
  b.max_nodes = 20000;
  Grammar g = Grammar::of(Polarity::Intuitionistic, lang::fl(), {"p", "q"});
  System flew = system_by_name("FLew");
  std::mt19937_64 rng(5);
  std::size_t checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto fs = random_multiset(g, 6, 3, rng);
    Sequent goal = Sequent::intuitionistic(std::vector<Formula>(fs.begin() + 1, fs.end()), fs.front());
    if (!prove(flew, goal, b).proved()) continue;
    Budget b1 = b;
    b1.max_depth += 1;
    Formula extra = random_formula_up_to(g, 3, rng);
    REQUIRE(prove(flew, goal.plus(extra), b1).proved());
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("property: cut admissibility at desk scale") {
  System ilzw = system_by_name("ILZW'");
  Grammar g = Grammar::of(Polarity::Intuitionistic, lang::fl(), {"p", "q"});
  std::mt19937_64 rng(9);
  for (int i = 0; i < 80; ++i) {
    auto fs = random_multiset(g, 5, 2, rng);
    Sequent goal = Sequent::intuitionistic(std::vector<Formula>(fs.begin() + 1, fs.end()), fs.front());
    // With one cut on a closure formula C: G1 |- C and C, G2 |- P.
    bool with_cut = false;
    for (Formula f : fs)
      for (Formula c : subformula_closure(f).formulas) {
        const auto& ctx = goal.ctx();
        for (std::size_t mask = 0; mask < (std::size_t{1} << ctx.size()) && !with_cut; ++mask) {
          std::vector<Formula> g1, g2;
          for (std::size_t k = 0; k < ctx.size(); ++k) ((mask >> k) & 1U ? g1 : g2).push_back(ctx[k]);
          with_cut = prove(ilzw, Sequent::intuitionistic(g1, c)).proved() &&
                     prove(ilzw, Sequent::intuitionistic(g2, goal.stoup()).plus(c)).proved();
        }
      }
    if (with_cut) REQUIRE(prove(ilzw, goal).proved());
  }
}
