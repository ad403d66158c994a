#include <set>

#include "doctest.h"
#include "json.hpp"
#include "subtower/corpus.hpp"
#include "subtower/crosscheck.hpp"

using namespace subtower;

TEST_CASE("corpus: exhaustive enumerators") {
  Grammar g;
  g.polarity = Polarity::Intuitionistic;
  g.atoms = {"p"};
  g.binary = {Kind::Lolli};
  CHECK(formulas_of_size(g, 1).size() == 1);
  CHECK(formulas_of_size(g, 2).empty());
  CHECK(formulas_of_size(g, 3).size() == 1);
  CHECK(formulas_of_size(g, 5).size() == 2);
  CHECK(formulas_of_size(g, 7).size() == 5);
  CHECK(formulas_up_to(g, 7).size() == 9);
}

TEST_CASE("corpus: closure enumeration is complete and duplicate free") {
  Grammar g = Grammar::of(Polarity::Intuitionistic, lang::intuitionistic_full(), {"p"});
  bool complete = false;
  auto fs = formulas_by_closure(g, 3, 1000000, &complete);
  CHECK(complete);
  std::set<const void*> seen;
  for (Formula f : fs) {
    REQUIRE(subformula_closure(f).size() <= 3);
    REQUIRE(seen.insert(f.id()).second);
  }
  // Every formula up to size 4 with a small closure is enumerated.
  for (Formula f : formulas_up_to(g, 4))
    if (subformula_closure(f).size() <= 3) REQUIRE(seen.count(f.id()) == 1);
  CHECK(formulas_by_closure(g, 4, 1000000).size() == 10140);
  auto cut = formulas_by_closure(g, 4, 100, &complete);
  CHECK_FALSE(complete);
  CHECK(cut.size() == 100);
}

TEST_CASE("corpus: random generators are seeded and sized") {
  Grammar g = Grammar::of(Polarity::Classical, lang::classical_full(), {"p", "q"});
  std::mt19937_64 a(1), b(1);
  for (int i = 0; i < 50; ++i) {
    Formula x = random_formula(g, 9, a);
    REQUIRE(x == random_formula(g, 9, b));
    REQUIRE(x.size() == 9);
  }
  Grammar imp;
  imp.polarity = Polarity::Intuitionistic;
  imp.binary = {Kind::Lolli};
  CHECK_THROWS_AS(random_formula(imp, 2, a), std::invalid_argument);
  for (int i = 0; i < 50; ++i) {
    auto ms = random_multiset(g, 8, 3, a);
    std::size_t total = 0;
    for (Formula f : ms) total += f.size();
    REQUIRE(!ms.empty());
    REQUIRE(ms.size() <= 3);
    REQUIRE(total <= 8);
  }
}

TEST_CASE("corpus: implicational sequents") {
  auto all = implicational_sequents({"p"}, 3);
  // |- p, p |- p, p p |- p, |- p -o p
  CHECK(all.size() == 4);
  for (const Sequent& s : implicational_sequents({"p", "q"}, 6)) REQUIRE(s.size() <= 6);
}

TEST_CASE("suites: names, unknown suite, empty corpus") {
  CHECK(suite_names().size() == 9);
  CHECK_THROWS_AS(run_suite("nope", {}), std::invalid_argument);
  SuiteOptions o;
  o.max_size = 0;
  SuiteReport r = run_suite("illtoll5", o);
  CHECK(r.cases.empty());
  CHECK(r.passed());
}

TEST_CASE("suites: every suite passes at a small size") {
  for (const std::string& name : suite_names()) {
    SuiteOptions o;
    o.max_size = 5;
    o.count = 30;
    o.seed = 4;
    SuiteReport r = run_suite(name, o);
    INFO(r.summary());
    for (const auto& c : r.cases)
      for (const auto& f : c.failures) INFO(c.instance << ": " << f);
    CHECK(r.passed());
    CHECK(r.failures() == 0);
  }
}

TEST_CASE("suites: reports are deterministic and workers do not change them") {
  SuiteOptions o;
  o.max_size = 6;
  o.count = 40;
  o.seed = 12;
  SuiteReport a = run_suite("illtoll8", o);
  o.workers = 3;
  SuiteReport b = run_suite("illtoll8", o);
  auto ja = nlohmann::json::parse(a.to_json()), jb = nlohmann::json::parse(b.to_json());
  ja.erase("seconds");
  jb.erase("seconds");
  CHECK(ja == jb);
}

TEST_CASE("case results: agreement is pairwise over conclusive verdicts") {
  CaseResult r;
  r.verdicts = {{"a", Outcome::Proved, ""}, {"b", Outcome::Unknown, ""}, {"c", Outcome::Proved, ""}};
  CHECK(r.agree());
  CHECK_FALSE(r.conclusive());
  r.verdicts.push_back({"d", Outcome::Refuted, ""});
  CHECK_FALSE(r.agree());
}

TEST_CASE("run_jobs: exceptions become failures, order is kept") {
  std::vector<std::function<CaseResult()>> jobs;
  for (int i = 0; i < 6; ++i)
    jobs.push_back([i]() -> CaseResult {
      if (i == 3) throw std::runtime_error("boom");
      CaseResult r;
      r.instance = std::to_string(i);
      return r;
    });
  auto out = run_jobs(jobs, 2);
  REQUIRE(out.size() == 6);
  CHECK(out[0].instance == "0");
  CHECK(out[5].instance == "5");
  CHECK(out[3].failures.size() == 1);
}

TEST_CASE("harnesses: the LLW and ELLW witness pair") {
  CaseResult r = check_llw_ellw({parse_formula("p^", Polarity::Classical)}, parse_formula("p", Polarity::Classical),
                                default_budget());
  REQUIRE(r.verdicts.size() >= 2);
  CHECK(r.failures.empty());
}

TEST_CASE("harnesses: encoder checks on a few formulas") {
  for (const char* s : {"!p -o p", "!p -o p * p", "p & 1 -o p", "top", "0 -o p", "!(p -o p)"}) {
    Formula f = parse_formula(s, Polarity::Intuitionistic);
    for (Variant v : {Variant::E, Variant::IPrime}) {
      CaseResult r = check_encoder(v, f, default_budget());
      INFO(s << " " << to_string(v));
      CHECK(r.agree());
      CHECK(r.failures.empty());
      CHECK(r.rejections == 0);
    }
  }
}
