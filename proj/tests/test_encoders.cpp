#include <algorithm>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "subtower/corpus.hpp"
#include "subtower/crosscheck.hpp"
#include "subtower/encoders.hpp"

using namespace subtower;

namespace {

Formula I(const char* s) { return parse_formula(s, Polarity::Intuitionistic); }

std::size_t count_label(const Abvass& a, const std::string& label) {
  std::size_t n = 0;
  for (const auto& r : a.unary()) n += r.label == label;
  for (const auto& r : a.splits()) n += r.label == label;
  for (const auto& r : a.forks()) n += r.label == label;
  for (const auto& r : a.zeros()) n += r.label == label;
  return n;
}

bool has_unary(const EncodedMachine& em, StateId from, StateId to, const Update& u, const std::string& label) {
  return std::any_of(em.machine.unary().begin(), em.machine.unary().end(), [&](const UnaryRule& r) {
    return r.from == from && r.to == to && r.update == u && r.label == label;
  });
}

Update unit(std::size_t d, int k, int sign) {
  Update u(d, 0);
  u[static_cast<std::size_t>(k)] = sign;
  return u;
}

}  // namespace

TEST_CASE("encode: !p in variant E") {
  EncodedMachine em = encode_formula(I("!p"), Variant::E);
  const std::size_t d = em.machine.dim();
  CHECK(d == 2);
  const int p = em.closure.index_of(I("p")), bp = em.closure.index_of(I("!p"));
  REQUIRE(em.bang == std::vector<int>{bp});
  CHECK(em.is_bang_coordinate(static_cast<std::size_t>(bp)));
  CHECK_FALSE(em.is_bang_coordinate(static_cast<std::size_t>(p)));
  auto root = em.main_state(0, bp);
  auto at_p = em.main_state(0, p);
  auto stored = em.main_state(1, bp);
  REQUIRE(root);
  REQUIRE(at_p);
  REQUIRE(stored);
  CHECK(has_unary(em, *at_p, em.leaf, unit(d, p, -1), "Init1"));
  CHECK(has_unary(em, *root, *stored, unit(d, bp, -1), "store"));
  CHECK(count_label(em.machine, "func") == 2);
  CHECK(count_label(em.machine, "func-loop") == 1);
  CHECK(count_label(em.machine, "bangD") == 0);
  CHECK(count_label(em.machine, "W'") == 0);
  StateInfo loop{StateInfo::Kind::Intermediate, 1, bp, "func", bp, 0};
  auto mid = em.find(loop);
  REQUIRE(mid);
  CHECK(has_unary(em, *mid, *mid, unit(d, p, +1), "func-loop"));
  CHECK(has_unary(em, *mid, *at_p, Update(d, 0), "func-exit"));
}

TEST_CASE("encode: !p in variant I'") {
  EncodedMachine em = encode_formula(I("!p"), Variant::IPrime);
  const std::size_t d = em.machine.dim();
  const int p = em.closure.index_of(I("p")), bp = em.closure.index_of(I("!p"));
  CHECK(count_label(em.machine, "func") == 0);
  CHECK(count_label(em.machine, "func-loop") == 0);
  auto root = em.main_state(0, bp);
  auto body = em.main_state(0, p);
  REQUIRE(root);
  REQUIRE(body);
  bool promotion = std::any_of(em.machine.zeros().begin(), em.machine.zeros().end(), [&](const ZeroRule& z) {
    return z.from == *root && z.to == *body && z.label == "bangP";
  });
  CHECK(promotion);
  auto with_bang = em.main_state(1, p);
  REQUIRE(with_bang);
  CHECK(has_unary(em, *with_bang, *body, unit(d, p, +1), "bangD"));
  CHECK(count_label(em.machine, "W'") > 0);
}

TEST_CASE("encode: dimension is the closure size and intuitionistic only") {
  Grammar g = Grammar::of(Polarity::Intuitionistic, lang::intuitionistic_full(), {"p"});
  for (Formula f : formulas_up_to(g, 4)) {
    EncodedMachine em = encode_formula(f, Variant::E);
    REQUIRE(em.machine.dim() == subformula_closure(f).size());
    REQUIRE(em.info.size() == em.machine.state_count());
  }
  CHECK_THROWS_AS(encode_formula(I("$p"), Variant::E), std::invalid_argument);
}

TEST_CASE("encode: implication without exponentials is unreachable") {
  for (Variant v : {Variant::E, Variant::IPrime}) {
    Formula f = I("p -o q");
    EncodedMachine em = encode_formula(f, v);
    Config root = sequent_to_config(em, Sequent::intuitionistic({}, f));
    CHECK(search_deduction(em.machine, em.leaves(), root, true).outcome == Outcome::Refuted);
  }
}

TEST_CASE("sequent_to_config") {
  Formula f = I("!p");
  Sequent extra = parse_sequent("!p, p |- p", Side::Intuitionistic);
  EncodedMachine em = encode_formula(f, Variant::E, {extra});
  const int p = em.closure.index_of(I("p")), bp = em.closure.index_of(f);
  Config c = sequent_to_config(em, extra);
  CHECK(c.state == *em.main_state(1, p));
  Vec v(2, 0);
  v[static_cast<std::size_t>(p)] = 1;
  CHECK(c.v == v);
  Config root = sequent_to_config(em, Sequent::intuitionistic({}, f));
  CHECK(root.state == *em.main_state(0, bp));
  CHECK(root.v == Vec(2, 0));
  CHECK(em.info[root.state].x == bp);
  EncodedMachine e2 = encode_formula(f, Variant::IPrime);
  Config empty = sequent_to_config(e2, parse_sequent("p |-", Side::Intuitionistic));
  CHECK(e2.info[empty.state].x == -1);
  CHECK_THROWS_AS(sequent_to_config(em, parse_sequent("q |- p", Side::Intuitionistic)), std::invalid_argument);
}

TEST_CASE("legend: every state has a descriptor") {
  EncodedMachine em = encode_formula(I("!(p & 1) -o p * p"), Variant::E);
  auto js = nlohmann::json::parse(em.legend_json());
  CHECK(js["states"].size() == em.machine.state_count());
  CHECK(js["dimension"] == em.machine.dim());
  for (StateId q = 0; q < em.machine.state_count(); ++q) {
    CHECK(em.by_descriptor.count(descriptor_key(em.info[q])) == 1);
    CHECK(em.find(em.info[q]) == q);
  }
}

TEST_CASE("standard trees: normalization over found trees") {
  Grammar g = Grammar::of(Polarity::Intuitionistic, lang::intuitionistic_full(), {"p"});
  std::mt19937_64 rng(23);
  std::size_t found = 0;
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula_up_to(g, 8, rng);
    for (Variant v : {Variant::E, Variant::IPrime}) {
      EncodedMachine em = encode_formula(f, v);
      Config root = sequent_to_config(em, Sequent::intuitionistic({}, f));
      ReachResult r = search_deduction(em.machine, em.leaves(), root, true);
      if (!r.tree) continue;
      ++found;
      INFO(to_string(f) << " " << to_string(v));
      DeductionTree reg = normalize_regular(em.machine, em.leaves(), *r.tree);
      REQUIRE(is_regular(em.machine, em.leaves(), reg));
      DeductionTree st = normalize_standard(em, reg);
      REQUIRE(is_standard(em, st));
      REQUIRE(check_tree(em.machine, em.leaves(), st, true));
      REQUIRE(st.config == root);
      // Normal forms are fixed points of the reshaping.
      REQUIRE(is_standard(em, normalize_standard(em, st)));
    }
  }
  CHECK(found > 50);
}

TEST_CASE("standard trees: store at the root is kept") {
  Formula f = I("!p -o p");
  EncodedMachine em = encode_formula(f, Variant::IPrime);
  Config root = sequent_to_config(em, Sequent::intuitionistic({}, f));
  ReachResult r = search_deduction(em.machine, em.leaves(), root, true);
  REQUIRE(r.tree);
  DeductionTree st = normalize_standard(em, normalize_regular(em.machine, em.leaves(), *r.tree));
  REQUIRE(is_standard(em, st));
  DeductionTree again = normalize_standard(em, st);
  CHECK(tree_to_json(em.machine, again) == tree_to_json(em.machine, st));
}

TEST_CASE("bvass encoding: single increment") {
  Abvass b = parse_abvass("dim 1\nstate a\nstate b\nleaf b\nunary a -> b : +e_1\n");
  Sequent s = encode_bvass_to_sequent(b, b.leaves, parse_config(b, "a"));
  CHECK(s == parse_sequent("|- ?(a * (b^ | e1^)), ?b, a^", Side::Classical));
  CHECK(is_quest_prenex_multiplicative(s));
}

TEST_CASE("bvass encoding: split and decrement axioms") {
  Abvass b = parse_abvass("dim 1\nstate a\nstate b\nstate c\nleaf b\nsplit a -> b + c\nunary c -> b : -e_1\n");
  Sequent s = encode_bvass_to_sequent(b, b.leaves, parse_config(b, "a, (2)"));
  CHECK(s == parse_sequent("|- ?(a * (b^ * c^)), ?((c * e1) * b^), ?b, a^, e1^, e1^", Side::Classical));
}

TEST_CASE("bvass encoding: empty machine with a leaf target") {
  Abvass b = parse_abvass("dim 1\nstate q\nleaf q\n");
  Sequent s = encode_bvass_to_sequent(b, b.leaves, parse_config(b, "q"));
  CHECK(s == parse_sequent("|- ?q, q^", Side::Classical));
  CHECK(prove(system_by_name("LLW"), s).proved());
}

TEST_CASE("bvass encoding: rejects non-ordinary machines and renames clashing states") {
  CHECK_THROWS_AS(encode_bvass_to_sequent(parse_abvass("dim 1\nstate a\nfork a -> a & a\n"), {}, {0, {0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(encode_bvass_to_sequent(parse_abvass("dim 1\nstate a\nunary a -> a : +2*e_1\n"), {}, {0, {0}}),
                  std::invalid_argument);
  Abvass clash = parse_abvass("dim 1\nstate e1\nstate ok\n");
  CHECK(bvass_state_variable(clash, 0) != "e1");
  CHECK(bvass_state_variable(clash, 1) == "ok");
}

TEST_CASE("property: bvass encodings are ?-prenex multiplicative") {
  for (const BvassCase& c : hand_built_bvass())
    REQUIRE(is_quest_prenex_multiplicative(encode_bvass_to_sequent(c.machine, c.leaves, c.root)));
}
