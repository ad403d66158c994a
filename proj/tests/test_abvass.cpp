#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subtower/abvass.hpp"
#include "subtower/corpus.hpp"

using namespace subtower;

namespace {

bool has_step(const std::vector<Expansion>& ex, Step s, const std::vector<Config>& kids) {
  for (const auto& e : ex)
    if (e.step == s && e.children == kids) return true;
  return false;
}

Budget small_budget() {
  Budget b;
  b.counter_cap = 4;
  return b;
}

}  // namespace

TEST_CASE("text format: parse and print") {
  Abvass a = parse_abvass(
      "# two counters\n"
      "dim 2\n"
      "state q\nstate r\nleaf r\n"
      "unary q -> r : +1*e_1, -2*e_2\n"
      "split q -> q + r\n"
      "fork q -> r & r\n"
      "zero r -> q\n");
  CHECK(a.dim() == 2);
  CHECK(a.state_count() == 2);
  REQUIRE(a.unary().size() == 1);
  CHECK(a.unary()[0].update == Update{1, -2});
  CHECK(a.splits().size() == 1);
  CHECK(a.forks().size() == 1);
  CHECK(a.zeros().size() == 1);
  CHECK(a.leaves == std::vector<StateId>{*a.find_state("r")});
  CHECK_FALSE(a.is_ordinary());
  CHECK_FALSE(a.is_bvass());
  Abvass b = parse_abvass(to_text(a));
  CHECK(to_text(b) == to_text(a));
}

TEST_CASE("text format: errors name the line") {
  try {
    parse_abvass("dim 1\nstate q\nsplit q -> q q\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
  CHECK_THROWS_AS(parse_abvass("dim 1\nstate q\nunary q -> q : +e_2\n"), ParseError);
  CHECK_THROWS_AS(parse_abvass("dim 1\nfrobnicate\n"), ParseError);
}

TEST_CASE("flags: ordinary and bvass") {
  Abvass a = parse_abvass("dim 2\nstate q\nunary q -> q : +e_1\nunary q -> q : -e_2\nsplit q -> q + q\n");
  CHECK(a.is_ordinary());
  CHECK(a.is_bvass());
}

TEST_CASE("expand: unary, zero test, split, loss") {
  Abvass a = parse_abvass("dim 1\nstate q\nstate r\nunary q -> r : +e_1\nzero q -> r\nsplit r -> q + q\n");
  StateId q = 0, r = 1;
  auto ex = expand(a, {q, {0}}, false);
  CHECK(has_step(ex, Step::Unary, {{r, {1}}}));
  CHECK(has_step(ex, Step::Zero, {{r, {0}}}));
  auto ex1 = expand(a, {q, {1}}, false);
  CHECK_FALSE(has_step(ex1, Step::Zero, {{r, {1}}}));
  auto sp = expand(a, {r, {1}}, false);
  CHECK(has_step(sp, Step::Split, {{q, {0}}, {q, {1}}}));
  CHECK(has_step(sp, Step::Split, {{q, {1}}, {q, {0}}}));
  CHECK(sp.size() == 2);
  auto lossy = expand(a, {r, {1}}, true);
  CHECK(has_step(lossy, Step::Loss, {{r, {0}}}));
  Abvass neg = parse_abvass("dim 1\nstate q\nunary q -> q : -e_1\n");
  CHECK(expand(neg, {0, {0}}, false).empty());
}

TEST_CASE("expand: forks before splits") {
  Abvass a = parse_abvass("dim 1\nstate q\nsplit q -> q + q\nfork q -> q & q\n");
  auto ex = expand(a, {0, {0}}, false);
  REQUIRE(ex.size() == 2);
  CHECK(ex[0].step == Step::Fork);
  CHECK(ex[1].step == Step::Split);
}

TEST_CASE("search: leaf root and a single loss") {
  Abvass a = parse_abvass("dim 1\nstate l\nleaf l\n");
  ReachResult r0 = search_deduction(a, a.leaves, {0, {0}}, false);
  REQUIRE(r0.outcome == Outcome::Proved);
  CHECK(r0.tree->node_count() == 1);
  ReachResult r1 = search_deduction(a, a.leaves, {0, {1}}, true);
  REQUIRE(r1.outcome == Outcome::Proved);
  CHECK(r1.tree->step == Step::Loss);
  CHECK(r1.tree->children.at(0).config == Config{0, {0}});
  CHECK(search_deduction(a, a.leaves, {0, {1}}, false).outcome == Outcome::Refuted);
}

TEST_CASE("search: increment needs a matching decrement without losses") {
  Abvass a = parse_abvass("dim 1\nstate q0\nstate q1\nleaf q1\nunary q0 -> q1 : +e_1\n");
  CHECK(search_deduction(a, a.leaves, {0, {0}}, false).outcome == Outcome::Refuted);
  Abvass b = parse_abvass("dim 1\nstate q0\nstate q1\nleaf q1\nunary q0 -> q1 : +e_1\nunary q1 -> q1 : -e_1\n");
  ReachResult r = search_deduction(b, b.leaves, {0, {0}}, false);
  REQUIRE(r.outcome == Outcome::Proved);
  CHECK(check_tree(b, b.leaves, *r.tree, false));
}

TEST_CASE("search: unbounded pumping is Unknown, not Refuted") {
  Abvass a = parse_abvass("dim 1\nstate q\nstate l\nleaf l\nunary q -> q : +e_1\n");
  ReachResult r = search_deduction(a, a.leaves, {0, {0}}, false, small_budget());
  CHECK(r.outcome == Outcome::Unknown);
  CHECK(r.capped);
  CHECK_THROWS_AS(search_deduction(a, a.leaves, {5, {0}}, false), std::invalid_argument);
}

TEST_CASE("search: trees have minimal height") {
  Abvass a = parse_abvass(
      "dim 1\nstate a\nstate b\nstate c\nleaf c\n"
      "unary a -> b : +e_1\nunary b -> c : -e_1\n"
      "unary a -> c : 0\n");
  ReachResult r = search_deduction(a, a.leaves, {0, {0}}, false);
  REQUIRE(r.outcome == Outcome::Proved);
  CHECK(r.tree->height() == 2);
}

TEST_CASE("check_tree: violations") {
  Abvass a = parse_abvass("dim 1\nstate q\nstate l\nleaf l\nunary q -> l : -e_1\n");
  DeductionTree good{{0, {1}}, Step::Unary, 0, {DeductionTree{{1, {0}}, Step::Leaf, 0, {}}}};
  CHECK(check_tree(a, a.leaves, good, false));
  DeductionTree neg{{0, {0}}, Step::Unary, 0, {DeductionTree{{1, {0}}, Step::Leaf, 0, {}}}};
  CHECK_FALSE(check_tree(a, a.leaves, neg, false));
  DeductionTree loss{{1, {1}}, Step::Loss, 0, {DeductionTree{{1, {0}}, Step::Leaf, 0, {}}}};
  CHECK(check_tree(a, a.leaves, loss, true));
  CHECK_FALSE(check_tree(a, a.leaves, loss, false));
  DeductionTree open{{0, {0}}, Step::Leaf, 0, {}};
  TreeCheck r = check_tree(a, a.leaves, open, true);
  CHECK_FALSE(r.ok);
  CHECK(r.path.empty());
}

TEST_CASE("tree JSON round trip") {
  Abvass a = parse_abvass("dim 1\nstate q\nstate l\nleaf l\nsplit q -> l + q\nunary q -> l : -e_1\n");
  ReachResult r = search_deduction(a, a.leaves, {0, {2}}, true);
  REQUIRE(r.tree);
  std::string js = tree_to_json(a, *r.tree);
  CHECK(tree_to_json(a, tree_from_json(a, js)) == js);
}

TEST_CASE("normalize_regular: identity on regular trees") {
  Abvass a = parse_abvass("dim 1\nstate l\nleaf l\n");
  DeductionTree t{{0, {1}}, Step::Loss, 0, {DeductionTree{{0, {0}}, Step::Leaf, 0, {}}}};
  CHECK(is_regular(a, a.leaves, t));
  DeductionTree n = normalize_regular(a, a.leaves, t);
  CHECK(tree_to_json(a, n) == tree_to_json(a, t));
}

TEST_CASE("normalize_regular: loss below a split moves to a child") {
  Abvass a = parse_abvass("dim 1\nstate q\nstate l\nleaf l\nsplit q -> l + l\n");
  DeductionTree leaf{{1, {0}}, Step::Leaf, 0, {}};
  DeductionTree split{{0, {0}}, Step::Split, 0, {leaf, leaf}};
  DeductionTree t{{0, {1}}, Step::Loss, 0, {split}};
  REQUIRE(check_tree(a, a.leaves, t, true));
  CHECK_FALSE(is_regular(a, a.leaves, t));
  DeductionTree n = normalize_regular(a, a.leaves, t);
  CHECK(is_regular(a, a.leaves, n));
  CHECK(check_tree(a, a.leaves, n, true));
  CHECK(n.config == t.config);
  CHECK(n.step == Step::Split);
  DeductionTree bad{{0, {0}}, Step::Leaf, 0, {}};
  CHECK_THROWS_AS(normalize_regular(a, a.leaves, bad), std::invalid_argument);
}

TEST_CASE("property: lossy search matches the brute-force fixpoint on random small machines") {
  std::mt19937_64 rng(17);
  Budget b = small_budget();
  std::size_t proved = 0;
  for (int i = 0; i < 300; ++i) {
    std::uniform_int_distribution<int> state(0, 2), coord(0, 1), coin(0, 1), kind(0, 5);
    Abvass a(2);
    for (const char* n : {"a", "b", "c"}) a.add_state(n);
    a.leaves = {2};
    int rules = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int k = 0; k < rules; ++k) {
      StateId f = state(rng), t = state(rng), u = state(rng);
      switch (kind(rng)) {
        case 0:
          a.add_split(f, t, u);
          break;
        case 1:
          a.add_fork(f, t, u);
          break;
        case 2:
          a.add_zero(f, t);
          break;
        default: {
          Update up{0, 0};
          up[coord(rng)] = coin(rng) ? 1 : -1;
          a.add_unary(f, t, up);
        }
      }
    }
    Config root{static_cast<StateId>(state(rng)), {static_cast<std::uint32_t>(coin(rng)), 0}};
    ReachResult r = search_deduction(a, a.leaves, root, true, b);
    INFO(to_text(a) << "root " << to_string(a, root));
    if (r.outcome == Outcome::Proved) {
      ++proved;
      REQUIRE(check_tree(a, a.leaves, *r.tree, true));
      // A tree within the cap exists, so the bounded fixpoint finds one.
      REQUIRE(oracle::lossy_reachable(a, a.leaves, root, 4));
      DeductionTree n = normalize_regular(a, a.leaves, *r.tree);
      REQUIRE(is_regular(a, a.leaves, n));
      REQUIRE(check_tree(a, a.leaves, n, true));
    } else if (r.outcome == Outcome::Refuted) {
      REQUIRE_FALSE(oracle::lossy_reachable(a, a.leaves, root, 4));
    }
  }
  CHECK(proved > 20);
}

TEST_CASE("property: lossy trees are upward closed") {
  Abvass a = parse_abvass("dim 2\nstate a\nstate b\nleaf b\nunary a -> b : -e_1\nsplit b -> b + b\n");
  for (std::uint32_t x = 1; x < 3; ++x)
    for (std::uint32_t y = 0; y < 3; ++y) {
      Config c{0, {x, y}};
      ReachResult r = search_deduction(a, a.leaves, c, true);
      REQUIRE(r.outcome == Outcome::Proved);
      Config up{0, {x, y + 1}};
      Budget b;
      b.max_tree_height = r.tree->height() + 2;
      REQUIRE(search_deduction(a, a.leaves, up, true, b).outcome == Outcome::Proved);
    }
}

TEST_CASE("property: non-lossy trees check under lossy semantics") {
  for (const BvassCase& c : hand_built_bvass()) {
    ReachResult r = search_deduction(c.machine, c.leaves, c.root, false, small_budget());
    if (r.tree) REQUIRE(check_tree(c.machine, c.leaves, *r.tree, true));
  }
}

TEST_CASE("hand-built machines: pinned lossy answers") {
  const std::map<std::string, bool> expected{
      {"inc-then-leaf", true},  {"dec-from-zero", false}, {"dec-from-one", true},     {"pump-then-dec", true},
      {"split-two-leaves", true}, {"split-starved", false}, {"split-fed", true},      {"root-is-leaf", true},
      {"no-rules", false},      {"wrong-counter", false}, {"right-counter", true},    {"pump-other", false},
      {"two-phase", true},      {"self-split", true},     {"loss-only", true},        {"need-two", false},
      {"have-two", true},       {"split-share", true},    {"both-counters", true},    {"one-short", false},
  };
  auto cases = hand_built_bvass();
  REQUIRE(cases.size() == 20);
  for (const BvassCase& c : cases) {
    INFO(c.name);
    REQUIRE(c.machine.is_bvass());
    REQUIRE(c.machine.is_ordinary());
    REQUIRE(c.machine.state_count() <= 3);
    REQUIRE(c.machine.dim() <= 2);
    bool want = expected.at(c.name);
    CHECK(oracle::lossy_reachable(c.machine, c.leaves, c.root, 6) == want);
    ReachResult r = search_deduction(c.machine, c.leaves, c.root, true);
    if (want) CHECK(r.outcome == Outcome::Proved);
    else CHECK(r.outcome != Outcome::Proved);
  }
}
