#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "subtower/abvass.hpp"
#include "subtower/sequent.hpp"

namespace subtower {

// Formula shapes available to the generators.
struct Grammar {
  Polarity polarity = Polarity::Classical;
  std::vector<std::string> atoms{"p", "q"};
  bool dual_atoms = true;  // classical only: p^ as a literal
  std::vector<Kind> constants;
  std::vector<Kind> unary;
  std::vector<Kind> binary;

  // Every connective and constant of `k` that fits the polarity.
  static Grammar of(Polarity pol, Fragment k, std::vector<std::string> atoms);
};

// All formulas with exactly / at most `size` nodes, in a fixed order.
std::vector<Formula> formulas_of_size(const Grammar& g, std::size_t size);
std::vector<Formula> formulas_up_to(const Grammar& g, std::size_t max_size);
// All formulas whose subformula closure has at most `max_closure` members.
// Stops early and returns false in `complete` once `limit` is exceeded.
std::vector<Formula> formulas_by_closure(const Grammar& g, std::size_t max_closure, std::size_t limit,
                                         bool* complete = nullptr);

// Uniform over the formulas of exactly `size` nodes. Throws
// std::invalid_argument when no formula has that size.
Formula random_formula(const Grammar& g, std::size_t size, std::mt19937_64& rng);
// A size drawn uniformly among 1..max_size that has formulas, then as above.
Formula random_formula_up_to(const Grammar& g, std::size_t max_size, std::mt19937_64& rng);

// Between 1 and max_formulas formulas, total size in [1, max_total].
std::vector<Formula> random_multiset(const Grammar& g, std::size_t max_total, std::size_t max_formulas,
                                     std::mt19937_64& rng);

// Every implicational sequent G |- A over `atoms` with total size at most
// `max_total`; G is a sorted multiset.
std::vector<Sequent> implicational_sequents(const std::vector<std::string>& atoms, std::size_t max_total);

// Ordinary BVASSs with at most three states and two counters, each with a
// designated leaf set and root configuration.
struct BvassCase {
  std::string name;
  Abvass machine;
  std::vector<StateId> leaves;
  Config root;
};
std::vector<BvassCase> hand_built_bvass();

}  // namespace subtower
