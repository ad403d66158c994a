#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subtower/proof.hpp"

namespace subtower {

struct Budget {
  std::size_t max_depth = 64;
  // Charged steps per branch: extra copies of a !-formula (contraction),
  // and cuts against non-logical axioms in direct deducibility search.
  std::size_t max_bang_contractions = 2;
  std::size_t max_prenex_copies = 4;
  std::size_t max_nodes = 200000;
  // Per-coordinate counter cap for machine search.
  std::size_t counter_cap = 8;
  std::size_t max_tree_height = 256;
};

// Defaults, overridden by SUBTOWER_DEFAULT_BUDGET when set.
Budget default_budget();
// "depth=64,contractions=2,nodes=200000,nmax=4,cap=8,height=256"; any subset
// of keys, applied on top of `base`. Throws std::invalid_argument.
Budget parse_budget(std::string_view text, Budget base = {});
std::string to_string(const Budget& b);

enum class Outcome { Proved, Refuted, Unknown };
std::string to_string(Outcome o);

struct SearchStats {
  std::size_t nodes = 0;
  std::size_t depth = 0;  // deepest iterative-deepening bound tried
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<ProofTree> proof;  // set iff Proved
  std::string note;                // which budget was hit, or the route taken
  SearchStats stats;
  std::optional<std::size_t> witness_n;  // prenex_expand_prove only
  // Whether `proof` contains cuts against axioms (direct deducibility).
  bool uses_axiom_cuts = false;

  bool proved() const { return outcome == Outcome::Proved; }
  bool conclusive() const { return outcome != Outcome::Unknown; }
};

// Bounded cut-free backward search. Refuted only when nothing was truncated.
// Throws std::invalid_argument for goals outside sys's language or a budget
// with a zero field.
Verdict prove(const System& sys, const Sequent& goal, const Budget& b = default_budget());

// Complete decision for implicational BCK sequents; never Unknown.
Verdict prove_bck(const Sequent& goal);
// Conjectured cap on the size of a minimal BCK proof: formula occurrences
// plus connective occurrences plus one.
std::size_t bck_bound(const Sequent& goal);

enum class Route { Direct, Reduction };

struct Reduced {
  System system;
  Sequent goal;
};
// The provability instance that `base[phi] |- goal` reduces to:
// !phi prefixed in ILZW / ILZW' / ILLW / ILL, or ?phi^ in LLW.
Reduced reduce_deducibility(const System& base, const std::vector<Formula>& phi, const Sequent& goal);

// Deducibility of goal from axioms phi over base (FLei, FLew, FLplus_ei, BCK,
// BCI, InFLew). Direct search uses axiom leaves and charged cuts on them.
Verdict deduce(const System& base, const std::vector<Formula>& phi, const Sequent& goal, const Budget& b,
               Route route = Route::Reduction);

// For a !-prenex goal !G, D |- P (classically |- ?G, D): searches G^n, D |- P
// in target for n = 0..max_prenex_copies and reports the least n that works.
// Throws std::invalid_argument when the goal is not prenex.
Verdict prenex_expand_prove(const System& target, const Sequent& goal, const Budget& b = default_budget());

// Splits a prenex goal into the exponential bodies and the remainder;
// nullopt when the goal is not prenex.
struct Prenex {
  std::vector<Formula> banged;  // bodies of the !/? prefix
  Sequent rest;
};
std::optional<Prenex> split_prenex(const Sequent& goal);

}  // namespace subtower
