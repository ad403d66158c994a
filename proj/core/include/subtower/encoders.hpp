#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subtower/abvass.hpp"
#include "subtower/formula.hpp"
#include "subtower/sequent.hpp"

namespace subtower {

// E simulates IEZW (functorial promotion through `func`); IPrime simulates
// ILZW' (W', !D and !P instead of `func`).
enum class Variant { E, IPrime };
std::string to_string(Variant v);

struct StateInfo {
  enum class Kind : std::uint8_t { Main, Leaf, Intermediate };
  Kind kind = Kind::Main;
  std::uint32_t mask = 0;   // subset of the !-subformulas, bit i = bang[i]
  int x = -1;               // closure index of the stoup, -1 for the empty stoup
  std::string family;       // intermediates: rule family, e.g. "plusL1"
  int formula = -1;         // intermediates: closure index of the principal formula
  std::uint32_t mask2 = 0;  // lolliL split intermediates: the right-hand subset
};

struct EncodedMachine {
  Abvass machine;
  Formula formula;
  Variant variant = Variant::E;
  Closure closure;                 // coordinate k is closure.formulas[k]
  std::vector<int> bang;           // closure indices of the !-subformulas
  StateId leaf = 0;
  std::vector<StateInfo> info;     // per state id
  std::map<std::string, StateId> by_descriptor;

  std::vector<StateId> leaves() const { return {leaf}; }
  bool is_bang_coordinate(std::size_t k) const;
  std::optional<StateId> main_state(std::uint32_t mask, int x) const;
  std::optional<StateId> find(const StateInfo& d) const;
  // JSON legend: state id -> {subset, stoup} or intermediate descriptor.
  std::string legend_json(int indent = 2) const;
};

std::string descriptor_key(const StateInfo& d);

// Builds the machine for F, generating states lazily from (∅, F) and from
// the main states of any extra root sequents. Throws std::invalid_argument
// when F lies outside the variant's language.
EncodedMachine encode_formula(Formula f, Variant v, const std::vector<Sequent>& extra_roots = {});

// Theta, Gamma |- Pi as (sigma(Theta), Pi-dagger, v_Gamma). A general
// antecedent is split into its !-part and the rest first. Throws
// std::invalid_argument for formulas outside the closure or states that
// were not generated.
Config sequent_to_config(const EncodedMachine& em, const Sequent& s);

// Every node at a main state whose vector has a !-coordinate applies store,
// and losses happen only at main states.
bool is_standard(const EncodedMachine& em, const DeductionTree& t);
// Reshapes a lossy tree for an encoded machine into standard form with the
// same root. The root must be a main state.
DeductionTree normalize_standard(const EncodedMachine& em, const DeductionTree& t);

// |- ?<T>, ?Q_l, theta(q, v) for an ordinary BVASS. Throws
// std::invalid_argument for machines with forks, zero tests or non-unit
// updates.
Sequent encode_bvass_to_sequent(const Abvass& b, const std::vector<StateId>& leaves, const Config& target);
// Variable name used for state q in the encoding.
std::string bvass_state_variable(const Abvass& b, StateId q);

}  // namespace subtower
