#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "subtower/formula.hpp"
#include "subtower/sequent.hpp"

namespace subtower {

// How exponentials behave. Standard: dereliction and promotion (!D, !P and
// the classical ? and ! rules). Functorial: !F / F only. Light: the ! and §
// rules of light affine logic.
enum class Exponentials : std::uint8_t { None, Standard, Functorial, Light };

// Which formulas may be weakened away. BangOnly keeps only !W (intuitionistic)
// or ?W (classical).
enum class Weakening : std::uint8_t { None, BangOnly, Full };

struct System {
  std::string name;
  Side side = Side::Intuitionistic;
  Fragment language;
  Weakening weakening = Weakening::Full;
  bool right_weakening = false;  // W'
  Exponentials exponentials = Exponentials::None;
  // Formulas B with `|- B` as extra initial sequents, sorted and distinct.
  std::vector<Formula> axioms;

  bool has(Conn c) const { return language.contains(c); }
  bool has_bang() const { return has(Conn::Bang); }
  // Contraction on !A (left) or ?A (classical right) is available.
  bool has_contraction() const {
    return side == Side::Intuitionistic ? has(Conn::Bang) : has(Conn::Quest);
  }
  // Whether f may be removed by a weakening rule.
  bool weakenable(Formula f) const;
  // Whether f is an exponential formula that contraction applies to:
  // !A on the left, ?A in a classical sequent.
  bool is_banged(Formula f) const {
    return side == Side::Intuitionistic ? f.kind() == Kind::Bang : f.kind() == Kind::Quest;
  }
  bool admits(Formula f) const;
  bool admits(const Sequent& s) const;
};

// Systems by name: ILZW, ILZW' (also ILZWprime), ILLW, ILL, LLW, LL, ELLW,
// IEZW, IELW, BCK, BCI, FLei, FLew, FLplus_ei, InFLew, ILAL. A suffix
// ":-o,!" restricts the language to a sub-fragment, e.g. "ILLW:-o,!".
System system_by_name(std::string_view name);
std::vector<std::string> system_names();

// L[Φ]. Throws std::invalid_argument when some B lies outside the language.
System with_axioms(System sys, const std::vector<Formula>& phi);

// The same system restricted to a sub-fragment of its language.
System restrict(System sys, Fragment k);

}  // namespace subtower
