#pragma once

#include <map>
#include <string>
#include <vector>

#include "subtower/sequent.hpp"

namespace subtower {

// ¬_F A, i.e. A -o F.
Formula neg(Formula a, Formula f);

// The negative translation A^[F] of a classical formula into an
// intuitionistic one. No simplification is performed.
Formula neg_translate(Formula a, Formula f);
// Pointwise on a classical sequent: |- G becomes G^[F] |- Pi, where Pi is
// `stoup` (F itself for the LLW/ILLW pairing, empty for the ⊥ instance).
Sequent neg_translate(const Sequent& s, Formula f, Formula stoup);

// The classical image of an intuitionistic formula: B -o C becomes B_^ | C_.
// Throws std::invalid_argument on $.
Formula underline(Formula a);

using Substitution = std::map<std::string, Formula>;
// Homomorphic extension with tau(q^) = tau(q)^; unmapped variables are kept.
Formula apply_substitution(const Substitution& tau, Formula a);

// {A^, A | 1}.
std::vector<Formula> phi_set(Formula a);

// Removes every $ from an ILAL formula.
Formula erase_paragraph(Formula a);
Sequent erase_paragraph(const Sequent& s);

// First of x, x0, x1, ... that does not occur in any of the formulas.
std::string fresh_variable(const std::vector<Formula>& in);
std::string fresh_variable(const Sequent& s);

}  // namespace subtower
