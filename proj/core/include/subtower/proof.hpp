#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "subtower/sequent.hpp"
#include "subtower/system.hpp"

namespace subtower {

// Rule names use ASCII spellings of the connectives:
//   intuitionistic: Init 1R botL topR 0L Cut 1L botR -oL -oR *L *R &L1 &L2
//                   &R +R1 +R2 +L !D !P !C !F W W' Ax, and for ILAL "!" "$"
//   classical:      Init 1 top bot * | & +1 +2 ? ! F W ?C Cut Ax
struct ProofTree {
  Sequent sequent;
  std::string rule;
  Formula principal;  // may be null
  std::vector<ProofTree> children;

  std::size_t node_count() const;
  // Nodes other than weakening steps.
  std::size_t logical_size() const;
  std::size_t height() const;
};

std::string proof_to_json(const ProofTree& t, int indent = -1);
ProofTree proof_from_json(std::string_view json, Side side);

// Outcome of an independent certificate check. `path` lists child indices
// from the root to the offending node.
struct CheckResult {
  bool ok = true;
  std::string message;
  std::vector<std::size_t> path;
  explicit operator bool() const { return ok; }
};

CheckResult check_proof(const System& sys, const ProofTree& t, bool allow_cut);

// One backward rule step: the rule, its principal formula, its premises.
struct RuleApplication {
  std::string rule;
  Formula principal;
  std::vector<Sequent> premises;
};

// Every cut-free one-step backward application, including all context
// splits and one copy of each contraction. Throws std::invalid_argument on
// formulas outside the system's language.
std::vector<RuleApplication> applicable_rules(const System& sys, const Sequent& goal);

}  // namespace subtower
