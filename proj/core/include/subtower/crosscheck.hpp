#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subtower/corpus.hpp"
#include "subtower/encoders.hpp"
#include "subtower/prover.hpp"

namespace subtower {

struct LabeledVerdict {
  std::string label;  // e.g. "LLW |- G"
  Outcome outcome = Outcome::Unknown;
  std::string note;
};

// One equivalence instance: verdicts that must coincide whenever conclusive.
struct CaseResult {
  std::string instance;
  std::vector<LabeledVerdict> verdicts;
  // Witness checks: proofs, deduction trees, normal forms, encoded shapes.
  std::size_t certificates = 0;
  std::size_t normalizations = 0;
  std::size_t rejections = 0;              // checker rejections, subset of failures
  std::size_t normalization_failures = 0;  // subset of failures
  double normalize_seconds = 0;
  std::vector<std::string> failures;

  bool conclusive() const;  // every verdict is conclusive
  bool agree() const;       // no two conclusive verdicts differ
};

struct SuiteReport {
  std::string suite;
  std::vector<CaseResult> cases;
  double seconds = 0;

  std::size_t conclusive() const;
  std::size_t disagreements() const;
  std::size_t certificates() const;
  std::size_t normalizations() const;
  std::size_t failures() const;
  bool passed() const { return disagreements() == 0 && failures() == 0; }
  std::string summary() const;
  std::string to_json(int indent = 2) const;
};

struct SuiteOptions {
  std::size_t max_size = 6;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  Budget budget = default_budget();
  unsigned workers = 1;
  // Enumerate every single-formula instance up to max_size instead of
  // sampling `count` instances.
  bool exhaustive = false;
};

std::vector<std::string> suite_names();
// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, const SuiteOptions& o);

// Runs independent jobs on `workers` threads; results keep job order.
std::vector<CaseResult> run_jobs(const std::vector<std::function<CaseResult()>>& jobs, unsigned workers);

// Individual harnesses.
enum class TranslationPair { LLW_ILLW, ELLW_IELW, LLW_ILZW, LL_ILL };
CaseResult check_translation(TranslationPair p, const Sequent& classical, const Budget& b);
CaseResult check_encoder(Variant v, Formula f, const Budget& b);
CaseResult check_bvass(const BvassCase& c, const Budget& b);
// !G, D |- A in {-o,!}-ILLW against D |- A in BCK, FL+ei, FLei, FLew over sigma(G).
CaseResult check_prenex(const Sequent& goal, const Budget& b);
// Direct base[phi] search, the !-prefixed reduction and prenex expansion.
CaseResult check_deducibility(const System& base, const std::vector<Formula>& phi, const Sequent& goal,
                              const Budget& b);
// |- ?G, A in LLW against |- ?G, !A in ELLW.
CaseResult check_llw_ellw(const std::vector<Formula>& gamma, Formula a, const Budget& b);

// Whether every formula is a literal or ?X with X built from literals by
// tensor and par.
bool is_quest_prenex_multiplicative(const Sequent& s);

}  // namespace subtower
