#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "subtower/formula.hpp"

namespace subtower {

enum class Side : std::uint8_t { Intuitionistic, Classical };

inline Polarity polarity_of(Side s) {
  return s == Side::Intuitionistic ? Polarity::Intuitionistic : Polarity::Classical;
}

// `ctx` is the antecedent of an intuitionistic sequent or the whole
// right-hand side of a classical one. It is kept sorted so that equal
// sequents compare and hash equal. `stoup` is null when empty and always
// null for classical sequents.
class Sequent {
 public:
  Sequent() = default;

  static Sequent intuitionistic(std::vector<Formula> antecedent, Formula stoup = {});
  static Sequent classical(std::vector<Formula> formulas);

  Side side() const { return side_; }
  bool is_classical() const { return side_ == Side::Classical; }
  const std::vector<Formula>& ctx() const { return ctx_; }
  Formula stoup() const { return stoup_; }

  // Sum of formula sizes.
  std::size_t size() const;
  std::size_t hash() const;

  Sequent with_ctx(std::vector<Formula> ctx) const;
  Sequent with_stoup(Formula stoup) const;
  Sequent plus(Formula f) const;  // one more copy of f in ctx

  bool operator==(const Sequent& o) const {
    return side_ == o.side_ && stoup_ == o.stoup_ && ctx_ == o.ctx_;
  }
  bool operator!=(const Sequent& o) const { return !(*this == o); }

 private:
  Side side_ = Side::Intuitionistic;
  std::vector<Formula> ctx_;
  Formula stoup_;
};

struct SequentHash {
  std::size_t operator()(const Sequent& s) const { return s.hash(); }
};

// Grammar: "A, B |- C", "A |-", "|- C" (intuitionistic) or "|- A, B"
// (classical). "⊢" is accepted for "|-".
Sequent parse_sequent(std::string_view text, Side side);
std::string to_string(const Sequent& s);

// Multiset helpers over sorted formula vectors.
namespace ms {
void sort(std::vector<Formula>& v);
std::vector<Formula> sum(const std::vector<Formula>& a, const std::vector<Formula>& b);
// Removes one copy of f; returns false when absent.
bool remove_one(std::vector<Formula>& v, Formula f);
bool contains(const std::vector<Formula>& v, Formula f);
std::size_t count(const std::vector<Formula>& v, Formula f);
}  // namespace ms

}  // namespace subtower
