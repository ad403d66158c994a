#include "subtower/translate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace subtower {

Formula neg(Formula a, Formula f) { return Formula::lolli(a, f); }

Formula neg_translate(Formula a, Formula f) {
  auto t = [&](Formula b) { return neg_translate(b, f); };
  switch (a.kind()) {
    case Kind::Var: return neg(a, f);
    case Kind::DualVar: return Formula::var(a.name());
    case Kind::One: return neg(Formula::one(), f);
    case Kind::Bot: return Formula::one();
    case Kind::Top: return Formula::zero();
    case Kind::Zero: return neg(Formula::zero(), f);
    case Kind::Tensor: return Formula::lolli(neg(t(a.left()), f), t(a.right()));
    case Kind::Par: return neg(Formula::lolli(t(a.left()), neg(t(a.right()), f)), f);
    case Kind::With: return Formula::plus(t(a.left()), t(a.right()));
    case Kind::Plus: return neg(Formula::plus(neg(t(a.left()), f), neg(t(a.right()), f)), f);
    case Kind::Bang: return neg(Formula::bang(neg(t(a.body()), f)), f);
    case Kind::Quest: return Formula::bang(t(a.body()));
    case Kind::Lolli:
    case Kind::Para: break;
  }
  throw std::invalid_argument("negative translation expects a classical formula, got " + to_string(a));
}

Sequent neg_translate(const Sequent& s, Formula f, Formula stoup) {
  if (!s.is_classical()) throw std::invalid_argument("negative translation expects a classical sequent");
  std::vector<Formula> ctx;
  for (Formula a : s.ctx()) ctx.push_back(neg_translate(a, f));
  return Sequent::intuitionistic(std::move(ctx), stoup);
}

Formula underline(Formula a) {
  switch (a.kind()) {
    case Kind::Var:
    case Kind::One:
    case Kind::Top:
    case Kind::Bot:
    case Kind::Zero: return a;
    case Kind::Lolli: return Formula::par(dual(underline(a.left())), underline(a.right()));
    case Kind::Tensor:
    case Kind::With:
    case Kind::Plus: return Formula::binary(a.kind(), underline(a.left()), underline(a.right()));
    case Kind::Bang: return Formula::bang(underline(a.body()));
    default: break;
  }
  throw std::invalid_argument("underline expects an intuitionistic formula without $, got " + to_string(a));
}

Formula apply_substitution(const Substitution& tau, Formula a) {
  switch (a.kind()) {
    case Kind::Var:
    case Kind::DualVar: {
      auto it = tau.find(a.name());
      if (it == tau.end()) return a;
      return a.kind() == Kind::Var ? it->second : dual(it->second);
    }
    case Kind::One:
    case Kind::Top:
    case Kind::Bot:
    case Kind::Zero: return a;
    default: break;
  }
  if (a.is_unary()) return Formula::unary(a.kind(), apply_substitution(tau, a.body()));
  return Formula::binary(a.kind(), apply_substitution(tau, a.left()), apply_substitution(tau, a.right()));
}

std::vector<Formula> phi_set(Formula a) { return {dual(a), Formula::par(a, Formula::one())}; }

Formula erase_paragraph(Formula a) {
  if (a.kind() == Kind::Para) return erase_paragraph(a.body());
  if (a.is_atom() || a.is_constant()) return a;
  if (a.is_unary()) return Formula::unary(a.kind(), erase_paragraph(a.body()));
  return Formula::binary(a.kind(), erase_paragraph(a.left()), erase_paragraph(a.right()));
}

Sequent erase_paragraph(const Sequent& s) {
  std::vector<Formula> ctx;
  for (Formula f : s.ctx()) ctx.push_back(erase_paragraph(f));
  Formula st = s.stoup() ? erase_paragraph(s.stoup()) : Formula{};
  return s.is_classical() ? Sequent::classical(std::move(ctx)) : Sequent::intuitionistic(std::move(ctx), st);
}

std::string fresh_variable(const std::vector<Formula>& in) {
  std::set<std::string> used;
  for (Formula f : in)
    for (auto& n : atoms_of(f)) used.insert(n);
  if (!used.count("x")) return "x";
  for (std::size_t i = 0;; ++i) {
    std::string n = "x" + std::to_string(i);
    if (!used.count(n)) return n;
  }
}

std::string fresh_variable(const Sequent& s) {
  std::vector<Formula> all = s.ctx();
  if (s.stoup()) all.push_back(s.stoup());
  return fresh_variable(all);
}

}  // namespace subtower
