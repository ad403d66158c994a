#include <algorithm>
#include <stdexcept>

#include "subtower/proof.hpp"

namespace subtower {

namespace {

using Bag = std::vector<Formula>;

// Every way to split a sorted multiset into (left, right), each distinct
// sub-multiset once.
std::vector<std::pair<Bag, Bag>> splits(const Bag& b) {
  std::vector<std::pair<Formula, std::size_t>> groups;
  for (Formula f : b) {
    if (!groups.empty() && groups.back().first == f)
      ++groups.back().second;
    else
      groups.emplace_back(f, 1);
  }
  std::vector<std::pair<Bag, Bag>> out;
  std::vector<std::size_t> take(groups.size(), 0);
  while (true) {
    Bag l, r;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      l.insert(l.end(), take[i], groups[i].first);
      r.insert(r.end(), groups[i].second - take[i], groups[i].first);
    }
    out.emplace_back(std::move(l), std::move(r));
    std::size_t i = 0;
    while (i < groups.size() && take[i] == groups[i].second) take[i++] = 0;
    if (i == groups.size()) break;
    ++take[i];
  }
  return out;
}

Bag without(const Bag& b, Formula f) {
  Bag out = b;
  ms::remove_one(out, f);
  return out;
}

Bag with(Bag b, Formula f) {
  b.push_back(f);
  ms::sort(b);
  return b;
}

std::vector<Formula> distinct(const Bag& b) {
  std::vector<Formula> out;
  for (Formula f : b)
    if (out.empty() || out.back() != f) out.push_back(f);
  return out;
}

void intuitionistic_rules(const System& sys, const Sequent& g, std::vector<RuleApplication>& out) {
  const Bag& G = g.ctx();
  const Formula P = g.stoup();
  auto seq = [](Bag ctx, Formula st = {}) { return Sequent::intuitionistic(std::move(ctx), st); };
  auto emit = [&](std::string rule, Formula pr, std::vector<Sequent> prem) {
    out.push_back({std::move(rule), pr, std::move(prem)});
  };
  using enum Exponentials;

  if (G.size() == 1 && P && G[0] == P) emit("Init", P, {});
  if (G.empty() && P && P.kind() == Kind::One) emit("1R", P, {});
  if (G.size() == 1 && G[0].kind() == Kind::Bot && !P) emit("botL", G[0], {});
  if (P && P.kind() == Kind::Top) emit("topR", P, {});
  if (G.empty() && P && std::binary_search(sys.axioms.begin(), sys.axioms.end(), P, FormulaLess{}))
    emit("Ax", P, {});

  for (Formula c : distinct(G)) {
    Bag rest = without(G, c);
    switch (c.kind()) {
      case Kind::Zero: emit("0L", c, {}); break;
      case Kind::One: emit("1L", c, {seq(rest, P)}); break;
      case Kind::Tensor: emit("*L", c, {seq(with(with(rest, c.left()), c.right()), P)}); break;
      case Kind::With:
        emit("&L1", c, {seq(with(rest, c.left()), P)});
        emit("&L2", c, {seq(with(rest, c.right()), P)});
        break;
      case Kind::Plus:
        emit("+L", c, {seq(with(rest, c.left()), P), seq(with(rest, c.right()), P)});
        break;
      case Kind::Lolli:
        for (auto& [l, r] : splits(rest))
          emit("-oL", c, {seq(l, c.left()), seq(with(r, c.right()), P)});
        break;
      case Kind::Bang:
        if (sys.exponentials == Standard) emit("!D", c, {seq(with(rest, c.body()), P)});
        emit("!C", c, {seq(with(G, c), P)});
        break;
      default: break;
    }
    if (sys.weakenable(c)) emit("W", c, {seq(rest, P)});
  }

  if (P) {
    switch (P.kind()) {
      case Kind::Bot: emit("botR", P, {seq(G)}); break;
      case Kind::Lolli: emit("-oR", P, {seq(with(G, P.left()), P.right())}); break;
      case Kind::Tensor:
        for (auto& [l, r] : splits(G)) emit("*R", P, {seq(l, P.left()), seq(r, P.right())});
        break;
      case Kind::With: emit("&R", P, {seq(G, P.left()), seq(G, P.right())}); break;
      case Kind::Plus:
        emit("+R1", P, {seq(G, P.left())});
        emit("+R2", P, {seq(G, P.right())});
        break;
      case Kind::Bang: {
        bool all_bang = std::all_of(G.begin(), G.end(), [](Formula f) { return f.kind() == Kind::Bang; });
        if (!all_bang) break;
        Bag inner;
        for (Formula f : G) inner.push_back(f.body());
        ms::sort(inner);
        if (sys.exponentials == Standard) emit("!P", P, {seq(G, P.body())});
        if (sys.exponentials == Functorial) emit("!F", P, {seq(inner, P.body())});
        if (sys.exponentials == Light && G.size() <= 1) emit("!", P, {seq(inner, P.body())});
        break;
      }
      case Kind::Para: {
        if (sys.exponentials != Light) break;
        bool ok = std::all_of(G.begin(), G.end(),
                              [](Formula f) { return f.kind() == Kind::Bang || f.kind() == Kind::Para; });
        if (!ok) break;
        Bag inner;
        for (Formula f : G) inner.push_back(f.body());
        ms::sort(inner);
        emit("$", P, {seq(inner, P.body())});
        break;
      }
      default: break;
    }
    if (sys.right_weakening) emit("W'", P, {seq(G)});
  }
}

void classical_rules(const System& sys, const Sequent& g, std::vector<RuleApplication>& out) {
  const Bag& G = g.ctx();
  auto seq = [](Bag ctx) { return Sequent::classical(std::move(ctx)); };
  auto emit = [&](std::string rule, Formula pr, std::vector<Sequent> prem) {
    out.push_back({std::move(rule), pr, std::move(prem)});
  };
  using enum Exponentials;

  if (G.size() == 2 && G[1] == dual(G[0])) emit("Init", G[0], {});
  if (G.size() == 1 && G[0].kind() == Kind::One) emit("1", G[0], {});
  if (G.size() == 1 && std::binary_search(sys.axioms.begin(), sys.axioms.end(), G[0], FormulaLess{}))
    emit("Ax", G[0], {});

  for (Formula c : distinct(G)) {
    Bag rest = without(G, c);
    switch (c.kind()) {
      case Kind::Top: emit("top", c, {}); break;
      case Kind::Bot: emit("bot", c, {seq(rest)}); break;
      case Kind::Par: emit("|", c, {seq(with(with(rest, c.left()), c.right()))}); break;
      case Kind::Tensor:
        for (auto& [l, r] : splits(rest)) emit("*", c, {seq(with(l, c.left())), seq(with(r, c.right()))});
        break;
      case Kind::With: emit("&", c, {seq(with(rest, c.left())), seq(with(rest, c.right()))}); break;
      case Kind::Plus:
        emit("+1", c, {seq(with(rest, c.left()))});
        emit("+2", c, {seq(with(rest, c.right()))});
        break;
      case Kind::Quest:
        if (sys.exponentials == Standard) emit("?", c, {seq(with(rest, c.body()))});
        emit("?C", c, {seq(with(G, c))});
        break;
      case Kind::Bang: {
        bool all_quest =
            std::all_of(rest.begin(), rest.end(), [](Formula f) { return f.kind() == Kind::Quest; });
        if (!all_quest) break;
        if (sys.exponentials == Standard) emit("!", c, {seq(with(rest, c.body()))});
        if (sys.exponentials == Functorial) {
          Bag inner;
          for (Formula f : rest) inner.push_back(f.body());
          emit("F", c, {seq(with(inner, c.body()))});
        }
        break;
      }
      default: break;
    }
    if (sys.weakenable(c)) emit("W", c, {seq(rest)});
  }
}

}  // namespace

std::vector<RuleApplication> applicable_rules(const System& sys, const Sequent& goal) {
  if (!sys.admits(goal))
    throw std::invalid_argument(to_string(goal) + " is outside the language of " + sys.name);
  std::vector<RuleApplication> out;
  if (sys.side == Side::Intuitionistic)
    intuitionistic_rules(sys, goal, out);
  else
    classical_rules(sys, goal, out);
  return out;
}

}  // namespace subtower
