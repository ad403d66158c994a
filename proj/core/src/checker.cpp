// Certificate checker. Deliberately shares no code with the search engine or
// the rule enumerator: every rule shape is re-derived here from the
// conclusion and the premises as plain multiset arithmetic.

#include <algorithm>
#include <functional>
#include <optional>

#include "subtower/proof.hpp"

namespace subtower {

namespace {

using Bag = std::vector<Formula>;

Bag sorted(Bag b) {
  std::sort(b.begin(), b.end(), FormulaLess{});
  return b;
}

std::optional<Bag> minus(const Bag& b, Formula f) {
  Bag out = b;
  auto it = std::find(out.begin(), out.end(), f);
  if (it == out.end()) return std::nullopt;
  out.erase(it);
  return out;
}

Bag plus(Bag b, Formula f) {
  b.push_back(f);
  return sorted(std::move(b));
}

bool same(const Bag& a, const Bag& b) { return sorted(a) == sorted(b); }

Bag join(const Bag& a, const Bag& b) {
  Bag out = a;
  out.insert(out.end(), b.begin(), b.end());
  return sorted(std::move(out));
}

// Candidate principal formulas: the annotated one, or every distinct member.
std::vector<Formula> candidates(const ProofTree& t, const Bag& pool, Kind k) {
  std::vector<Formula> out;
  if (t.principal) {
    if (t.principal.kind() == k && std::find(pool.begin(), pool.end(), t.principal) != pool.end())
      out.push_back(t.principal);
    return out;
  }
  for (Formula f : pool)
    if (f.kind() == k && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

std::vector<Formula> any_candidates(const ProofTree& t, const Bag& pool) {
  std::vector<Formula> out;
  if (t.principal) {
    if (std::find(pool.begin(), pool.end(), t.principal) != pool.end()) out.push_back(t.principal);
    return out;
  }
  for (Formula f : pool)
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

using Verdict = std::optional<std::string>;  // nullopt means the node is fine
const Verdict kOk = std::nullopt;

Verdict arity(const ProofTree& t, std::size_t n) {
  if (t.children.size() == n) return kOk;
  return "rule " + t.rule + " expects " + std::to_string(n) + " premise(s), found " +
         std::to_string(t.children.size());
}

bool any_of(const std::vector<Formula>& cs, const std::function<bool(Formula)>& pred) {
  return std::any_of(cs.begin(), cs.end(), pred);
}

Verdict check_intuitionistic(const System& sys, const ProofTree& t, bool allow_cut) {
  const Bag& G = t.sequent.ctx();
  const Formula P = t.sequent.stoup();
  const std::string& r = t.rule;
  auto kid = [&](std::size_t i) -> const Sequent& { return t.children[i].sequent; };
  auto fail = [&](const std::string& why) -> Verdict { return "rule " + r + ": " + why; };
  auto stoup_is = [&](Kind k) { return P && P.kind() == k; };
  bool standard = sys.exponentials == Exponentials::Standard;
  bool functorial = sys.exponentials == Exponentials::Functorial;
  bool light = sys.exponentials == Exponentials::Light;

  if (r == "Init") {
    if (auto e = arity(t, 0)) return e;
    if (G.size() == 1 && P && G[0] == P) return kOk;
    return fail("conclusion is not A |- A");
  }
  if (r == "1R") {
    if (auto e = arity(t, 0)) return e;
    if (G.empty() && stoup_is(Kind::One)) return kOk;
    return fail("conclusion is not |- 1");
  }
  if (r == "botL") {
    if (auto e = arity(t, 0)) return e;
    if (G.size() == 1 && G[0].kind() == Kind::Bot && !P) return kOk;
    return fail("conclusion is not bot |-");
  }
  if (r == "topR") {
    if (auto e = arity(t, 0)) return e;
    if (stoup_is(Kind::Top)) return kOk;
    return fail("stoup is not top");
  }
  if (r == "0L") {
    if (auto e = arity(t, 0)) return e;
    if (std::any_of(G.begin(), G.end(), [](Formula f) { return f.kind() == Kind::Zero; })) return kOk;
    return fail("no 0 in the antecedent");
  }
  if (r == "Ax") {
    if (auto e = arity(t, 0)) return e;
    if (G.empty() && P && std::find(sys.axioms.begin(), sys.axioms.end(), P) != sys.axioms.end())
      return kOk;
    return fail("conclusion is not |- B for an axiom B");
  }
  if (r == "Cut") {
    if (!allow_cut) return fail("cut is not permitted here");
    if (auto e = arity(t, 2)) return e;
    Formula a = kid(0).stoup();
    if (!a) return fail("left premise has an empty stoup");
    auto delta = minus(kid(1).ctx(), a);
    if (!delta) return fail("right premise lacks the cut formula");
    if (kid(1).stoup() != P) return fail("stoup mismatch");
    if (same(G, join(kid(0).ctx(), *delta))) return kOk;
    return fail("contexts do not add up");
  }
  if (r == "1L") {
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::One)) {
      if (kid(0).stoup() == P && same(kid(0).ctx(), *minus(G, c))) return kOk;
    }
    return fail("premise is not the conclusion without 1");
  }
  if (r == "botR") {
    if (auto e = arity(t, 1)) return e;
    if (stoup_is(Kind::Bot) && !kid(0).stoup() && same(kid(0).ctx(), G)) return kOk;
    return fail("premise is not Gamma |-");
  }
  if (r == "-oL") {
    if (auto e = arity(t, 2)) return e;
    for (Formula c : candidates(t, G, Kind::Lolli)) {
      Bag rest = *minus(G, c);
      if (kid(0).stoup() != c.left() || kid(1).stoup() != P) continue;
      auto delta = minus(kid(1).ctx(), c.right());
      if (delta && same(rest, join(kid(0).ctx(), *delta))) return kOk;
    }
    return fail("premises do not match an implication split");
  }
  if (r == "-oR") {
    if (auto e = arity(t, 1)) return e;
    if (stoup_is(Kind::Lolli) && kid(0).stoup() == P.right() && same(kid(0).ctx(), plus(G, P.left())))
      return kOk;
    return fail("premise is not A, Gamma |- B");
  }
  if (r == "*L") {
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::Tensor)) {
      if (kid(0).stoup() == P && same(kid(0).ctx(), plus(plus(*minus(G, c), c.left()), c.right())))
        return kOk;
    }
    return fail("premise is not A, B, Gamma |- Pi");
  }
  if (r == "*R") {
    if (auto e = arity(t, 2)) return e;
    if (stoup_is(Kind::Tensor) && kid(0).stoup() == P.left() && kid(1).stoup() == P.right() &&
        same(G, join(kid(0).ctx(), kid(1).ctx())))
      return kOk;
    return fail("premises do not split the context");
  }
  if (r == "&L1" || r == "&L2") {
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::With)) {
      Formula part = r == "&L1" ? c.left() : c.right();
      if (kid(0).stoup() == P && same(kid(0).ctx(), plus(*minus(G, c), part))) return kOk;
    }
    return fail("premise does not select a component");
  }
  if (r == "&R") {
    if (auto e = arity(t, 2)) return e;
    if (stoup_is(Kind::With) && kid(0).stoup() == P.left() && kid(1).stoup() == P.right() &&
        same(kid(0).ctx(), G) && same(kid(1).ctx(), G))
      return kOk;
    return fail("premises are not Gamma |- A and Gamma |- B");
  }
  if (r == "+R1" || r == "+R2") {
    if (auto e = arity(t, 1)) return e;
    if (stoup_is(Kind::Plus) && kid(0).stoup() == (r == "+R1" ? P.left() : P.right()) &&
        same(kid(0).ctx(), G))
      return kOk;
    return fail("premise does not select a disjunct");
  }
  if (r == "+L") {
    if (auto e = arity(t, 2)) return e;
    for (Formula c : candidates(t, G, Kind::Plus)) {
      Bag rest = *minus(G, c);
      if (kid(0).stoup() == P && kid(1).stoup() == P && same(kid(0).ctx(), plus(rest, c.left())) &&
          same(kid(1).ctx(), plus(rest, c.right())))
        return kOk;
    }
    return fail("premises are not A, Gamma |- Pi and B, Gamma |- Pi");
  }
  if (r == "!D") {
    if (!standard) return fail("dereliction is not a rule of " + sys.name);
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::Bang)) {
      if (kid(0).stoup() == P && same(kid(0).ctx(), plus(*minus(G, c), c.body()))) return kOk;
    }
    return fail("premise is not A, Gamma |- Pi");
  }
  if (r == "!P") {
    if (!standard) return fail("promotion is not a rule of " + sys.name);
    if (auto e = arity(t, 1)) return e;
    if (!stoup_is(Kind::Bang)) return fail("stoup is not !A");
    if (!std::all_of(G.begin(), G.end(), [](Formula f) { return f.kind() == Kind::Bang; }))
      return fail("antecedent is not all banged");
    if (kid(0).stoup() == P.body() && same(kid(0).ctx(), G)) return kOk;
    return fail("premise is not !Gamma |- A");
  }
  if (r == "!F") {
    if (!functorial) return fail("functorial promotion is not a rule of " + sys.name);
    if (auto e = arity(t, 1)) return e;
    if (!stoup_is(Kind::Bang)) return fail("stoup is not !A");
    Bag inner;
    for (Formula f : G) {
      if (f.kind() != Kind::Bang) return fail("antecedent is not all banged");
      inner.push_back(f.body());
    }
    if (kid(0).stoup() == P.body() && same(kid(0).ctx(), inner)) return kOk;
    return fail("premise is not Gamma |- A");
  }
  if (r == "!C") {
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::Bang)) {
      if (kid(0).stoup() == P && same(kid(0).ctx(), plus(G, c))) return kOk;
    }
    return fail("premise is not !A, !A, Gamma |- Pi");
  }
  if (r == "W") {
    if (auto e = arity(t, 1)) return e;
    for (Formula c : any_candidates(t, G)) {
      if (!sys.weakenable(c)) continue;
      if (kid(0).stoup() == P && same(kid(0).ctx(), *minus(G, c))) return kOk;
    }
    return fail("premise is not the conclusion minus a weakenable formula");
  }
  if (r == "W'") {
    if (!sys.right_weakening) return fail("right weakening is not a rule of " + sys.name);
    if (auto e = arity(t, 1)) return e;
    if (P && !kid(0).stoup() && same(kid(0).ctx(), G)) return kOk;
    return fail("premise is not Gamma |-");
  }
  if (r == "!") {
    if (!light) return fail("the light ! rule is not a rule of " + sys.name);
    if (auto e = arity(t, 1)) return e;
    if (!stoup_is(Kind::Bang)) return fail("stoup is not !A");
    if (G.size() > 1) return fail("more than one antecedent formula");
    Bag inner;
    for (Formula f : G) {
      if (f.kind() != Kind::Bang) return fail("antecedent is not !E");
      inner.push_back(f.body());
    }
    if (kid(0).stoup() == P.body() && same(kid(0).ctx(), inner)) return kOk;
    return fail("premise is not E |- A");
  }
  if (r == "$") {
    if (!light) return fail("the paragraph rule is not a rule of " + sys.name);
    if (auto e = arity(t, 1)) return e;
    if (!stoup_is(Kind::Para)) return fail("stoup is not $A");
    Bag inner;
    for (Formula f : G) {
      if (f.kind() != Kind::Bang && f.kind() != Kind::Para)
        return fail("antecedent has a formula that is neither !B nor $B");
      inner.push_back(f.body());
    }
    if (kid(0).stoup() == P.body() && same(kid(0).ctx(), inner)) return kOk;
    return fail("premise is not Gamma, Delta |- A");
  }
  return "unknown intuitionistic rule '" + r + "'";
}

Verdict check_classical(const System& sys, const ProofTree& t, bool allow_cut) {
  const Bag& G = t.sequent.ctx();
  const std::string& r = t.rule;
  auto kid = [&](std::size_t i) -> const Bag& { return t.children[i].sequent.ctx(); };
  auto fail = [&](const std::string& why) -> Verdict { return "rule " + r + ": " + why; };
  bool standard = sys.exponentials == Exponentials::Standard;
  bool functorial = sys.exponentials == Exponentials::Functorial;

  if (r == "Init") {
    if (auto e = arity(t, 0)) return e;
    if (G.size() == 2 && is_classical(G[0]) && G[1] == dual(G[0])) return kOk;
    return fail("conclusion is not |- A, A^");
  }
  if (r == "1") {
    if (auto e = arity(t, 0)) return e;
    if (G.size() == 1 && G[0].kind() == Kind::One) return kOk;
    return fail("conclusion is not |- 1");
  }
  if (r == "top") {
    if (auto e = arity(t, 0)) return e;
    if (std::any_of(G.begin(), G.end(), [](Formula f) { return f.kind() == Kind::Top; })) return kOk;
    return fail("no top in the sequent");
  }
  if (r == "Ax") {
    if (auto e = arity(t, 0)) return e;
    if (G.size() == 1 && std::find(sys.axioms.begin(), sys.axioms.end(), G[0]) != sys.axioms.end())
      return kOk;
    return fail("conclusion is not |- B for an axiom B");
  }
  if (r == "Cut") {
    if (!allow_cut) return fail("cut is not permitted here");
    if (auto e = arity(t, 2)) return e;
    std::vector<Formula> cuts = t.principal ? std::vector<Formula>{t.principal} : kid(0);
    for (Formula a : cuts) {
      auto g1 = minus(kid(0), a);
      auto g2 = minus(kid(1), dual(a));
      if (g1 && g2 && same(G, join(*g1, *g2))) return kOk;
    }
    return fail("premises are not |- Gamma, A and |- A^, Delta");
  }
  if (r == "bot") {
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::Bot))
      if (same(kid(0), *minus(G, c))) return kOk;
    return fail("premise is not the conclusion without bot");
  }
  if (r == "*") {
    if (auto e = arity(t, 2)) return e;
    for (Formula c : candidates(t, G, Kind::Tensor)) {
      auto g1 = minus(kid(0), c.left());
      auto g2 = minus(kid(1), c.right());
      if (g1 && g2 && same(*minus(G, c), join(*g1, *g2))) return kOk;
    }
    return fail("premises do not split the context");
  }
  if (r == "|") {
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::Par))
      if (same(kid(0), plus(plus(*minus(G, c), c.left()), c.right()))) return kOk;
    return fail("premise is not |- Gamma, A, B");
  }
  if (r == "&") {
    if (auto e = arity(t, 2)) return e;
    for (Formula c : candidates(t, G, Kind::With)) {
      Bag rest = *minus(G, c);
      if (same(kid(0), plus(rest, c.left())) && same(kid(1), plus(rest, c.right()))) return kOk;
    }
    return fail("premises are not |- Gamma, A and |- Gamma, B");
  }
  if (r == "+1" || r == "+2") {
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::Plus))
      if (same(kid(0), plus(*minus(G, c), r == "+1" ? c.left() : c.right()))) return kOk;
    return fail("premise does not select a disjunct");
  }
  if (r == "?") {
    if (!standard) return fail("dereliction is not a rule of " + sys.name);
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::Quest))
      if (same(kid(0), plus(*minus(G, c), c.body()))) return kOk;
    return fail("premise is not |- Gamma, A");
  }
  if (r == "!" || r == "F") {
    if (r == "!" && !standard) return fail("promotion is not a rule of " + sys.name);
    if (r == "F" && !functorial) return fail("functorial promotion is not a rule of " + sys.name);
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::Bang)) {
      Bag rest = *minus(G, c);
      if (!std::all_of(rest.begin(), rest.end(), [](Formula f) { return f.kind() == Kind::Quest; }))
        continue;
      Bag expect;
      for (Formula f : rest) expect.push_back(r == "F" ? f.body() : f);
      expect.push_back(c.body());
      if (same(kid(0), expect)) return kOk;
    }
    return fail("premise does not match a promotion of the conclusion");
  }
  if (r == "W") {
    if (auto e = arity(t, 1)) return e;
    for (Formula c : any_candidates(t, G)) {
      if (!sys.weakenable(c)) continue;
      if (same(kid(0), *minus(G, c))) return kOk;
    }
    return fail("premise is not the conclusion minus a weakenable formula");
  }
  if (r == "?C") {
    if (auto e = arity(t, 1)) return e;
    for (Formula c : candidates(t, G, Kind::Quest))
      if (same(kid(0), plus(G, c))) return kOk;
    return fail("premise is not |- Gamma, ?A, ?A");
  }
  (void)any_of;
  return "unknown classical rule '" + r + "'";
}

bool walk(const System& sys, const ProofTree& t, bool allow_cut, std::vector<std::size_t>& path,
          CheckResult& out) {
  if (!sys.admits(t.sequent)) {
    out = {false, "sequent " + to_string(t.sequent) + " is outside the language of " + sys.name, path};
    return false;
  }
  for (const ProofTree& c : t.children) {
    if (c.sequent.side() != t.sequent.side()) {
      out = {false, "premise has the wrong sequent shape", path};
      return false;
    }
  }
  Verdict v = sys.side == Side::Intuitionistic ? check_intuitionistic(sys, t, allow_cut)
                                               : check_classical(sys, t, allow_cut);
  if (v) {
    out = {false, *v + " at " + to_string(t.sequent), path};
    return false;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    path.push_back(i);
    if (!walk(sys, t.children[i], allow_cut, path, out)) return false;
    path.pop_back();
  }
  return true;
}

}  // namespace

CheckResult check_proof(const System& sys, const ProofTree& t, bool allow_cut) {
  CheckResult out;
  std::vector<std::size_t> path;
  walk(sys, t, allow_cut, path, out);
  return out;
}

}  // namespace subtower
