#include "subtower/system.hpp"

#include <algorithm>
#include <stdexcept>

namespace subtower {

bool System::weakenable(Formula f) const {
  switch (weakening) {
    case Weakening::Full: return true;
    case Weakening::BangOnly: return is_banged(f);
    case Weakening::None: return false;
  }
  return false;
}

bool System::admits(Formula f) const {
  if (!in_fragment(f, language)) return false;
  return side == Side::Intuitionistic ? is_intuitionistic(f) : is_classical(f);
}

bool System::admits(const Sequent& s) const {
  if (s.side() != side) return false;
  if (s.stoup() && !admits(s.stoup())) return false;
  return std::all_of(s.ctx().begin(), s.ctx().end(), [&](Formula f) { return admits(f); });
}

namespace {

System make(std::string name, Side side, Fragment lang, Weakening w, bool w_right, Exponentials e) {
  System s;
  s.name = std::move(name);
  s.side = side;
  s.language = lang;
  s.weakening = w;
  s.right_weakening = w_right;
  s.exponentials = lang.contains(Conn::Bang) ? e : Exponentials::None;
  return s;
}

System base_system(std::string_view name) {
  using enum Side;
  const Fragment L = lang::intuitionistic_full();
  const Fragment Lp = lang::intuitionistic_plus();
  const Fragment LC = lang::classical_full();
  if (name == "ILZW") return make("ILZW", Intuitionistic, L, Weakening::Full, false, Exponentials::Standard);
  if (name == "ILZW'" || name == "ILZWprime" || name == "ILZW′")
    return make("ILZW'", Intuitionistic, L, Weakening::Full, true, Exponentials::Standard);
  if (name == "IEZW") return make("IEZW", Intuitionistic, L, Weakening::Full, false, Exponentials::Functorial);
  if (name == "ILLW") return make("ILLW", Intuitionistic, Lp, Weakening::Full, false, Exponentials::Standard);
  if (name == "IELW") return make("IELW", Intuitionistic, Lp, Weakening::Full, false, Exponentials::Functorial);
  if (name == "ILL") return make("ILL", Intuitionistic, Lp, Weakening::BangOnly, false, Exponentials::Standard);
  if (name == "LLW") return make("LLW", Classical, LC, Weakening::Full, false, Exponentials::Standard);
  if (name == "LL") return make("LL", Classical, LC, Weakening::BangOnly, false, Exponentials::Standard);
  if (name == "ELLW") return make("ELLW", Classical, LC, Weakening::Full, false, Exponentials::Functorial);
  if (name == "FLei") return make("FLei", Intuitionistic, lang::fl(), Weakening::Full, false, Exponentials::None);
  if (name == "FLew") return make("FLew", Intuitionistic, lang::fl(), Weakening::Full, true, Exponentials::None);
  if (name == "FLplus_ei" || name == "FL+ei")
    return make("FLplus_ei", Intuitionistic, lang::fl_plus(), Weakening::Full, false, Exponentials::None);
  if (name == "BCK") return make("BCK", Intuitionistic, lang::implicational(), Weakening::Full, false, Exponentials::None);
  if (name == "BCI") return make("BCI", Intuitionistic, lang::implicational(), Weakening::None, false, Exponentials::None);
  if (name == "InFLew") return make("InFLew", Classical, lang::infl(), Weakening::Full, false, Exponentials::None);
  if (name == "ILAL") return make("ILAL", Intuitionistic, lang::light(), Weakening::Full, false, Exponentials::Light);
  throw std::invalid_argument("unknown system '" + std::string(name) + "'");
}

}  // namespace

System restrict(System sys, Fragment k) {
  if (k.empty()) throw std::invalid_argument("empty language fragment");
  if (!sys.language.includes(k))
    throw std::invalid_argument(k.to_string() + " is not a fragment of " + sys.name);
  sys.language = k;
  if (!k.contains(Conn::Bang)) sys.exponentials = Exponentials::None;
  if (sys.name.find(':') == std::string::npos) sys.name += ":" + k.to_string();
  return sys;
}

System system_by_name(std::string_view name) {
  auto colon = name.find(':');
  if (colon == std::string_view::npos) return base_system(name);
  return restrict(base_system(name.substr(0, colon)), Fragment::parse(name.substr(colon + 1)));
}

std::vector<std::string> system_names() {
  return {"ILZW", "ILZW'", "ILLW", "ILL",  "LLW",  "LL",       "ELLW",   "IEZW",
          "IELW", "BCK",   "BCI",  "FLei", "FLew", "FLplus_ei", "InFLew", "ILAL"};
}

System with_axioms(System sys, const std::vector<Formula>& phi) {
  for (Formula b : phi) {
    if (!sys.admits(b))
      throw std::invalid_argument("axiom " + to_string(b) + " is outside the language of " + sys.name);
    sys.axioms.push_back(b);
  }
  std::sort(sys.axioms.begin(), sys.axioms.end(), FormulaLess{});
  sys.axioms.erase(std::unique(sys.axioms.begin(), sys.axioms.end()), sys.axioms.end());
  return sys;
}

}  // namespace subtower
