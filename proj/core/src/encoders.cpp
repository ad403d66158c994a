#include "subtower/encoders.hpp"

#include <cctype>
#include <deque>
#include "json.hpp"
#include <stdexcept>

namespace subtower {

using json = nlohmann::json;

std::string to_string(Variant v) { return v == Variant::E ? "E" : "I'"; }

namespace {

std::string mask_name(std::uint32_t mask) {
  std::string s = "q";
  bool first = true;
  for (unsigned i = 0; i < 32; ++i) {
    if (!((mask >> i) & 1U)) continue;
    if (!first) s += '.';
    s += std::to_string(i);
    first = false;
  }
  return s;
}

std::string stoup_name(int x) { return x < 0 ? "xb" : "x" + std::to_string(x); }

std::string main_name(std::uint32_t mask, int x) { return mask_name(mask) + "_" + stoup_name(x); }

}  // namespace

std::string descriptor_key(const StateInfo& d) {
  switch (d.kind) {
    case StateInfo::Kind::Leaf:
      return "ql";
    case StateInfo::Kind::Main:
      return main_name(d.mask, d.x);
    case StateInfo::Kind::Intermediate:
      break;
  }
  std::string s = d.family + "@" + main_name(d.mask, d.x);
  if (d.family == "lolliL1") s += "@" + mask_name(d.mask2);
  return s + "@f" + std::to_string(d.formula);
}

bool EncodedMachine::is_bang_coordinate(std::size_t k) const {
  return closure.formulas.at(k).kind() == Kind::Bang;
}

std::optional<StateId> EncodedMachine::find(const StateInfo& d) const {
  auto it = by_descriptor.find(descriptor_key(d));
  if (it == by_descriptor.end()) return std::nullopt;
  return it->second;
}

std::optional<StateId> EncodedMachine::main_state(std::uint32_t mask, int x) const {
  StateInfo d;
  d.mask = mask;
  d.x = x;
  return find(d);
}

std::string EncodedMachine::legend_json(int indent) const {
  auto subset = [&](std::uint32_t mask) {
    json a = json::array();
    for (std::size_t i = 0; i < bang.size(); ++i)
      if ((mask >> i) & 1U) a.push_back(to_string(closure.formulas[static_cast<std::size_t>(bang[i])]));
    return a;
  };
  auto stoup = [&](int x) { return x < 0 ? std::string("•") : to_string(closure.formulas[static_cast<std::size_t>(x)]); };
  json j;
  j["formula"] = to_string(formula);
  j["variant"] = to_string(variant);
  j["dimension"] = closure.size();
  json coords = json::array();
  for (const auto& f : closure.formulas) coords.push_back(to_string(f));
  j["coordinates"] = coords;
  j["leaf"] = machine.state_name(leaf);
  json states = json::object();
  for (StateId q = 0; q < info.size(); ++q) {
    const StateInfo& d = info[q];
    json s;
    s["id"] = q;
    switch (d.kind) {
      case StateInfo::Kind::Leaf:
        s["kind"] = "leaf";
        break;
      case StateInfo::Kind::Main:
        s["kind"] = "main";
        s["subset"] = subset(d.mask);
        s["stoup"] = stoup(d.x);
        break;
      case StateInfo::Kind::Intermediate:
        s["kind"] = "intermediate";
        s["family"] = d.family;
        s["subset"] = subset(d.mask);
        s["stoup"] = stoup(d.x);
        s["principal"] = to_string(closure.formulas[static_cast<std::size_t>(d.formula)]);
        if (d.family == "lolliL1") s["right_subset"] = subset(d.mask2);
        break;
    }
    states[machine.state_name(q)] = s;
  }
  j["states"] = states;
  return j.dump(indent);
}

// ---------------------------------------------------------------- A^E_F, A^I'_F

namespace {

class Builder {
 public:
  Builder(Formula f, Variant v) {
    if (!f || !is_intuitionistic(f) || !in_fragment(f, lang::intuitionistic_full()))
      throw std::invalid_argument("formula outside the language of " +
                                  std::string(v == Variant::E ? "IEZW" : "ILZW'") + ": " +
                                  (f ? to_string(f) : std::string("null")));
    em_.formula = f;
    em_.variant = v;
    em_.closure = subformula_closure(f);
    for (std::size_t k = 0; k < em_.closure.size(); ++k)
      if (em_.closure.formulas[k].kind() == Kind::Bang) em_.bang.push_back(static_cast<int>(k));
    if (em_.bang.size() > 31) throw std::invalid_argument("too many !-subformulas");
    em_.machine.set_dim(em_.closure.size());
  }

  int index(Formula f) const { return em_.closure.index_of(f); }

  std::uint32_t bit_of(int coord) const {
    for (std::size_t i = 0; i < em_.bang.size(); ++i)
      if (em_.bang[i] == coord) return 1U << i;
    throw std::logic_error("not a !-coordinate");
  }

  StateId main(std::uint32_t mask, int x) {
    StateInfo d;
    d.mask = mask;
    d.x = x;
    auto [id, fresh] = state(d);
    if (fresh) pending_.push_back(id);
    return id;
  }

  std::pair<StateId, bool> state(const StateInfo& d) {
    std::string key = descriptor_key(d);
    auto it = em_.by_descriptor.find(key);
    if (it != em_.by_descriptor.end()) return {it->second, false};
    StateId id = em_.machine.add_state(key);
    em_.by_descriptor.emplace(key, id);
    em_.info.push_back(d);
    return {id, true};
  }

  StateId intermediate(const std::string& family, std::uint32_t mask, int x, int f, std::uint32_t mask2 = 0) {
    StateInfo d;
    d.kind = StateInfo::Kind::Intermediate;
    d.family = family;
    d.mask = mask;
    d.x = x;
    d.formula = f;
    d.mask2 = mask2;
    return state(d).first;
  }

  Update unit(int k, std::int64_t by) const {
    Update u(em_.closure.size(), 0);
    u[static_cast<std::size_t>(k)] += by;
    return u;
  }
  Update zero() const { return Update(em_.closure.size(), 0); }

  // Pairs (q1, q2) with q1 ∪ q2 = mask.
  static std::vector<std::pair<std::uint32_t, std::uint32_t>> covers(std::uint32_t mask) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out{{0, 0}};
    for (unsigned i = 0; i < 32; ++i) {
      if (!((mask >> i) & 1U)) continue;
      std::uint32_t b = 1U << i;
      std::vector<std::pair<std::uint32_t, std::uint32_t>> next;
      for (auto [a, c] : out) {
        next.push_back({a | b, c});
        next.push_back({a, c | b});
        next.push_back({a | b, c | b});
      }
      out = std::move(next);
    }
    return out;
  }

  // Self-loops -e_C for C ∈ S∖S_! followed by an exit to q_l.
  void drain(StateId i, const std::string& family) {
    for (std::size_t k = 0; k < em_.closure.size(); ++k)
      if (!em_.is_bang_coordinate(k)) em_.machine.add_unary(i, i, unit(static_cast<int>(k), -1), family + "-loop");
    em_.machine.add_unary(i, em_.leaf, zero(), family + "-exit");
  }

  void expand_main(StateId s);

  EncodedMachine run(const std::vector<Sequent>& extra) {
    main(0, index(em_.formula));
    StateInfo leaf;
    leaf.kind = StateInfo::Kind::Leaf;
    em_.leaf = state(leaf).first;
    em_.machine.leaves = {em_.leaf};
    for (const Sequent& s : extra) {
      auto [mask, x] = split_state(s);
      main(mask, x);
    }
    while (!pending_.empty()) {
      StateId s = pending_.front();
      pending_.pop_front();
      expand_main(s);
    }
    return std::move(em_);
  }

  std::pair<std::uint32_t, int> split_state(const Sequent& s) const {
    if (s.is_classical()) throw std::invalid_argument("expected an intuitionistic sequent");
    std::uint32_t mask = 0;
    for (Formula g : s.ctx()) {
      int k = index(g);
      if (k < 0) throw std::invalid_argument("formula " + to_string(g) + " is not a subformula of " + to_string(em_.formula));
      if (g.kind() == Kind::Bang) mask |= bit_of(k);
    }
    int x = -1;
    if (s.stoup()) {
      x = index(s.stoup());
      if (x < 0)
        throw std::invalid_argument("formula " + to_string(s.stoup()) + " is not a subformula of " + to_string(em_.formula));
    }
    return {mask, x};
  }

 private:
  EncodedMachine em_;
  std::deque<StateId> pending_;
};

void Builder::expand_main(StateId s) {
  const StateInfo d = em_.info[s];
  const std::uint32_t q = d.mask;
  const int x = d.x;
  Abvass& m = em_.machine;
  const auto& S = em_.closure.formulas;
  const bool prime = em_.variant == Variant::IPrime;

  // Axioms.
  if (x >= 0) {
    Formula X = S[static_cast<std::size_t>(x)];
    if (q == 0 && X.kind() != Kind::Bang) m.add_unary(s, em_.leaf, unit(x, -1), "Init1");
    if (X.kind() == Kind::Bang && q == bit_of(x)) m.add_unary(s, em_.leaf, zero(), "Init2");
    if (q == 0 && X.kind() == Kind::One) m.add_unary(s, em_.leaf, zero(), "1R");
  } else if (q == 0) {
    int b = index(Formula::bot());
    if (b >= 0) m.add_unary(s, em_.leaf, unit(b, -1), "botL");
  }

  // Left rules, one per coordinate.
  for (std::size_t kk = 0; kk < S.size(); ++kk) {
    const int k = static_cast<int>(kk);
    Formula C = S[kk];
    switch (C.kind()) {
      case Kind::One:
        m.add_unary(s, s, unit(k, -1), "1L");
        break;
      case Kind::Tensor: {
        StateId i = intermediate("tensorL", q, x, k);
        m.add_unary(s, i, unit(k, -1), "tensorL");
        if (m.unary_from(i).empty()) {
          Update u = zero();
          u[static_cast<std::size_t>(index(C.left()))] += 1;
          u[static_cast<std::size_t>(index(C.right()))] += 1;
          m.add_unary(i, s, u, "tensorL+");
        }
        break;
      }
      case Kind::Lolli:
        for (auto [q1, q2] : covers(q)) {
          StateId i1 = intermediate("lolliL1", q1, x, k, q2);
          StateId i2 = intermediate("lolliL2", q2, x, k);
          m.add_unary(s, i1, unit(k, -1), "lolliL");
          if (m.split_from(i1).empty()) m.add_split(i1, main(q1, index(C.left())), i2, "lolliL-split");
          if (m.unary_from(i2).empty()) m.add_unary(i2, main(q2, x), unit(index(C.right()), 1), "lolliL+");
        }
        break;
      case Kind::With: {
        StateId i = intermediate("withL", q, x, k);
        m.add_unary(s, i, unit(k, -1), "withL");
        if (m.unary_from(i).empty()) {
          m.add_unary(i, s, unit(index(C.left()), 1), "withL1");
          m.add_unary(i, s, unit(index(C.right()), 1), "withL2");
        }
        break;
      }
      case Kind::Plus: {
        StateId i = intermediate("plusL", q, x, k);
        m.add_unary(s, i, unit(k, -1), "plusL");
        if (m.fork_from(i).empty()) {
          StateId i1 = intermediate("plusL1", q, x, k);
          StateId i2 = intermediate("plusL2", q, x, k);
          m.add_fork(i, i1, i2, "plusL-fork");
          m.add_unary(i1, s, unit(index(C.left()), 1), "plusL1");
          m.add_unary(i2, s, unit(index(C.right()), 1), "plusL2");
        }
        break;
      }
      case Kind::Zero: {
        StateId i = intermediate("zeroL", q, x, k);
        m.add_unary(s, i, unit(k, -1), "zeroL");
        if (m.unary_from(i).empty()) drain(i, "zeroL");
        break;
      }
      case Kind::Bang:
        m.add_unary(s, main(q | bit_of(k), x), unit(k, -1), "store");
        break;
      default:
        break;
    }
  }

  // Right rules on the stoup.
  if (x >= 0) {
    Formula X = S[static_cast<std::size_t>(x)];
    switch (X.kind()) {
      case Kind::Bot:
        m.add_unary(s, main(q, -1), zero(), "botR");
        break;
      case Kind::Tensor:
        for (auto [q1, q2] : covers(q))
          m.add_split(s, main(q1, index(X.left())), main(q2, index(X.right())), "tensorR");
        break;
      case Kind::Lolli:
        m.add_unary(s, main(q, index(X.right())), unit(index(X.left()), 1), "lolliR");
        break;
      case Kind::With:
        m.add_fork(s, main(q, index(X.left())), main(q, index(X.right())), "withR");
        break;
      case Kind::Plus:
        m.add_unary(s, main(q, index(X.left())), zero(), "plusR1");
        m.add_unary(s, main(q, index(X.right())), zero(), "plusR2");
        break;
      case Kind::Top: {
        StateId i = intermediate("topR", q, x, x);
        m.add_unary(s, i, zero(), "topR");
        if (m.unary_from(i).empty()) drain(i, "topR");
        break;
      }
      case Kind::Bang:
        if (prime) {
          m.add_zero(s, main(q, index(X.body())), "bangP");
        } else {
          StateId i = intermediate("func", q, x, x);
          m.add_zero(s, i, "func");
          if (m.unary_from(i).empty()) {
            for (std::size_t b = 0; b < em_.bang.size(); ++b)
              if ((q >> b) & 1U) {
                Formula B = S[static_cast<std::size_t>(em_.bang[b])].body();
                m.add_unary(i, i, unit(index(B), 1), "func-loop");
              }
            m.add_unary(i, main(0, index(X.body())), zero(), "func-exit");
          }
        }
        break;
      default:
        break;
    }
    if (prime) m.add_unary(s, main(q, -1), zero(), "W'");
  }

  // Structural rules on the stored !-formulas.
  for (std::size_t b = 0; b < em_.bang.size(); ++b) {
    const std::uint32_t bit = 1U << b;
    if (!(q & bit)) continue;
    m.add_unary(s, main(q & ~bit, x), zero(), "bangW");
    if (prime) {
      int body = index(S[static_cast<std::size_t>(em_.bang[b])].body());
      m.add_unary(s, main(q & ~bit, x), unit(body, 1), "bangD");
      m.add_unary(s, s, unit(body, 1), "bangD");
    }
  }
}

}  // namespace

EncodedMachine encode_formula(Formula f, Variant v, const std::vector<Sequent>& extra_roots) {
  Builder b(f, v);
  return b.run(extra_roots);
}

Config sequent_to_config(const EncodedMachine& em, const Sequent& s) {
  if (s.is_classical()) throw std::invalid_argument("expected an intuitionistic sequent");
  Config c;
  c.v.assign(em.closure.size(), 0);
  std::uint32_t mask = 0;
  auto idx = [&](Formula g) {
    int k = em.closure.index_of(g);
    if (k < 0) throw std::invalid_argument("formula " + to_string(g) + " is not a subformula of " + to_string(em.formula));
    return k;
  };
  for (Formula g : s.ctx()) {
    int k = idx(g);
    if (g.kind() == Kind::Bang) {
      for (std::size_t b = 0; b < em.bang.size(); ++b)
        if (em.bang[b] == k) mask |= 1U << b;
    } else {
      ++c.v[static_cast<std::size_t>(k)];
    }
  }
  int x = s.stoup() ? idx(s.stoup()) : -1;
  auto q = em.main_state(mask, x);
  if (!q) throw std::invalid_argument("state " + main_name(mask, x) + " was not generated; pass the sequent as an extra root");
  c.state = *q;
  return c;
}

// ---------------------------------------------------------------- BVASS -> LLW

namespace {

bool plain_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

bool reserved(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'e' && s[0] != 's')) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::string bvass_state_variable(const Abvass& b, StateId q) {
  const std::string& n = b.state_name(q);
  if (plain_identifier(n) && !reserved(n)) return n;
  return "s" + std::to_string(q);
}

Sequent encode_bvass_to_sequent(const Abvass& b, const std::vector<StateId>& leaves, const Config& target) {
  if (!b.is_bvass()) throw std::invalid_argument("machine has fork or zero-test rules");
  if (!b.is_ordinary()) throw std::invalid_argument("machine has non-unit updates");
  if (target.state >= b.state_count() || target.v.size() != b.dim()) throw std::invalid_argument("invalid target configuration");
  auto st = [&](StateId q) { return Formula::var(bvass_state_variable(b, q)); };
  auto st_dual = [&](StateId q) { return Formula::dual_var(bvass_state_variable(b, q)); };
  auto coord = [](std::size_t k) { return "e" + std::to_string(k + 1); };

  std::vector<Formula> out;
  for (const UnaryRule& r : b.unary()) {
    std::size_t k = 0;
    while (r.update[k] == 0) ++k;
    if (r.update[k] > 0)
      out.push_back(Formula::quest(Formula::tensor(st(r.from), Formula::par(st_dual(r.to), Formula::dual_var(coord(k))))));
    else
      out.push_back(Formula::quest(Formula::tensor(Formula::tensor(st(r.from), Formula::var(coord(k))), st_dual(r.to))));
  }
  for (const BinaryRule& r : b.splits())
    out.push_back(Formula::quest(Formula::tensor(st(r.from), Formula::tensor(st_dual(r.left), st_dual(r.right)))));
  for (StateId q : leaves) {
    if (q >= b.state_count()) throw std::invalid_argument("leaf state out of range");
    out.push_back(Formula::quest(st(q)));
  }
  out.push_back(st_dual(target.state));
  for (std::size_t k = 0; k < target.v.size(); ++k)
    for (std::uint32_t n = 0; n < target.v[k]; ++n) out.push_back(Formula::dual_var(coord(k)));
  return Sequent::classical(std::move(out));
}

}  // namespace subtower
