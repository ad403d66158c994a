// Standard form for trees of encoded machines. Every !-coordinate is stored
// as soon as it reaches a main state; the stored formulas then stay in the
// state (E) while the original tree is replayed, and the units already
// stored but still present in the original vector are tracked as delta.
// Terminal rules are rebuilt as a !W chain, losses at the main state and the
// axiom itself, so no loss remains at the leaf state.

#include <stdexcept>

#include "subtower/encoders.hpp"

namespace subtower {

namespace {

using Kind_ = StateInfo::Kind;

class Standardizer {
 public:
  explicit Standardizer(const EncodedMachine& em) : em_(em), a_(em.machine) {}

  DeductionTree run(const DeductionTree& t, std::uint32_t e, const Vec& delta);

 private:
  DeductionTree main_body(const DeductionTree& t, std::uint32_t e, const Vec& delta);
  DeductionTree generic(const DeductionTree& t, std::uint32_t e, const Vec& delta);
  DeductionTree terminal(const DeductionTree& t, std::uint32_t e, const Vec& delta, const UnaryRule& r);
  DeductionTree drained(const DeductionTree& t, std::uint32_t e, const Vec& delta);
  DeductionTree func(const DeductionTree& t, std::uint32_t e, const Vec& delta);

  StateId map(StateId s, std::uint32_t e) const;
  std::uint32_t find_unary(StateId from, StateId to, const Update& u) const;
  std::uint32_t find_binary(const std::vector<BinaryRule>& rules, const std::vector<std::uint32_t>& idx, StateId from,
                            StateId l, StateId r) const;
  std::uint32_t find_zero(StateId from, StateId to) const;
  Vec zeta(const Vec& v) const;
  Vec minus(Vec a, const Vec& b) const;
  std::uint32_t bits_of(const Vec& v) const;
  bool bang(std::size_t k) const { return em_.is_bang_coordinate(k); }
  std::uint32_t bit_of_coord(std::size_t k) const;

  // Folds a list of single-child steps over a final subtree.
  struct Link {
    Config c;
    Step step;
    std::uint32_t index;
  };
  static DeductionTree chain(std::vector<Link> links, DeductionTree tail);

  const EncodedMachine& em_;
  const Abvass& a_;
};

DeductionTree Standardizer::chain(std::vector<Link> links, DeductionTree tail) {
  for (auto it = links.rbegin(); it != links.rend(); ++it) {
    DeductionTree n{it->c, it->step, it->index, {}};
    n.children.push_back(std::move(tail));
    tail = std::move(n);
  }
  return tail;
}

std::uint32_t Standardizer::bit_of_coord(std::size_t k) const {
  for (std::size_t i = 0; i < em_.bang.size(); ++i)
    if (static_cast<std::size_t>(em_.bang[i]) == k) return 1U << i;
  throw std::logic_error("not a !-coordinate");
}

Vec Standardizer::zeta(const Vec& v) const {
  Vec z(v.size(), 0);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (bang(k)) z[k] = v[k];
  return z;
}

Vec Standardizer::minus(Vec a, const Vec& b) const {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) throw std::logic_error("standard form: negative vector");
    a[k] -= b[k];
  }
  return a;
}

std::uint32_t Standardizer::bits_of(const Vec& v) const {
  std::uint32_t m = 0;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] > 0) m |= bit_of_coord(k);
  return m;
}

StateId Standardizer::map(StateId s, std::uint32_t e) const {
  StateInfo d = em_.info.at(s);
  if (d.kind == Kind_::Leaf) return s;
  d.mask |= e;
  if (d.family == "lolliL1") d.mask2 |= e;
  auto id = em_.find(d);
  if (!id) throw std::logic_error("standard form: state " + descriptor_key(d) + " was not generated");
  return *id;
}

std::uint32_t Standardizer::find_unary(StateId from, StateId to, const Update& u) const {
  for (auto i : a_.unary_from(from)) {
    const UnaryRule& r = a_.unary()[i];
    if (r.to == to && r.update == u) return i;
  }
  throw std::logic_error("standard form: missing unary rule " + a_.state_name(from) + " -> " + a_.state_name(to));
}

std::uint32_t Standardizer::find_binary(const std::vector<BinaryRule>& rules, const std::vector<std::uint32_t>& idx,
                                        StateId from, StateId l, StateId r) const {
  for (auto i : idx)
    if (rules[i].left == l && rules[i].right == r) return i;
  throw std::logic_error("standard form: missing binary rule from " + a_.state_name(from));
}

std::uint32_t Standardizer::find_zero(StateId from, StateId to) const {
  for (auto i : a_.zero_from(from))
    if (a_.zeros()[i].to == to) return i;
  throw std::logic_error("standard form: missing zero test from " + a_.state_name(from));
}

DeductionTree Standardizer::run(const DeductionTree& t, std::uint32_t e, const Vec& delta) {
  const StateInfo& d = em_.info.at(t.config.state);
  if (d.kind == Kind_::Leaf) throw std::logic_error("standard form: unexpected leaf-state node");
  if (d.kind == Kind_::Intermediate) return generic(t, e, delta);

  const Vec z = zeta(t.config.v);
  const Vec rho = minus(z, delta);
  Vec v = minus(t.config.v, delta);
  std::uint32_t mask = d.mask | e;
  std::vector<Link> links;
  for (std::size_t k = 0; k < rho.size(); ++k)
    for (std::uint32_t n = 0; n < rho[k]; ++n) {
      StateId from = *em_.main_state(mask, d.x);
      std::uint32_t next = mask | bit_of_coord(k);
      StateId to = *em_.main_state(next, d.x);
      Update u(v.size(), 0);
      u[k] = -1;
      links.push_back({{from, v}, Step::Unary, find_unary(from, to, u)});
      --v[k];
      mask = next;
    }
  return chain(std::move(links), main_body(t, e | bits_of(rho), z));
}

DeductionTree Standardizer::main_body(const DeductionTree& t, std::uint32_t e, const Vec& delta) {
  switch (t.step) {
    case Step::Leaf:
      throw std::logic_error("standard form: main state used as a leaf");
    case Step::Loss: {
      const DeductionTree& c = t.children.at(0);
      if (bang(t.index)) {
        Vec d2 = delta;
        --d2[t.index];
        return run(c, e, d2);
      }
      DeductionTree n{{map(t.config.state, e), minus(t.config.v, delta)}, Step::Loss, t.index, {}};
      n.children.push_back(run(c, e, delta));
      return n;
    }
    case Step::Unary: {
      const UnaryRule& r = a_.unary().at(t.index);
      const std::string& l = r.label;
      if (l == "store") {
        Vec d2 = delta;
        for (std::size_t k = 0; k < r.update.size(); ++k)
          if (r.update[k] < 0) --d2[k];
        return run(t.children.at(0), e, d2);
      }
      if (l == "Init1" || l == "Init2" || l == "1R" || l == "botL") return terminal(t, e, delta, r);
      if (l == "zeroL" || l == "topR") return drained(t, e, delta);
      return generic(t, e, delta);
    }
    case Step::Zero:
      if (a_.zeros().at(t.index).label == "func") return func(t, e, delta);
      return generic(t, e, delta);
    default:
      return generic(t, e, delta);
  }
}

DeductionTree Standardizer::generic(const DeductionTree& t, std::uint32_t e, const Vec& delta) {
  StateId from = map(t.config.state, e);
  Vec v = minus(t.config.v, delta);
  DeductionTree n{{from, v}, t.step, 0, {}};
  switch (t.step) {
    case Step::Unary: {
      const DeductionTree& c = t.children.at(0);
      const UnaryRule& r = a_.unary().at(t.index);
      StateId to = map(c.config.state, e);
      bool zero_update = std::all_of(r.update.begin(), r.update.end(), [](std::int64_t x) { return x == 0; });
      if (to == from && zero_update) return run(c, e, delta);  // !W of a formula kept in E
      n.index = find_unary(from, to, r.update);
      n.children.push_back(run(c, e, delta));
      return n;
    }
    case Step::Zero: {
      const DeductionTree& c = t.children.at(0);
      n.index = find_zero(from, map(c.config.state, e));
      n.children.push_back(run(c, e, delta));
      return n;
    }
    case Step::Split:
    case Step::Fork: {
      const DeductionTree& c1 = t.children.at(0);
      const DeductionTree& c2 = t.children.at(1);
      StateId l = map(c1.config.state, e), r = map(c2.config.state, e);
      if (t.step == Step::Fork) {
        n.index = find_binary(a_.forks(), a_.fork_from(from), from, l, r);
        n.children.push_back(run(c1, e, delta));
        n.children.push_back(run(c2, e, delta));
      } else {
        n.index = find_binary(a_.splits(), a_.split_from(from), from, l, r);
        Vec d1(delta.size()), d2(delta.size());
        for (std::size_t k = 0; k < delta.size(); ++k) {
          d1[k] = std::min(delta[k], zeta(c1.config.v)[k]);
          d2[k] = delta[k] - d1[k];
        }
        n.children.push_back(run(c1, e, d1));
        n.children.push_back(run(c2, e, d2));
      }
      return n;
    }
    case Step::Loss:
      throw std::logic_error("standard form: loss at a non-main state in a regular tree");
    case Step::Leaf:
      break;
  }
  throw std::logic_error("standard form: unexpected leaf");
}

// !W chain down to the axiom's subset, losses down to the axiom's vector,
// then the axiom into q_l.
DeductionTree Standardizer::terminal(const DeductionTree& t, std::uint32_t e, const Vec& delta, const UnaryRule& r) {
  const StateInfo& d = em_.info.at(t.config.state);
  std::uint32_t mask = d.mask | e;
  Vec v = minus(t.config.v, delta);
  std::vector<Link> links;
  for (std::size_t b = 0; b < em_.bang.size(); ++b) {
    std::uint32_t bit = 1U << b;
    if (!(mask & bit) || (d.mask & bit)) continue;
    StateId from = *em_.main_state(mask, d.x);
    StateId to = *em_.main_state(mask & ~bit, d.x);
    links.push_back({{from, v}, Step::Unary, find_unary(from, to, Update(v.size(), 0))});
    mask &= ~bit;
  }
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::uint32_t keep = r.update[k] < 0 ? static_cast<std::uint32_t>(-r.update[k]) : 0;
    while (v[k] > keep) {
      links.push_back({{t.config.state, v}, Step::Loss, static_cast<std::uint32_t>(k)});
      --v[k];
    }
  }
  DeductionTree n{{t.config.state, v}, Step::Unary, t.index, {}};
  n.children.push_back(DeductionTree{{em_.leaf, Vec(v.size(), 0)}, Step::Leaf, 0, {}});
  return chain(std::move(links), std::move(n));
}

// (0L) and (T R): enter the intermediate, consume every remaining unit with
// its self-loop, then exit to q_l.
DeductionTree Standardizer::drained(const DeductionTree& t, std::uint32_t e, const Vec& delta) {
  const UnaryRule& r = a_.unary().at(t.index);
  StateId from = map(t.config.state, e);
  StateId mid = map(t.children.at(0).config.state, e);
  Vec v = minus(t.config.v, delta);
  std::vector<Link> links{{{from, v}, Step::Unary, find_unary(from, mid, r.update)}};
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<std::uint32_t>(static_cast<std::int64_t>(v[k]) + r.update[k]);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] > 0 && bang(k)) throw std::logic_error("standard form: unstored !-coordinate at a drain");
    Update u(v.size(), 0);
    u[k] = -1;
    while (v[k] > 0) {
      links.push_back({{mid, v}, Step::Unary, find_unary(mid, mid, u)});
      --v[k];
    }
  }
  links.push_back({{mid, v}, Step::Unary, find_unary(mid, em_.leaf, Update(v.size(), 0))});
  return chain(std::move(links), DeductionTree{{em_.leaf, v}, Step::Leaf, 0, {}});
}

// (func): the zero test, the +e_B loops replayed at the enlarged
// intermediate, then the exit to (∅, A) where E and delta restart empty.
DeductionTree Standardizer::func(const DeductionTree& t, std::uint32_t e, const Vec& delta) {
  for (auto x : delta)
    if (x) throw std::logic_error("standard form: zero test with pending stores");
  StateId from = map(t.config.state, e);
  const DeductionTree* c = &t.children.at(0);
  StateId mid = map(c->config.state, e);
  std::vector<Link> links{{{from, t.config.v}, Step::Zero, find_zero(from, mid)}};
  while (true) {
    if (c->step != Step::Unary) throw std::logic_error("standard form: unexpected step inside (func)");
    const UnaryRule& r = a_.unary().at(c->index);
    const DeductionTree& next = c->children.at(0);
    if (r.label == "func-exit") {
      links.push_back({{mid, c->config.v}, Step::Unary, find_unary(mid, next.config.state, r.update)});
      return chain(std::move(links), run(next, 0, Vec(delta.size(), 0)));
    }
    links.push_back({{mid, c->config.v}, Step::Unary, find_unary(mid, mid, r.update)});
    c = &next;
  }
}

void check_standard(const EncodedMachine& em, const DeductionTree& t, bool& ok) {
  if (!ok) return;
  const StateInfo& d = em.info.at(t.config.state);
  if (t.step == Step::Loss && d.kind != Kind_::Main) {
    ok = false;
    return;
  }
  if (d.kind == Kind_::Main) {
    bool pending = false;
    for (std::size_t k = 0; k < t.config.v.size(); ++k)
      if (t.config.v[k] && em.is_bang_coordinate(k)) pending = true;
    if (pending && !(t.step == Step::Unary && em.machine.unary().at(t.index).label == "store")) {
      ok = false;
      return;
    }
  }
  for (const auto& c : t.children) check_standard(em, c, ok);
}

}  // namespace

bool is_standard(const EncodedMachine& em, const DeductionTree& t) {
  bool ok = true;
  check_standard(em, t, ok);
  return ok;
}

DeductionTree normalize_standard(const EncodedMachine& em, const DeductionTree& t) {
  const auto leaves = em.leaves();
  if (t.config.state >= em.info.size() || em.info[t.config.state].kind != Kind_::Main)
    throw std::invalid_argument("root is not a main state of the encoded machine");
  DeductionTree reg = is_regular(em.machine, leaves, t) ? t : normalize_regular(em.machine, leaves, t);
  if (auto ck = check_tree(em.machine, leaves, reg, true); !ck)
    throw std::invalid_argument("input tree does not check: " + ck.message);
  Standardizer s(em);
  DeductionTree out = s.run(reg, 0, Vec(t.config.v.size(), 0));
  if (auto ck = check_tree(em.machine, leaves, out, true); !ck)
    throw std::logic_error("standard form does not check: " + ck.message);
  if (!is_standard(em, out)) throw std::logic_error("standard form violates the store/loss conditions");
  return out;
}

}  // namespace subtower
