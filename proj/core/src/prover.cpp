#include "subtower/prover.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace subtower {

// ---------------------------------------------------------------- budgets

Budget parse_budget(std::string_view text, Budget base) {
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("budget item without '=': " + std::string(item));
    std::string_view key = item.substr(0, eq), val = item.substr(eq + 1);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), n);
    if (ec != std::errc{} || ptr != val.data() + val.size())
      throw std::invalid_argument("bad budget value: " + std::string(item));
    if (key == "depth") base.max_depth = n;
    else if (key == "contractions") base.max_bang_contractions = n;
    else if (key == "nodes") base.max_nodes = n;
    else if (key == "nmax") base.max_prenex_copies = n;
    else if (key == "cap") base.counter_cap = n;
    else if (key == "height") base.max_tree_height = n;
    else throw std::invalid_argument("unknown budget key: " + std::string(key));
  }
  return base;
}

Budget default_budget() {
  const char* env = std::getenv("SUBTOWER_DEFAULT_BUDGET");
  return env ? parse_budget(env) : Budget{};
}

std::string to_string(const Budget& b) {
  return "depth=" + std::to_string(b.max_depth) + ",contractions=" + std::to_string(b.max_bang_contractions) +
         ",nodes=" + std::to_string(b.max_nodes) + ",nmax=" + std::to_string(b.max_prenex_copies) +
         ",cap=" + std::to_string(b.counter_cap) + ",height=" + std::to_string(b.max_tree_height);
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Proved: return "Proved";
    case Outcome::Refuted: return "Refuted";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------- engine

namespace {

using Bag = std::vector<Formula>;

// One backward step on a normalized sequent. Bottom-up the certificate is:
// contract each formula of `contract` (!C / ?C), then weaken each of `weaken`,
// then apply `rule` with the given premises.
struct Step {
  std::string rule;
  Formula principal;
  Bag contract;
  Bag weaken;
  std::vector<Sequent> premises;
  std::size_t cost = 0;
};

struct Flags {
  bool contraction_limited = false;
  bool depth_truncated = false;
  Flags& operator|=(const Flags& o) {
    contraction_limited |= o.contraction_limited;
    depth_truncated |= o.depth_truncated;
    return *this;
  }
};

struct Failure {
  std::size_t c, d;
  Flags flags;
};

struct Entry {
  std::optional<Step> proof;
  std::vector<Failure> failures;
};

struct NodeLimit {};

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

Bag minus(Bag b, Formula f) {
  ms::remove_one(b, f);
  return b;
}

Bag plus(Bag b, Formula f) {
  b.insert(std::upper_bound(b.begin(), b.end(), f, FormulaLess{}), f);
  return b;
}

Bag distinct(const Bag& b) {
  Bag out;
  for (Formula f : b)
    if (out.empty() || out.back() != f) out.push_back(f);
  return out;
}

class Engine {
 public:
  Engine(const System& sys, const Budget& b, bool axiom_cuts)
      : sys_(sys), b_(b), cuts_(axiom_cuts && !sys.axioms.empty()) {}

  Verdict run(const Sequent& goal);

 private:
  struct Result {
    bool proved = false;
    Flags flags;
  };

  bool shared(Formula f) const { return sys_.is_banged(f) && sys_.weakenable(f); }
  Sequent normalize(const Sequent& s, Bag* dropped) const;
  Sequent seq(Bag ctx, Formula stoup = {}) const {
    return sys_.side == Side::Classical ? Sequent::classical(std::move(ctx))
                                        : Sequent::intuitionistic(std::move(ctx), stoup);
  }
  bool all_weakenable(const Bag& b) const {
    return std::all_of(b.begin(), b.end(), [&](Formula f) { return sys_.weakenable(f); });
  }

  Result solve(const Sequent& s, std::size_t c, std::size_t d);
  bool try_step(Entry& e, Step& st, std::size_t c, std::size_t d, Flags& acc);

  std::optional<Step> closure(const Sequent& s) const;
  std::optional<Step> invertible(const Sequent& s) const;
  void moves(const Sequent& s, std::size_t c, std::vector<Step>& out, bool& skipped) const;
  void intuitionistic_moves(const Sequent& s, std::size_t c, std::vector<Step>& out, bool& skipped) const;
  void classical_moves(const Sequent& s, std::size_t c, std::vector<Step>& out, bool& skipped) const;
  // Every way to take k >= 1 copies of each banged formula with at most c
  // extra copies in total. Calls f(copies-as-bodies, extra-contractions).
  void allocations(const Bag& banged, std::size_t c, bool& skipped,
                   const std::function<void(Bag, Bag)>& f) const;

  ProofTree build(const Sequent& raw) const;
  ProofTree build_normal(const Sequent& s) const;

  const System& sys_;
  Budget b_;
  bool cuts_;
  std::unordered_map<Sequent, Entry, SequentHash> memo_;
  std::size_t nodes_ = 0;
};

Sequent Engine::normalize(const Sequent& s, Bag* dropped) const {
  const Bag& ctx = s.ctx();
  Bag out;
  out.reserve(ctx.size());
  for (Formula f : ctx) {
    if (!out.empty() && out.back() == f && shared(f)) {
      if (dropped) dropped->push_back(f);
      continue;
    }
    out.push_back(f);
  }
  if (out.size() == ctx.size()) return s;
  return s.with_ctx(std::move(out));
}

std::optional<Step> Engine::closure(const Sequent& s) const {
  const Bag& G = s.ctx();
  auto close = [&](std::string rule, Formula pr, Bag weaken) -> std::optional<Step> {
    if (!all_weakenable(weaken)) return std::nullopt;
    Step st;
    st.rule = std::move(rule);
    st.principal = pr;
    st.weaken = std::move(weaken);
    return st;
  };
  auto has_axiom = [&](Formula f) {
    return std::binary_search(sys_.axioms.begin(), sys_.axioms.end(), f, FormulaLess{});
  };
  if (sys_.side == Side::Intuitionistic) {
    Formula P = s.stoup();
    if (P && P.kind() == Kind::Top) return Step{"topR", P, {}, {}, {}, 0};
    for (Formula f : G)
      if (f.kind() == Kind::Zero) return Step{"0L", f, {}, {}, {}, 0};
    if (P && ms::contains(G, P))
      if (auto st = close("Init", P, minus(G, P))) return st;
    if (P && P.kind() == Kind::One)
      if (auto st = close("1R", P, G)) return st;
    if (P && has_axiom(P))
      if (auto st = close("Ax", P, G)) return st;
    if (!P)
      for (Formula f : G)
        if (f.kind() == Kind::Bot)
          if (auto st = close("botL", f, minus(G, f))) return st;
    return std::nullopt;
  }
  for (Formula f : G)
    if (f.kind() == Kind::Top) return Step{"top", f, {}, {}, {}, 0};
  for (Formula f : distinct(G)) {
    if (f.kind() == Kind::One)
      if (auto st = close("1", f, minus(G, f))) return st;
    if (has_axiom(f))
      if (auto st = close("Ax", f, minus(G, f))) return st;
    Formula g = dual(f);
    if (compare(f, g) < 0 && ms::contains(G, g))
      if (auto st = close("Init", f, minus(minus(G, f), g))) return st;
  }
  return std::nullopt;
}

std::optional<Step> Engine::invertible(const Sequent& s) const {
  const Bag& G = s.ctx();
  Formula P = s.stoup();
  auto step = [](std::string rule, Formula pr, std::vector<Sequent> prem) {
    return Step{std::move(rule), pr, {}, {}, std::move(prem), 0};
  };
  if (sys_.side == Side::Intuitionistic) {
    if (P && P.kind() == Kind::Lolli) return step("-oR", P, {seq(plus(G, P.left()), P.right())});
    for (Formula f : G) {
      if (f.kind() == Kind::Tensor)
        return step("*L", f, {seq(plus(plus(minus(G, f), f.left()), f.right()), P)});
      if (f.kind() == Kind::One) return step("1L", f, {seq(minus(G, f), P)});
    }
    if (P && P.kind() == Kind::With) return step("&R", P, {seq(G, P.left()), seq(G, P.right())});
    for (Formula f : G)
      if (f.kind() == Kind::Plus)
        return step("+L", f, {seq(plus(minus(G, f), f.left()), P), seq(plus(minus(G, f), f.right()), P)});
    if (P && P.kind() == Kind::Bot) return step("botR", P, {seq(G)});
    return std::nullopt;
  }
  for (Formula f : G) {
    switch (f.kind()) {
      case Kind::Par: return step("|", f, {seq(plus(plus(minus(G, f), f.left()), f.right()))});
      case Kind::Bot: return step("bot", f, {seq(minus(G, f))});
      case Kind::With:
        return step("&", f, {seq(plus(minus(G, f), f.left())), seq(plus(minus(G, f), f.right()))});
      default: break;
    }
  }
  return std::nullopt;
}

void Engine::allocations(const Bag& banged, std::size_t c, bool& skipped,
                         const std::function<void(Bag, Bag)>& f) const {
  if (!banged.empty() && c < std::numeric_limits<std::size_t>::max()) skipped = true;
  std::vector<std::size_t> extra(banged.size(), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i == banged.size()) {
      Bag bodies, contract;
      for (std::size_t k = 0; k < banged.size(); ++k) {
        bodies.insert(bodies.end(), extra[k] + 1, banged[k].body());
        contract.insert(contract.end(), extra[k], banged[k]);
      }
      f(std::move(bodies), std::move(contract));
      return;
    }
    for (std::size_t e = 0; e <= left; ++e) {
      extra[i] = e;
      rec(i + 1, left - e);
    }
    extra[i] = 0;
  };
  rec(0, c);
}

void Engine::intuitionistic_moves(const Sequent& s, std::size_t c, std::vector<Step>& out,
                                  bool& skipped) const {
  using enum Exponentials;
  const Bag& G = s.ctx();
  Formula P = s.stoup();
  Bag B, L;
  for (Formula f : G) (shared(f) ? B : L).push_back(f);

  for (Formula f : distinct(L)) {
    if (f.kind() == Kind::With) {
      out.push_back({"&L1", f, {}, {}, {seq(plus(minus(G, f), f.left()), P)}, 0});
      out.push_back({"&L2", f, {}, {}, {seq(plus(minus(G, f), f.right()), P)}, 0});
    }
  }
  if (P && P.kind() == Kind::Plus) {
    out.push_back({"+R1", P, {}, {}, {seq(G, P.left())}, 0});
    out.push_back({"+R2", P, {}, {}, {seq(G, P.right())}, 0});
  }
  if (sys_.exponentials == Standard) {
    for (Formula f : B) {
      out.push_back({"!D", f, {}, {}, {seq(plus(minus(G, f), f.body()), P)}, 0});
      if (c >= 1)
        out.push_back({"!D", f, {f}, {}, {seq(plus(G, f.body()), P)}, 1});
      else
        skipped = true;
    }
  }
  for (Formula f : distinct(L)) {
    if (f.kind() != Kind::Lolli) continue;
    for (auto& [l1, l2] : splits(minus(L, f)))
      out.push_back({"-oL", f, B, {}, {seq(ms::sum(B, l1), f.left()), seq(plus(ms::sum(B, l2), f.right()), P)}, 0});
  }
  if (P && P.kind() == Kind::Tensor) {
    for (auto& [l1, l2] : splits(L))
      out.push_back({"*R", P, B, {}, {seq(ms::sum(B, l1), P.left()), seq(ms::sum(B, l2), P.right())}, 0});
  }
  if (P && P.kind() == Kind::Bang && all_weakenable(L)) {
    if (sys_.exponentials == Standard) out.push_back({"!P", P, {}, L, {seq(B, P.body())}, 0});
    if (sys_.exponentials == Functorial)
      allocations(B, c, skipped, [&](Bag bodies, Bag contract) {
        std::size_t cost = contract.size();
        out.push_back({"!F", P, std::move(contract), L, {seq(std::move(bodies), P.body())}, cost});
      });
    if (sys_.exponentials == Light) {
      out.push_back({"!", P, {}, G, {seq({}, P.body())}, 0});
      for (Formula e : B) out.push_back({"!", P, {}, minus(G, e), {seq({e.body()}, P.body())}, 0});
    }
  }
  if (P && P.kind() == Kind::Para && sys_.exponentials == Light) {
    Bag paras, rest;
    for (Formula f : L) (f.kind() == Kind::Para ? paras : rest).push_back(f);
    if (all_weakenable(rest))
      allocations(B, c, skipped, [&](Bag bodies, Bag contract) {
        for (Formula f : paras) bodies.push_back(f.body());
        std::size_t cost = contract.size();
        out.push_back({"$", P, std::move(contract), rest, {seq(std::move(bodies), P.body())}, cost});
      });
  }
  if (P && sys_.right_weakening) out.push_back({"W'", P, {}, {}, {seq(G)}, 0});
}

void Engine::classical_moves(const Sequent& s, std::size_t c, std::vector<Step>& out, bool& skipped) const {
  using enum Exponentials;
  const Bag& G = s.ctx();
  Bag B, L;
  for (Formula f : G) (shared(f) ? B : L).push_back(f);

  for (Formula f : distinct(L)) {
    if (f.kind() == Kind::Plus) {
      out.push_back({"+1", f, {}, {}, {seq(plus(minus(G, f), f.left()))}, 0});
      out.push_back({"+2", f, {}, {}, {seq(plus(minus(G, f), f.right()))}, 0});
    }
  }
  if (sys_.exponentials == Standard) {
    for (Formula f : B) {
      out.push_back({"?", f, {}, {}, {seq(plus(minus(G, f), f.body()))}, 0});
      if (c >= 1)
        out.push_back({"?", f, {f}, {}, {seq(plus(G, f.body()))}, 1});
      else
        skipped = true;
    }
  }
  for (Formula f : distinct(L)) {
    if (f.kind() != Kind::Tensor) continue;
    for (auto& [l1, l2] : splits(minus(L, f)))
      out.push_back({"*", f, B, {}, {seq(plus(ms::sum(B, l1), f.left())), seq(plus(ms::sum(B, l2), f.right()))}, 0});
  }
  for (Formula f : distinct(L)) {
    if (f.kind() != Kind::Bang) continue;
    Bag others = minus(L, f);
    if (!all_weakenable(others)) continue;
    if (sys_.exponentials == Standard) out.push_back({"!", f, {}, others, {seq(plus(B, f.body()))}, 0});
    if (sys_.exponentials == Functorial)
      allocations(B, c, skipped, [&](Bag bodies, Bag contract) {
        bodies.push_back(f.body());
        std::size_t cost = contract.size();
        out.push_back({"F", f, std::move(contract), others, {seq(std::move(bodies))}, cost});
      });
  }
}

void Engine::moves(const Sequent& s, std::size_t c, std::vector<Step>& out, bool& skipped) const {
  if (sys_.side == Side::Intuitionistic)
    intuitionistic_moves(s, c, out, skipped);
  else
    classical_moves(s, c, out, skipped);
  if (!cuts_) return;
  if (c == 0) {
    skipped = true;
    return;
  }
  for (Formula ax : sys_.axioms) {
    if (sys_.side == Side::Intuitionistic)
      out.push_back({"Cut", ax, {}, {}, {seq({}, ax), seq(plus(s.ctx(), ax), s.stoup())}, 1});
    else
      out.push_back({"Cut", ax, {}, {}, {seq({ax}), seq(plus(s.ctx(), dual(ax)))}, 1});
  }
}

bool Engine::try_step(Entry& e, Step& st, std::size_t c, std::size_t d, Flags& acc) {
  for (const Sequent& p : st.premises) {
    Result r = solve(normalize(p, nullptr), c - st.cost, d - 1);
    if (e.proof) return true;  // proved meanwhile through a deeper occurrence
    if (!r.proved) {
      acc |= r.flags;
      return false;
    }
  }
  e.proof = std::move(st);
  return true;
}

Engine::Result Engine::solve(const Sequent& s, std::size_t c, std::size_t d) {
  Entry& e = memo_[s];  // references into unordered_map survive rehashing
  if (e.proof) return {true, {}};
  for (const Failure& f : e.failures)
    if ((c <= f.c || !f.flags.contraction_limited) && (d <= f.d || !f.flags.depth_truncated))
      return {false, f.flags};
  if (d == 0) return {false, {false, true}};
  if (++nodes_ > b_.max_nodes) throw NodeLimit{};

  if (auto st = closure(s)) {
    e.proof = std::move(*st);
    return {true, {}};
  }
  Flags acc;
  if (auto st = invertible(s)) {
    if (try_step(e, *st, c, d, acc)) return {true, {}};
  } else {
    std::vector<Step> options;
    bool skipped = false;
    moves(s, c, options, skipped);
    if (skipped) acc.contraction_limited = true;
    for (Step& st : options)
      if (try_step(e, st, c, d, acc)) return {true, {}};
  }
  if (!acc.contraction_limited && !acc.depth_truncated) e.failures.clear();
  e.failures.push_back({c, d, acc});
  return {false, acc};
}

ProofTree Engine::build(const Sequent& raw) const {
  Bag dropped;
  Sequent n = normalize(raw, &dropped);
  ProofTree inner = build_normal(n);
  // W steps removing duplicate banged copies, innermost last
  std::vector<Sequent> chain;
  Sequent cur = raw;
  for (Formula f : dropped) {
    chain.push_back(cur);
    cur = cur.with_ctx(minus(cur.ctx(), f));
  }
  for (std::size_t i = chain.size(); i-- > 0;) {
    ProofTree t{chain[i], "W", dropped[i], {}};
    t.children.push_back(std::move(inner));
    inner = std::move(t);
  }
  return inner;
}

ProofTree Engine::build_normal(const Sequent& s) const {
  const Step& st = *memo_.at(s).proof;
  const std::string contraction = sys_.side == Side::Classical ? "?C" : "!C";
  std::vector<std::tuple<Sequent, std::string, Formula>> chain;
  Sequent cur = s;
  for (Formula f : st.contract) {
    chain.emplace_back(cur, contraction, f);
    cur = cur.plus(f);
  }
  for (Formula f : st.weaken) {
    chain.emplace_back(cur, "W", f);
    cur = cur.with_ctx(minus(cur.ctx(), f));
  }
  ProofTree core{cur, st.rule, st.principal, {}};
  for (const Sequent& p : st.premises) core.children.push_back(build(p));
  for (std::size_t i = chain.size(); i-- > 0;) {
    auto& [seqt, rule, pr] = chain[i];
    ProofTree t{seqt, rule, pr, {}};
    t.children.push_back(std::move(core));
    core = std::move(t);
  }
  return core;
}

Verdict Engine::run(const Sequent& goal) {
  Verdict v;
  Sequent root = normalize(goal, nullptr);
  const std::size_t max_d = b_.max_depth;
  bool depth_hit = false, contraction_hit = false;
  try {
    for (std::size_t c = 0; c <= b_.max_bang_contractions; ++c) {
      Flags last;
      for (std::size_t d = std::min<std::size_t>(8, max_d);; d = std::min(d * 2, max_d)) {
        Result r = solve(root, c, d);
        v.stats.depth = std::max(v.stats.depth, d);
        if (r.proved) {
          v.outcome = Outcome::Proved;
          v.proof = build(goal);
          v.stats.nodes = nodes_;
          return v;
        }
        last = r.flags;
        if (!r.flags.depth_truncated || d == max_d) break;
      }
      depth_hit = last.depth_truncated;
      contraction_hit = last.contraction_limited;
      if (!depth_hit && !contraction_hit) {
        v.outcome = Outcome::Refuted;
        v.stats.nodes = nodes_;
        return v;
      }
      if (!contraction_hit) break;
    }
    v.note = depth_hit ? "depth budget exhausted" : "contraction budget exhausted";
  } catch (const NodeLimit&) {
    v.note = "node budget exhausted";
  }
  v.outcome = Outcome::Unknown;
  v.stats.nodes = nodes_;
  return v;
}

void validate(const System& sys, const Sequent& goal, const Budget& b) {
  if (b.max_depth == 0 || b.max_nodes == 0) throw std::invalid_argument("budget depth and node limits must be positive");
  if (!sys.admits(goal)) throw std::invalid_argument(to_string(goal) + " is outside the language of " + sys.name);
}

Verdict certified(const System& sys, Verdict v, bool allow_cut) {
  if (v.proof) {
    CheckResult ck = check_proof(sys, *v.proof, allow_cut);
    if (!ck) throw std::logic_error("search produced an invalid certificate: " + ck.message);
  }
  return v;
}

bool has_exponential(Formula f) {
  Fragment k = f.connectives();
  return k.contains(Conn::Bang) || k.contains(Conn::Quest);
}

std::string base_name(const System& s) { return s.name.substr(0, s.name.find(':')); }

}  // namespace

// ---------------------------------------------------------------- public API

Verdict prove(const System& sys, const Sequent& goal, const Budget& b) {
  validate(sys, goal, b);
  Engine eng(sys, b, false);
  return certified(sys, eng.run(goal), false);
}

std::size_t bck_bound(const Sequent& goal) {
  std::size_t n = goal.ctx().size() + (goal.stoup() ? 1 : 0) + 1;
  for (Formula f : goal.ctx()) n += f.connective_count();
  if (goal.stoup()) n += goal.stoup().connective_count();
  return n;
}

Verdict prove_bck(const Sequent& goal) {
  static const System bck = system_by_name("BCK");
  if (!bck.admits(goal)) throw std::invalid_argument(to_string(goal) + " is not an implicational sequent");
  Budget b;
  b.max_depth = bck_bound(goal);
  b.max_nodes = std::numeric_limits<std::size_t>::max();
  b.max_bang_contractions = 0;
  Engine eng(bck, b, false);
  Verdict v = certified(bck, eng.run(goal), false);
  if (!v.conclusive()) throw std::logic_error("BCK search was truncated on " + to_string(goal));
  return v;
}

Reduced reduce_deducibility(const System& base, const std::vector<Formula>& phi, const Sequent& goal) {
  const std::string name = base_name(base);
  if (name == "InFLew") {
    Bag ctx = goal.ctx();
    for (Formula f : phi) ctx.push_back(Formula::quest(dual(f)));
    return {system_by_name("LLW"), Sequent::classical(std::move(ctx))};
  }
  System target;
  if (name == "FLei") target = system_by_name("ILZW");
  else if (name == "FLew") target = system_by_name("ILZW'");
  else if (name == "FLplus_ei") target = system_by_name("ILLW");
  else if (name == "BCK") target = system_by_name("ILLW:-o,!");
  else if (name == "BCI") target = system_by_name("ILL:-o,!");
  else throw std::invalid_argument("deducibility is not supported over " + base.name);
  Bag ctx = goal.ctx();
  for (Formula f : phi) ctx.push_back(Formula::bang(f));
  return {target, Sequent::intuitionistic(std::move(ctx), goal.stoup())};
}

Verdict deduce(const System& base, const std::vector<Formula>& phi, const Sequent& goal, const Budget& b,
               Route route) {
  System with = with_axioms(base, phi);
  validate(with, goal, b);
  if (route == Route::Direct) {
    Engine eng(with, b, true);
    Verdict v = certified(with, eng.run(goal), true);
    v.uses_axiom_cuts = !phi.empty();
    v.note = v.note.empty() ? "direct" : "direct: " + v.note;
    return v;
  }
  Reduced red = reduce_deducibility(base, phi, goal);
  Verdict v = prove(red.system, red.goal, b);
  v.note = v.note.empty() ? "via " + red.system.name : "via " + red.system.name + ": " + v.note;
  return v;
}

std::optional<Prenex> split_prenex(const Sequent& goal) {
  Prenex out;
  Bag rest;
  const Kind prefix = goal.is_classical() ? Kind::Quest : Kind::Bang;
  for (Formula f : goal.ctx()) {
    if (f.kind() == prefix) {
      if (has_exponential(f.body())) return std::nullopt;
      out.banged.push_back(f.body());
    } else {
      if (has_exponential(f)) return std::nullopt;
      rest.push_back(f);
    }
  }
  if (goal.stoup() && has_exponential(goal.stoup())) return std::nullopt;
  out.rest = goal.with_ctx(std::move(rest));
  return out;
}

Verdict prenex_expand_prove(const System& target, const Sequent& goal, const Budget& b) {
  auto pre = split_prenex(goal);
  if (!pre) throw std::invalid_argument(to_string(goal) + " is not prenex");
  Verdict last;
  SearchStats total;
  bool unknown = false;
  for (std::size_t n = 0; n <= b.max_prenex_copies; ++n) {
    Bag ctx = pre->rest.ctx();
    for (std::size_t i = 0; i < n; ++i) ctx.insert(ctx.end(), pre->banged.begin(), pre->banged.end());
    Verdict v = prove(target, pre->rest.with_ctx(std::move(ctx)), b);
    total.nodes += v.stats.nodes;
    total.depth = std::max(total.depth, v.stats.depth);
    if (v.proved()) {
      v.witness_n = n;
      v.stats = total;
      return v;
    }
    unknown |= !v.conclusive();
    if (pre->banged.empty()) break;
  }
  last.stats = total;
  if (pre->banged.empty() && !unknown) {
    last.outcome = Outcome::Refuted;
  } else {
    last.outcome = Outcome::Unknown;
    last.note = "no proof with at most " + std::to_string(b.max_prenex_copies) + " copies";
  }
  return last;
}

}  // namespace subtower
