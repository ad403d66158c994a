#include "subtower/corpus.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace subtower {

Grammar Grammar::of(Polarity pol, Fragment k, std::vector<std::string> atoms) {
  Grammar g;
  g.polarity = pol;
  g.atoms = std::move(atoms);
  g.dual_atoms = pol == Polarity::Classical;
  for (Kind c : {Kind::One, Kind::Top, Kind::Bot, Kind::Zero})
    if (k.contains(conn_of(c))) g.constants.push_back(c);
  const bool cl = pol == Polarity::Classical;
  for (Kind u : {Kind::Bang, Kind::Quest, Kind::Para}) {
    if (!k.contains(conn_of(u))) continue;
    if ((u == Kind::Quest && !cl) || (u == Kind::Para && cl)) continue;
    g.unary.push_back(u);
  }
  for (Kind b : {Kind::Tensor, Kind::Par, Kind::With, Kind::Plus, Kind::Lolli}) {
    if (!k.contains(conn_of(b))) continue;
    if ((b == Kind::Par && !cl) || (b == Kind::Lolli && cl)) continue;
    g.binary.push_back(b);
  }
  return g;
}

namespace {

std::vector<Formula> leaves(const Grammar& g) {
  std::vector<Formula> out;
  for (const auto& a : g.atoms) {
    out.push_back(Formula::var(a));
    if (g.dual_atoms && g.polarity == Polarity::Classical) out.push_back(Formula::dual_var(a));
  }
  for (Kind c : g.constants) out.push_back(Formula::constant(c));
  return out;
}

// Formulas by exact size, memoized per call.
class Enumerator {
 public:
  explicit Enumerator(const Grammar& g) : g_(g) {}

  const std::vector<Formula>& of(std::size_t n) {
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    std::vector<Formula> out;
    if (n == 1) {
      out = leaves(g_);
    } else if (n >= 2) {
      for (Kind u : g_.unary)
        for (Formula a : of(n - 1)) out.push_back(Formula::unary(u, a));
      for (Kind b : g_.binary)
        for (std::size_t i = 1; i + 1 < n; ++i) {
          const auto& ls = of(i);
          const auto& rs = of(n - 1 - i);
          for (Formula l : ls)
            for (Formula r : rs) out.push_back(Formula::binary(b, l, r));
        }
    }
    return memo_.emplace(n, std::move(out)).first->second;
  }

 private:
  const Grammar& g_;
  std::map<std::size_t, std::vector<Formula>> memo_;
};

// Number of formulas of each size, as floating point to avoid overflow.
std::vector<long double> counts(const Grammar& g, std::size_t n) {
  std::vector<long double> c(n + 1, 0);
  if (n >= 1) c[1] = static_cast<long double>(leaves(g).size());
  for (std::size_t k = 2; k <= n; ++k) {
    c[k] = static_cast<long double>(g.unary.size()) * c[k - 1];
    for (std::size_t i = 1; i + 1 < k; ++i) c[k] += static_cast<long double>(g.binary.size()) * c[i] * c[k - 1 - i];
  }
  return c;
}

Formula sample(const Grammar& g, std::size_t n, const std::vector<long double>& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<long double> u(0, 1);
  if (n == 1) {
    auto ls = leaves(g);
    return ls[std::uniform_int_distribution<std::size_t>(0, ls.size() - 1)(rng)];
  }
  long double x = u(rng) * c[n];
  for (Kind k : g.unary) {
    if (x < c[n - 1]) return Formula::unary(k, sample(g, n - 1, c, rng));
    x -= c[n - 1];
  }
  for (Kind b : g.binary)
    for (std::size_t i = 1; i + 1 < n; ++i) {
      long double w = c[i] * c[n - 1 - i];
      if (x < w || (b == g.binary.back() && i + 2 == n)) return Formula::binary(b, sample(g, i, c, rng), sample(g, n - 1 - i, c, rng));
      x -= w;
    }
  throw std::logic_error("sampling fell through");
}

}  // namespace

std::vector<Formula> formulas_of_size(const Grammar& g, std::size_t size) {
  Enumerator e(g);
  return e.of(size);
}

std::vector<Formula> formulas_up_to(const Grammar& g, std::size_t max_size) {
  Enumerator e(g);
  std::vector<Formula> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    const auto& v = e.of(n);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<Formula> formulas_by_closure(const Grammar& g, std::size_t max_closure, std::size_t limit, bool* complete) {
  // A formula with closure size k has children with closure size < k, and
  // its top connective fixes the children, so level k is generated exactly
  // once from the formulas of closure size at most k - 1.
  using Set = std::vector<std::uint32_t>;  // sorted positions in `all`
  std::vector<Formula> all;
  std::vector<Set> closure;
  if (complete) *complete = true;
  if (max_closure == 0) return {};
  auto union_size = [](const Set& a, const Set& b) {
    std::size_t i = 0, j = 0, n = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i] < b[j])) {
        ++i;
      } else if (i == a.size() || b[j] < a[i]) {
        ++j;
      } else {
        ++i;
        ++j;
      }
      ++n;
    }
    return n;
  };
  auto add = [&](Formula f, Set s) {
    auto id = static_cast<std::uint32_t>(all.size());
    s.push_back(id);  // ids grow, so s stays sorted
    all.push_back(f);
    closure.push_back(std::move(s));
  };
  for (Formula f : leaves(g)) add(f, {});
  for (std::size_t k = 2; k <= max_closure; ++k) {
    const std::size_t prev = all.size();
    for (std::size_t i = 0; i < prev; ++i) {
      if (closure[i].size() != k - 1) continue;
      for (Kind u : g.unary) add(Formula::unary(u, all[i]), closure[i]);
    }
    for (std::size_t i = 0; i < prev; ++i)
      for (std::size_t j = 0; j < prev; ++j) {
        if (union_size(closure[i], closure[j]) != k - 1) continue;
        Set u;
        std::set_union(closure[i].begin(), closure[i].end(), closure[j].begin(), closure[j].end(), std::back_inserter(u));
        for (Kind b : g.binary) add(Formula::binary(b, all[i], all[j]), u);
        if (all.size() > limit) {
          if (complete) *complete = false;
          all.resize(limit);
          return all;
        }
      }
  }
  return all;
}

Formula random_formula(const Grammar& g, std::size_t size, std::mt19937_64& rng) {
  auto c = counts(g, size);
  if (size == 0 || c[size] == 0) throw std::invalid_argument("no formula of size " + std::to_string(size));
  return sample(g, size, c, rng);
}

Formula random_formula_up_to(const Grammar& g, std::size_t max_size, std::mt19937_64& rng) {
  auto c = counts(g, max_size);
  std::vector<std::size_t> sizes;
  for (std::size_t n = 1; n <= max_size; ++n)
    if (c[n] > 0) sizes.push_back(n);
  if (sizes.empty()) throw std::invalid_argument("no formula of size at most " + std::to_string(max_size));
  std::size_t n = sizes[std::uniform_int_distribution<std::size_t>(0, sizes.size() - 1)(rng)];
  return sample(g, n, c, rng);
}

std::vector<Formula> random_multiset(const Grammar& g, std::size_t max_total, std::size_t max_formulas,
                                     std::mt19937_64& rng) {
  if (max_total == 0 || max_formulas == 0) return {};
  auto c = counts(g, max_total);
  std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min(max_formulas, max_total))(rng);
  std::size_t total = std::uniform_int_distribution<std::size_t>(k, max_total)(rng);
  // Random composition of `total` into k positive parts with a size that has formulas.
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::size_t> cuts;
    for (std::size_t i = 0; i + 1 < k; ++i) cuts.push_back(std::uniform_int_distribution<std::size_t>(1, total - 1)(rng));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.size() + 1 != k) continue;
    std::vector<std::size_t> parts;
    std::size_t prev = 0;
    for (auto x : cuts) {
      parts.push_back(x - prev);
      prev = x;
    }
    parts.push_back(total - prev);
    if (std::any_of(parts.begin(), parts.end(), [&](std::size_t p) { return c[p] == 0; })) continue;
    std::vector<Formula> out;
    for (auto p : parts) out.push_back(sample(g, p, c, rng));
    return out;
  }
  return {sample(g, 1, c, rng)};
}

std::vector<Sequent> implicational_sequents(const std::vector<std::string>& atoms, std::size_t max_total) {
  Grammar g;
  g.polarity = Polarity::Intuitionistic;
  g.atoms = atoms;
  g.dual_atoms = false;
  g.binary = {Kind::Lolli};
  Enumerator e(g);
  // Formulas in a fixed order with their sizes.
  std::vector<std::pair<Formula, std::size_t>> pool;
  for (std::size_t n = 1; n <= max_total; ++n)
    for (Formula f : e.of(n)) pool.push_back({f, n});
  std::vector<Sequent> out;
  std::vector<Formula> ctx;
  // Multisets as non-decreasing index sequences into `pool`.
  auto rec = [&](auto& self, std::size_t from, std::size_t used) -> void {
    for (const auto& [a, n] : pool)
      if (used + n <= max_total) out.push_back(Sequent::intuitionistic(ctx, a));
    for (std::size_t i = from; i < pool.size(); ++i) {
      if (used + pool[i].second + 1 > max_total) continue;
      ctx.push_back(pool[i].first);
      self(self, i, used + pool[i].second);
      ctx.pop_back();
    }
  };
  if (max_total >= 1) rec(rec, 0, 0);
  return out;
}

std::vector<BvassCase> hand_built_bvass() {
  struct Row {
    const char* name;
    const char* text;
    const char* root;
  };
  static const Row rows[] = {
      {"inc-then-leaf", "dim 1\nstate a\nstate b\nleaf b\nunary a -> b : +e_1\n", "a"},
      {"dec-from-zero", "dim 1\nstate a\nstate b\nleaf b\nunary a -> b : -e_1\n", "a"},
      {"dec-from-one", "dim 1\nstate a\nstate b\nleaf b\nunary a -> b : -e_1\n", "a, (1)"},
      {"pump-then-dec", "dim 1\nstate a\nstate b\nleaf b\nunary a -> a : +e_1\nunary a -> b : -e_1\n", "a"},
      {"split-two-leaves", "dim 1\nstate a\nstate b\nstate c\nleaf b\nleaf c\nsplit a -> b + c\n", "a"},
      {"split-starved", "dim 1\nstate a\nstate b\nstate c\nleaf b\nsplit a -> b + c\nunary c -> b : -e_1\n", "a"},
      {"split-fed", "dim 1\nstate a\nstate b\nstate c\nleaf b\nsplit a -> b + c\nunary c -> b : -e_1\nunary a -> a : +e_1\n",
       "a"},
      {"root-is-leaf", "dim 1\nstate a\nleaf a\n", "a"},
      {"no-rules", "dim 1\nstate a\nstate b\nleaf b\n", "a"},
      {"wrong-counter", "dim 2\nstate a\nstate b\nstate c\nleaf c\nunary a -> b : +e_1\nunary b -> c : -e_2\n", "a"},
      {"right-counter", "dim 2\nstate a\nstate b\nstate c\nleaf c\nunary a -> b : +e_2\nunary b -> c : -e_2\n", "a"},
      {"pump-other", "dim 2\nstate a\nstate b\nleaf b\nunary a -> a : +e_1\nunary a -> b : -e_2\n", "a"},
      {"two-phase",
       "dim 2\nstate a\nstate b\nstate c\nleaf c\nunary a -> a : +e_1\nunary a -> b : +e_2\nunary b -> b : -e_1\n"
       "unary b -> c : -e_2\n",
       "a"},
      {"self-split", "dim 1\nstate a\nstate b\nleaf b\nsplit a -> a + a\nunary a -> b : +e_1\n", "a"},
      {"loss-only", "dim 2\nstate a\nstate b\nleaf a\nunary a -> b : -e_1\nunary b -> a : -e_1\n", "a, (1,0)"},
      {"need-two", "dim 1\nstate a\nstate b\nstate c\nleaf c\nunary a -> b : -e_1\nunary b -> c : -e_1\n", "a, (1)"},
      {"have-two", "dim 1\nstate a\nstate b\nstate c\nleaf c\nunary a -> b : -e_1\nunary b -> c : -e_1\n", "a, (2)"},
      {"split-share", "dim 1\nstate a\nstate b\nstate c\nleaf b\nsplit a -> b + c\nunary c -> b : -e_1\n", "a, (1)"},
      {"both-counters", "dim 2\nstate a\nstate b\nstate c\nleaf c\nunary a -> b : -e_1\nunary b -> c : -e_2\n",
       "a, (1,1)"},
      {"one-short", "dim 2\nstate a\nstate b\nstate c\nleaf c\nunary a -> b : -e_1\nunary b -> c : -e_2\n", "a, (1,0)"},
  };
  std::vector<BvassCase> out;
  for (const Row& s : rows) {
    BvassCase c;
    c.name = s.name;
    c.machine = parse_abvass(s.text);
    c.leaves = c.machine.leaves;
    c.root = parse_config(c.machine, s.root);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace subtower
