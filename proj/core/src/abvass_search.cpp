// Bounded leaf-covering tree search. The configuration graph is explored
// breadth-first from the root under the counter cap while solvability is
// propagated backwards. Minimal tree heights are computed over the explored
// AND/OR hypergraph with Knuth's generalization of Dijkstra (height = 1 +
// max over children). Once the root has a tree of height h, exploration
// stops after depth h - 1, since every tree of height at most h lies inside
// the explored part.

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_map>

#include "subtower/abvass.hpp"

namespace subtower {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& k) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : k) h = (h ^ x) * 0x100000001b3ULL;
    return h;
  }
};

struct Edge {
  std::uint32_t parent;
  Step step;
  std::uint32_t index;
  std::uint32_t first, count;  // into the flat child list
  std::uint32_t unsolved;  // child occurrences not yet known solvable
};

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

class Search {
 public:
  Search(const Abvass& a, const std::vector<StateId>& leaves, bool lossy, const Budget& b)
      : a_(a), leaves_(leaves), lossy_(lossy), b_(b) {}

  ReachResult run(const Config& root);

 private:
  std::uint32_t intern(const Config& c, std::uint32_t dist);
  void solve(std::uint32_t id);
  // Minimal heights over the explored graph; returns the root's.
  std::uint32_t heights();
  DeductionTree extract(std::uint32_t id) const;

  const Abvass& a_;
  const std::vector<StateId>& leaves_;
  bool lossy_;
  Budget b_;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash> ids_;
  std::vector<Config> configs_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> kids_;
  std::vector<std::vector<std::uint32_t>> rev_;  // config -> edges it feeds
  std::vector<std::uint32_t> dist_;
  std::vector<bool> leaf_, solved_;
  std::vector<std::uint32_t> height_, best_;
};

std::uint32_t Search::intern(const Config& c, std::uint32_t dist) {
  std::vector<std::uint32_t> key;
  key.reserve(c.v.size() + 1);
  key.push_back(c.state);
  key.insert(key.end(), c.v.begin(), c.v.end());
  auto [it, fresh] = ids_.try_emplace(std::move(key), static_cast<std::uint32_t>(configs_.size()));
  if (fresh) {
    configs_.push_back(c);
    rev_.emplace_back();
    dist_.push_back(dist);
    bool leaf = std::all_of(c.v.begin(), c.v.end(), [](std::uint32_t x) { return x == 0; }) &&
                std::find(leaves_.begin(), leaves_.end(), c.state) != leaves_.end();
    leaf_.push_back(leaf);
    solved_.push_back(false);
    if (leaf) solve(it->second);
  }
  return it->second;
}

void Search::solve(std::uint32_t id) {
  std::vector<std::uint32_t> stack{id};
  solved_[id] = true;
  while (!stack.empty()) {
    std::uint32_t c = stack.back();
    stack.pop_back();
    for (std::uint32_t eid : rev_[c]) {
      Edge& e = edges_[eid];
      if (--e.unsolved == 0 && !solved_[e.parent]) {
        solved_[e.parent] = true;
        stack.push_back(e.parent);
      }
    }
  }
}

std::uint32_t Search::heights() {
  height_.assign(configs_.size(), kInf);
  best_.assign(configs_.size(), kInf);
  std::vector<std::uint32_t> remaining(edges_.size()), max_h(edges_.size(), 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) remaining[i] = edges_[i].count;
  std::vector<bool> done(configs_.size(), false);
  using Item = std::pair<std::uint32_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (std::uint32_t i = 0; i < configs_.size(); ++i)
    if (leaf_[i]) {
      height_[i] = 0;
      pq.push({0, i});
    }
  while (!pq.empty()) {
    auto [h, id] = pq.top();
    pq.pop();
    if (done[id]) continue;
    done[id] = true;
    for (std::uint32_t eid : rev_[id]) {
      const Edge& e = edges_[eid];
      max_h[eid] = std::max(max_h[eid], h);
      if (--remaining[eid] != 0) continue;
      std::uint32_t cand = max_h[eid] + 1;
      if (!done[e.parent] && cand < height_[e.parent]) {
        height_[e.parent] = cand;
        best_[e.parent] = eid;
        pq.push({cand, e.parent});
      }
    }
  }
  return height_[0];
}

DeductionTree Search::extract(std::uint32_t id) const {
  DeductionTree t;
  t.config = configs_[id];
  if (best_[id] == kInf) return t;  // leaf
  const Edge& e = edges_[best_[id]];
  t.step = e.step;
  t.index = e.index;
  for (std::uint32_t k = 0; k < e.count; ++k) t.children.push_back(extract(kids_[e.first + k]));
  return t;
}

ReachResult Search::run(const Config& root) {
  ReachResult res;
  if (root.state >= a_.state_count() || root.v.size() != a_.dim())
    throw std::invalid_argument("invalid root configuration");
  for (StateId q : leaves_)
    if (q >= a_.state_count()) throw std::invalid_argument("leaf state out of range");
  const auto cap = static_cast<std::uint32_t>(b_.counter_cap);
  auto over_cap = [&](const Config& c) {
    return std::any_of(c.v.begin(), c.v.end(), [&](std::uint32_t x) { return x > cap; });
  };

  intern(root, 0);
  std::uint32_t last_layer = kInf;  // deepest layer that still needs expanding
  std::size_t next = 0;
  while (next < configs_.size() && dist_[next] <= last_layer) {
    if (next >= b_.max_nodes) {
      res.capped = true;
      res.note = "node budget exhausted";
      break;
    }
    const std::uint32_t id = static_cast<std::uint32_t>(next++);
    if (leaf_[id]) continue;
    Config c = configs_[id];
    if (over_cap(c)) {
      res.capped = true;
      continue;
    }
    for (Expansion& ex : expand(a_, c, lossy_)) {
      Edge e{id, ex.step, ex.index, static_cast<std::uint32_t>(kids_.size()),
             static_cast<std::uint32_t>(ex.children.size()), 0};
      for (const Config& k : ex.children) kids_.push_back(intern(k, dist_[id] + 1));
      auto eid = static_cast<std::uint32_t>(edges_.size());
      for (std::uint32_t k = 0; k < e.count; ++k) {
        std::uint32_t kid = kids_[e.first + k];
        rev_[kid].push_back(eid);
        if (!solved_[kid]) ++e.unsolved;
      }
      edges_.push_back(e);
      if (e.unsolved == 0 && !solved_[id]) solve(id);
    }
    if (solved_[0] && last_layer == kInf) last_layer = heights() - 1;
  }
  res.explored = next;
  if (res.capped && res.note.empty()) res.note = "counter cap reached";
  heights();

  if (height_[0] != kInf) {
    if (height_[0] + 1 > b_.max_tree_height) {
      res.outcome = Outcome::Unknown;
      res.note = "tree height budget exhausted";
      return res;
    }
    res.outcome = Outcome::Proved;
    res.tree = extract(0);
    return res;
  }
  res.outcome = res.capped ? Outcome::Unknown : Outcome::Refuted;
  return res;
}

}  // namespace

ReachResult search_deduction(const Abvass& a, const std::vector<StateId>& leaves, const Config& root, bool lossy,
                             const Budget& b) {
  Search s(a, leaves, lossy, b);
  return s.run(root);
}

}  // namespace subtower
