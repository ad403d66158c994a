#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subtower/proof.hpp"
#include "subtower/prover.hpp"

namespace subtower {

using Vec = std::vector<std::uint32_t>;
using Update = std::vector<std::int64_t>;
using StateId = std::uint32_t;

struct UnaryRule {
  StateId from, to;
  Update update;
  std::string label;  // free-form tag, e.g. the encoder rule family
};
// split: from -> left + right; fork: from -> left & right.
struct BinaryRule {
  StateId from, left, right;
  std::string label;
};
struct ZeroRule {
  StateId from, to;
  std::string label;
};

// An alternating branching VASS with full zero tests. States are named;
// rules are grouped per source state for expansion.
class Abvass {
 public:
  explicit Abvass(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  void set_dim(std::size_t d);
  std::size_t state_count() const { return names_.size(); }

  // Adds the state if new; returns its id either way.
  StateId add_state(std::string_view name);
  std::optional<StateId> find_state(std::string_view name) const;
  const std::string& state_name(StateId q) const { return names_.at(q); }

  void add_unary(StateId from, StateId to, Update u, std::string label = {});
  void add_split(StateId from, StateId left, StateId right, std::string label = {});
  void add_fork(StateId from, StateId left, StateId right, std::string label = {});
  void add_zero(StateId from, StateId to, std::string label = {});

  const std::vector<UnaryRule>& unary() const { return unary_; }
  const std::vector<BinaryRule>& splits() const { return split_; }
  const std::vector<BinaryRule>& forks() const { return fork_; }
  const std::vector<ZeroRule>& zeros() const { return zero_; }

  // Rule indices by source state.
  const std::vector<std::uint32_t>& unary_from(StateId q) const { return by_state_.at(q).unary; }
  const std::vector<std::uint32_t>& split_from(StateId q) const { return by_state_.at(q).split; }
  const std::vector<std::uint32_t>& fork_from(StateId q) const { return by_state_.at(q).fork; }
  const std::vector<std::uint32_t>& zero_from(StateId q) const { return by_state_.at(q).zero; }

  // Every unary update is +e_i or -e_i.
  bool is_ordinary() const;
  // No fork and no zero-test rules.
  bool is_bvass() const;

  // States declared with `leaf` in the text format.
  std::vector<StateId> leaves;

 private:
  struct Index {
    std::vector<std::uint32_t> unary, split, fork, zero;
  };
  std::size_t dim_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> ids_;
  std::vector<UnaryRule> unary_;
  std::vector<BinaryRule> split_, fork_;
  std::vector<ZeroRule> zero_;
  std::vector<Index> by_state_;
};

// Line format: `dim d`, `state id`, `leaf id`, `unary q -> r : +1*e_1, -2*e_3`,
// `split q -> a + b`, `fork q -> a & b`, `zero q -> r`; `#` starts a comment.
// Throws ParseError with a 1-based line number as position.
Abvass parse_abvass(std::string_view text);
std::string to_text(const Abvass& a);

struct Config {
  StateId state = 0;
  Vec v;
  bool operator==(const Config&) const = default;
};
std::string to_string(const Abvass& a, const Config& c);
// "q" or "q, (1,0,2)".
Config parse_config(const Abvass& a, std::string_view text);

enum class Step : std::uint8_t { Leaf, Unary, Split, Fork, Zero, Loss };
std::string to_string(Step s);

// `index` is the rule index for unary/split/fork/zero and the 0-based
// coordinate for loss.
struct DeductionTree {
  Config config;
  Step step = Step::Leaf;
  std::uint32_t index = 0;
  std::vector<DeductionTree> children;

  std::size_t node_count() const;
  std::size_t height() const;
};

std::string tree_to_json(const Abvass& a, const DeductionTree& t, int indent = -1);
DeductionTree tree_from_json(const Abvass& a, std::string_view json);

struct Expansion {
  Step step;
  std::uint32_t index;
  std::vector<Config> children;
};
// One-step backward expansions of c, forks before splits; split
// decompositions in lexicographic order of the left vector.
std::vector<Expansion> expand(const Abvass& a, const Config& c, bool lossy);

struct TreeCheck {
  bool ok = true;
  std::string message;
  std::vector<std::size_t> path;
  explicit operator bool() const { return ok; }
};
TreeCheck check_tree(const Abvass& a, const std::vector<StateId>& leaves, const DeductionTree& t, bool lossy);

struct ReachResult {
  Outcome outcome = Outcome::Unknown;
  std::optional<DeductionTree> tree;  // minimal height, set iff Proved
  std::string note;
  std::size_t explored = 0;
  bool capped = false;  // a counter exceeded the cap or the node limit was hit
};
// Leaf-covering deduction tree search with counters bounded by
// b.counter_cap and at most b.max_nodes configurations.
ReachResult search_deduction(const Abvass& a, const std::vector<StateId>& leaves, const Config& root, bool lossy,
                             const Budget& b = default_budget());

// Loss nodes only directly above a leaf, another loss or a zero test.
bool is_regular(const Abvass& a, const std::vector<StateId>& leaves, const DeductionTree& t);
// Pushes losses towards the leaves; the root configuration is unchanged.
// Throws std::invalid_argument if t does not check under lossy semantics.
DeductionTree normalize_regular(const Abvass& a, const std::vector<StateId>& leaves, const DeductionTree& t);

}  // namespace subtower
