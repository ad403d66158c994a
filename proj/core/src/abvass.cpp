#include "subtower/abvass.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace subtower {

// ---------------------------------------------------------------- machine

void Abvass::set_dim(std::size_t d) {
  if (!unary_.empty() && d != dim_) throw std::invalid_argument("dimension changed after unary rules were added");
  dim_ = d;
}

StateId Abvass::add_state(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("empty state name");
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  auto id = static_cast<StateId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(std::string(name), id);
  by_state_.emplace_back();
  return id;
}

std::optional<StateId> Abvass::find_state(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

namespace {
void require_state(const Abvass& a, StateId q) {
  if (q >= a.state_count()) throw std::invalid_argument("unknown state id " + std::to_string(q));
}
}  // namespace

void Abvass::add_unary(StateId from, StateId to, Update u, std::string label) {
  require_state(*this, from);
  require_state(*this, to);
  if (u.size() != dim_) throw std::invalid_argument("update has the wrong dimension");
  by_state_[from].unary.push_back(static_cast<std::uint32_t>(unary_.size()));
  unary_.push_back({from, to, std::move(u), std::move(label)});
}

void Abvass::add_split(StateId from, StateId left, StateId right, std::string label) {
  require_state(*this, from);
  require_state(*this, left);
  require_state(*this, right);
  by_state_[from].split.push_back(static_cast<std::uint32_t>(split_.size()));
  split_.push_back({from, left, right, std::move(label)});
}

void Abvass::add_fork(StateId from, StateId left, StateId right, std::string label) {
  require_state(*this, from);
  require_state(*this, left);
  require_state(*this, right);
  by_state_[from].fork.push_back(static_cast<std::uint32_t>(fork_.size()));
  fork_.push_back({from, left, right, std::move(label)});
}

void Abvass::add_zero(StateId from, StateId to, std::string label) {
  require_state(*this, from);
  require_state(*this, to);
  by_state_[from].zero.push_back(static_cast<std::uint32_t>(zero_.size()));
  zero_.push_back({from, to, std::move(label)});
}

bool Abvass::is_ordinary() const {
  return std::all_of(unary_.begin(), unary_.end(), [](const UnaryRule& r) {
    std::size_t nonzero = 0;
    for (auto x : r.update) {
      if (x == 0) continue;
      if (x != 1 && x != -1) return false;
      ++nonzero;
    }
    return nonzero == 1;
  });
}

bool Abvass::is_bvass() const { return fork_.empty() && zero_.empty(); }

// ---------------------------------------------------------------- text format

namespace {

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::int64_t parse_int(std::string_view s, std::size_t line) {
  std::int64_t n = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw ParseError("bad number '" + std::string(s) + "'", line);
  return n;
}

// "+1*e_1, -2*e_3", "e_2", "-e_1", or "0" for the zero vector.
Update parse_update(std::string_view text, std::size_t dim, std::size_t line) {
  Update u(dim, 0);
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty() || s == "0") return u;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto comma = s.find(',', pos);
    std::string term = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? s.size() : comma + 1;
    std::int64_t sign = 1, coeff = 1;
    std::size_t i = 0;
    if (i < term.size() && (term[i] == '+' || term[i] == '-')) sign = term[i++] == '-' ? -1 : 1;
    auto star = term.find('*', i);
    if (star != std::string::npos) {
      coeff = parse_int(std::string_view(term).substr(i, star - i), line);
      i = star + 1;
    }
    if (term.compare(i, 1, "e") != 0) throw ParseError("expected e_k in update term '" + term + "'", line);
    ++i;
    if (i < term.size() && term[i] == '_') ++i;
    auto k = parse_int(std::string_view(term).substr(i), line);
    if (k < 1 || static_cast<std::size_t>(k) > dim)
      throw ParseError("coordinate e_" + std::to_string(k) + " out of range", line);
    u[static_cast<std::size_t>(k - 1)] += sign * coeff;
  }
  return u;
}

}  // namespace

Abvass parse_abvass(std::string_view text) {
  Abvass a;
  bool have_dim = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto colon = line.find(':');
    auto head = tokens(line.substr(0, colon));
    if (head.empty()) continue;
    const std::string& kw = head[0];
    auto need = [&](std::size_t n) {
      if (head.size() != n) throw ParseError("malformed '" + kw + "' line", line_no);
    };
    if (kw == "dim") {
      need(2);
      a.set_dim(static_cast<std::size_t>(parse_int(head[1], line_no)));
      have_dim = true;
    } else if (kw == "state") {
      need(2);
      a.add_state(head[1]);
    } else if (kw == "leaf") {
      need(2);
      StateId q = a.add_state(head[1]);
      if (std::find(a.leaves.begin(), a.leaves.end(), q) == a.leaves.end()) a.leaves.push_back(q);
    } else if (kw == "unary") {
      need(4);
      if (head[2] != "->") throw ParseError("expected '->'", line_no);
      if (!have_dim) throw ParseError("'dim' must precede rules", line_no);
      Update u = colon == std::string_view::npos ? Update(a.dim(), 0)
                                                 : parse_update(line.substr(colon + 1), a.dim(), line_no);
      a.add_unary(a.add_state(head[1]), a.add_state(head[3]), std::move(u));
    } else if (kw == "split" || kw == "fork") {
      need(6);
      const char* op = kw == "split" ? "+" : "&";
      if (head[2] != "->" || head[4] != op) throw ParseError("malformed '" + kw + "' line", line_no);
      StateId q = a.add_state(head[1]), l = a.add_state(head[3]), r = a.add_state(head[5]);
      kw == "split" ? a.add_split(q, l, r) : a.add_fork(q, l, r);
    } else if (kw == "zero") {
      need(4);
      if (head[2] != "->") throw ParseError("expected '->'", line_no);
      a.add_zero(a.add_state(head[1]), a.add_state(head[3]));
    } else {
      throw ParseError("unknown keyword '" + kw + "'", line_no);
    }
  }
  return a;
}

std::string to_text(const Abvass& a) {
  std::ostringstream out;
  out << "dim " << a.dim() << "\n";
  for (StateId q = 0; q < a.state_count(); ++q) out << "state " << a.state_name(q) << "\n";
  for (StateId q : a.leaves) out << "leaf " << a.state_name(q) << "\n";
  for (const auto& r : a.unary()) {
    out << "unary " << a.state_name(r.from) << " -> " << a.state_name(r.to) << " :";
    bool any = false;
    for (std::size_t k = 0; k < r.update.size(); ++k) {
      if (r.update[k] == 0) continue;
      out << (any ? ", " : " ") << (r.update[k] > 0 ? "+" : "") << r.update[k] << "*e_" << k + 1;
      any = true;
    }
    if (!any) out << " 0";
    if (!r.label.empty()) out << "  # " << r.label;
    out << "\n";
  }
  for (const auto& r : a.splits())
    out << "split " << a.state_name(r.from) << " -> " << a.state_name(r.left) << " + " << a.state_name(r.right)
        << (r.label.empty() ? "" : "  # " + r.label) << "\n";
  for (const auto& r : a.forks())
    out << "fork " << a.state_name(r.from) << " -> " << a.state_name(r.left) << " & " << a.state_name(r.right)
        << (r.label.empty() ? "" : "  # " + r.label) << "\n";
  for (const auto& r : a.zeros())
    out << "zero " << a.state_name(r.from) << " -> " << a.state_name(r.to)
        << (r.label.empty() ? "" : "  # " + r.label) << "\n";
  return out.str();
}

// ---------------------------------------------------------------- configs and trees

std::string to_string(const Abvass& a, const Config& c) {
  std::string s = a.state_name(c.state) + ", (";
  for (std::size_t i = 0; i < c.v.size(); ++i) s += (i ? "," : "") + std::to_string(c.v[i]);
  return s + ")";
}

Config parse_config(const Abvass& a, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  auto paren = s.find('(');
  std::string name = s.substr(0, paren);
  if (!name.empty() && name.back() == ',') name.pop_back();
  auto q = a.find_state(name);
  if (!q) throw std::invalid_argument("unknown state '" + name + "'");
  Config c{*q, Vec(a.dim(), 0)};
  if (paren == std::string::npos) return c;
  auto close = s.find(')', paren);
  if (close == std::string::npos) throw std::invalid_argument("unterminated vector in '" + s + "'");
  std::string body = s.substr(paren + 1, close - paren - 1);
  std::size_t k = 0, pos = 0;
  while (!body.empty() && pos <= body.size()) {
    auto comma = body.find(',', pos);
    std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (k >= c.v.size()) throw std::invalid_argument("vector longer than the dimension");
    auto n = parse_int(item, 0);
    if (n < 0) throw std::invalid_argument("negative counter");
    c.v[k++] = static_cast<std::uint32_t>(n);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (k != c.v.size() && !body.empty()) throw std::invalid_argument("vector shorter than the dimension");
  return c;
}

std::string to_string(Step s) {
  switch (s) {
    case Step::Leaf: return "leaf";
    case Step::Unary: return "unary";
    case Step::Split: return "split";
    case Step::Fork: return "fork";
    case Step::Zero: return "zero";
    case Step::Loss: return "loss";
  }
  return "?";
}

std::size_t DeductionTree::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

std::size_t DeductionTree::height() const {
  std::size_t h = 0;
  for (const auto& c : children) h = std::max(h, c.height());
  return h + 1;
}

namespace {

using nlohmann::json;

json tree_json(const Abvass& a, const DeductionTree& t) {
  json j;
  j["state"] = a.state_name(t.config.state);
  j["vector"] = t.config.v;
  j["rule"] = to_string(t.step);
  if (t.step != Step::Leaf) j["index"] = t.index;
  json kids = json::array();
  for (const auto& c : t.children) kids.push_back(tree_json(a, c));
  j["children"] = std::move(kids);
  return j;
}

Step step_of(const std::string& s) {
  for (Step k : {Step::Leaf, Step::Unary, Step::Split, Step::Fork, Step::Zero, Step::Loss})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown deduction rule '" + s + "'");
}

DeductionTree tree_of(const Abvass& a, const json& j) {
  DeductionTree t;
  auto q = a.find_state(j.at("state").get<std::string>());
  if (!q) throw std::invalid_argument("unknown state in tree");
  t.config = {*q, j.at("vector").get<Vec>()};
  t.step = step_of(j.at("rule").get<std::string>());
  if (j.contains("index")) t.index = j["index"].get<std::uint32_t>();
  if (j.contains("children"))
    for (const auto& c : j["children"]) t.children.push_back(tree_of(a, c));
  return t;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

bool is_leaf(const std::vector<StateId>& leaves, const Config& c) {
  return is_zero(c.v) && std::find(leaves.begin(), leaves.end(), c.state) != leaves.end();
}

}  // namespace

std::string tree_to_json(const Abvass& a, const DeductionTree& t, int indent) { return tree_json(a, t).dump(indent); }

DeductionTree tree_from_json(const Abvass& a, std::string_view text) { return tree_of(a, json::parse(text)); }

// ---------------------------------------------------------------- semantics

std::vector<Expansion> expand(const Abvass& a, const Config& c, bool lossy) {
  if (c.state >= a.state_count()) throw std::invalid_argument("unknown state");
  if (c.v.size() != a.dim()) throw std::invalid_argument("configuration has the wrong dimension");
  std::vector<Expansion> out;
  for (auto i : a.unary_from(c.state)) {
    const UnaryRule& r = a.unary()[i];
    Vec w(c.v.size());
    bool ok = true;
    for (std::size_t k = 0; k < w.size() && ok; ++k) {
      std::int64_t x = static_cast<std::int64_t>(c.v[k]) + r.update[k];
      ok = x >= 0;
      w[k] = static_cast<std::uint32_t>(x);
    }
    if (ok) out.push_back({Step::Unary, i, {{r.to, std::move(w)}}});
  }
  if (is_zero(c.v))
    for (auto i : a.zero_from(c.state)) out.push_back({Step::Zero, i, {{a.zeros()[i].to, c.v}}});
  for (auto i : a.fork_from(c.state)) {
    const BinaryRule& r = a.forks()[i];
    out.push_back({Step::Fork, i, {{r.left, c.v}, {r.right, c.v}}});
  }
  if (!a.split_from(c.state).empty()) {
    std::vector<Vec> lefts;
    Vec l(c.v.size(), 0);
    while (true) {
      lefts.push_back(l);
      std::size_t k = l.size();
      while (k > 0 && l[k - 1] == c.v[k - 1]) l[--k] = 0;
      if (k == 0) break;
      ++l[k - 1];
    }
    for (auto i : a.split_from(c.state)) {
      const BinaryRule& r = a.splits()[i];
      for (const Vec& v1 : lefts) {
        Vec v2(c.v.size());
        for (std::size_t k = 0; k < v2.size(); ++k) v2[k] = c.v[k] - v1[k];
        out.push_back({Step::Split, i, {{r.left, v1}, {r.right, std::move(v2)}}});
      }
    }
  }
  if (lossy) {
    for (std::uint32_t k = 0; k < c.v.size(); ++k) {
      if (c.v[k] == 0) continue;
      Vec w = c.v;
      --w[k];
      out.push_back({Step::Loss, k, {{c.state, std::move(w)}}});
    }
  }
  return out;
}

namespace {

std::optional<std::string> check_node(const Abvass& a, const std::vector<StateId>& leaves, const DeductionTree& t,
                                      bool lossy) {
  const Config& c = t.config;
  if (c.state >= a.state_count()) return "unknown state";
  if (c.v.size() != a.dim()) return "vector has the wrong dimension";
  for (const auto& k : t.children) {
    if (k.config.state >= a.state_count()) return "child has an unknown state";
    if (k.config.v.size() != a.dim()) return "child vector has the wrong dimension";
  }
  auto arity = [&](std::size_t n) -> std::optional<std::string> {
    if (t.children.size() != n) return to_string(t.step) + " node with " + std::to_string(t.children.size()) + " children";
    return std::nullopt;
  };
  switch (t.step) {
    case Step::Leaf:
      if (auto e = arity(0)) return e;
      if (!is_leaf(leaves, c)) return "leaf is not a designated state with the zero vector";
      return std::nullopt;
    case Step::Unary: {
      if (auto e = arity(1)) return e;
      if (t.index >= a.unary().size()) return "unary rule index out of range";
      const UnaryRule& r = a.unary()[t.index];
      if (r.from != c.state || r.to != t.children[0].config.state) return "unary rule endpoints do not match";
      for (std::size_t k = 0; k < c.v.size(); ++k)
        if (static_cast<std::int64_t>(c.v[k]) + r.update[k] != static_cast<std::int64_t>(t.children[0].config.v[k]))
          return "child vector is not v + u";
      return std::nullopt;
    }
    case Step::Zero: {
      if (auto e = arity(1)) return e;
      if (t.index >= a.zeros().size()) return "zero rule index out of range";
      const ZeroRule& r = a.zeros()[t.index];
      if (r.from != c.state || r.to != t.children[0].config.state) return "zero rule endpoints do not match";
      if (!is_zero(c.v) || !is_zero(t.children[0].config.v)) return "zero test on a nonzero vector";
      return std::nullopt;
    }
    case Step::Fork:
    case Step::Split: {
      if (auto e = arity(2)) return e;
      const auto& rules = t.step == Step::Fork ? a.forks() : a.splits();
      if (t.index >= rules.size()) return "rule index out of range";
      const BinaryRule& r = rules[t.index];
      if (r.from != c.state || r.left != t.children[0].config.state || r.right != t.children[1].config.state)
        return "rule endpoints do not match";
      for (std::size_t k = 0; k < c.v.size(); ++k) {
        std::uint64_t l = t.children[0].config.v[k], rr = t.children[1].config.v[k];
        if (t.step == Step::Fork ? (l != c.v[k] || rr != c.v[k]) : (l + rr != c.v[k]))
          return t.step == Step::Fork ? "fork children do not copy the vector" : "split children do not sum to v";
      }
      return std::nullopt;
    }
    case Step::Loss: {
      if (!lossy) return "loss step in a non-lossy tree";
      if (auto e = arity(1)) return e;
      if (t.index >= c.v.size() || c.v[t.index] == 0) return "loss on an empty coordinate";
      if (t.children[0].config.state != c.state) return "loss changes the state";
      Vec w = c.v;
      --w[t.index];
      if (w != t.children[0].config.v) return "loss child is not v - e_i";
      return std::nullopt;
    }
  }
  return "unknown step";
}

bool walk(const Abvass& a, const std::vector<StateId>& leaves, const DeductionTree& t, bool lossy,
          std::vector<std::size_t>& path, TreeCheck& out) {
  if (auto e = check_node(a, leaves, t, lossy)) {
    out = {false, *e + " at " + (t.config.state < a.state_count() ? to_string(a, t.config) : "?"), path};
    return false;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    path.push_back(i);
    if (!walk(a, leaves, t.children[i], lossy, path, out)) return false;
    path.pop_back();
  }
  return true;
}

// A regular tree rooted at child.config + e_i, given a regular `child`.
DeductionTree push_loss(DeductionTree child, std::uint32_t i) {
  Config up = child.config;
  ++up.v[i];
  switch (child.step) {
    case Step::Unary:
      child.config = up;
      child.children[0] = push_loss(std::move(child.children[0]), i);
      return child;
    case Step::Split:
      child.config = up;
      child.children[1] = push_loss(std::move(child.children[1]), i);
      return child;
    case Step::Fork:
      child.config = up;
      child.children[0] = push_loss(std::move(child.children[0]), i);
      child.children[1] = push_loss(std::move(child.children[1]), i);
      return child;
    default: {
      DeductionTree t{up, Step::Loss, i, {}};
      t.children.push_back(std::move(child));
      return t;
    }
  }
}

DeductionTree regularize(const DeductionTree& t) {
  DeductionTree out{t.config, t.step, t.index, {}};
  for (const auto& c : t.children) out.children.push_back(regularize(c));
  if (t.step == Step::Loss) return push_loss(std::move(out.children[0]), t.index);
  return out;
}

}  // namespace

TreeCheck check_tree(const Abvass& a, const std::vector<StateId>& leaves, const DeductionTree& t, bool lossy) {
  TreeCheck out;
  std::vector<std::size_t> path;
  walk(a, leaves, t, lossy, path, out);
  return out;
}

bool is_regular(const Abvass& a, const std::vector<StateId>& leaves, const DeductionTree& t) {
  (void)a;
  if (t.step == Step::Loss) {
    const DeductionTree& c = t.children.at(0);
    bool ok = c.step == Step::Loss || c.step == Step::Zero || (c.step == Step::Leaf && is_leaf(leaves, c.config));
    if (!ok) return false;
  }
  return std::all_of(t.children.begin(), t.children.end(),
                     [&](const DeductionTree& c) { return is_regular(a, leaves, c); });
}

DeductionTree normalize_regular(const Abvass& a, const std::vector<StateId>& leaves, const DeductionTree& t) {
  if (auto ck = check_tree(a, leaves, t, true); !ck) throw std::invalid_argument("input tree does not check: " + ck.message);
  return regularize(t);
}

}  // namespace subtower
