#include "subtower/formula.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_set>

namespace subtower {

namespace detail {

struct Node {
  Kind kind;
  std::string name;
  const Node* left = nullptr;
  const Node* right = nullptr;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t conns = 0;
  std::uint16_t conn_bits = 0;
};

}  // namespace detail

namespace {

using detail::Node;

struct NodeKeyHash {
  std::size_t operator()(const Node* n) const { return n->hash; }
};
struct NodeKeyEq {
  bool operator()(const Node* a, const Node* b) const {
    return a->kind == b->kind && a->left == b->left && a->right == b->right &&
           a->name == b->name;
  }
};

class Interner {
 public:
  const Node* intern(Node&& candidate) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find(&candidate);
    if (it != table_.end()) return *it;
    storage_.push_back(std::make_unique<Node>(std::move(candidate)));
    const Node* n = storage_.back().get();
    table_.insert(n);
    return n;
  }

 private:
  std::mutex mu_;
  std::unordered_set<const Node*, NodeKeyHash, NodeKeyEq> table_;
  std::vector<std::unique_ptr<Node>> storage_;
};

Interner& interner() {
  static Interner* in = new Interner();  // never destroyed: handles outlive statics
  return *in;
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

bool is_binary_kind(Kind k) {
  return k == Kind::Tensor || k == Kind::Par || k == Kind::With || k == Kind::Plus ||
         k == Kind::Lolli;
}
bool is_unary_kind(Kind k) { return k == Kind::Bang || k == Kind::Quest || k == Kind::Para; }
bool is_constant_kind(Kind k) {
  return k == Kind::One || k == Kind::Top || k == Kind::Bot || k == Kind::Zero;
}

const Node* make(Kind k, std::string name, const Node* l, const Node* r) {
  Node n;
  n.kind = k;
  n.name = std::move(name);
  n.left = l;
  n.right = r;
  std::size_t h = mix(0x51ed27, static_cast<std::size_t>(k));
  h = mix(h, std::hash<std::string>{}(n.name));
  if (l) h = mix(h, l->hash);
  if (r) h = mix(h, r->hash);
  n.hash = h;
  n.size = 1 + (l ? l->size : 0) + (r ? r->size : 0);
  n.conns = (l ? l->conns : 0) + (r ? r->conns : 0) +
            ((is_binary_kind(k) || is_unary_kind(k)) ? 1 : 0);
  std::uint16_t bits = static_cast<std::uint16_t>((l ? l->conn_bits : 0) | (r ? r->conn_bits : 0));
  if (k != Kind::Var && k != Kind::DualVar) {
    bits = static_cast<std::uint16_t>(bits | (1U << static_cast<unsigned>(conn_of(k))));
  }
  n.conn_bits = bits;
  return interner().intern(std::move(n));
}

bool valid_name(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'))
      return false;
  }
  return s != "top" && s != "bot";
}

}  // namespace

// ── Fragment ──

Fragment::Fragment(std::initializer_list<Conn> conns) {
  for (Conn c : conns) bits_ = static_cast<std::uint16_t>(bits_ | bit(c));
}

namespace {
constexpr const char* kConnSymbols[] = {"*", "|", "&", "+", "-o", "!", "?", "$",
                                        "1", "top", "bot", "0"};
}

std::string Fragment::to_string() const {
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < 12; ++i) {
    if (!contains(static_cast<Conn>(i))) continue;
    if (!first) out += ",";
    out += kConnSymbols[i];
    first = false;
  }
  return out + "}";
}

Fragment Fragment::parse(std::string_view text) {
  Fragment f;
  std::string_view t = text;
  if (!t.empty() && t.front() == '{') t.remove_prefix(1);
  if (!t.empty() && t.back() == '}') t.remove_suffix(1);
  std::size_t pos = 0;
  while (pos <= t.size()) {
    std::size_t comma = t.find(',', pos);
    std::string_view item = t.substr(pos, comma == std::string_view::npos ? t.size() - pos : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      bool found = false;
      for (unsigned i = 0; i < 12; ++i) {
        if (item == kConnSymbols[i]) {
          f = f.with(static_cast<Conn>(i));
          found = true;
        }
      }
      if (!found) throw std::invalid_argument("unknown connective '" + std::string(item) + "'");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (f.empty()) throw std::invalid_argument("empty language fragment");
  return f;
}

namespace lang {
Fragment intuitionistic_full() {
  return {Conn::Tensor, Conn::Lolli, Conn::With, Conn::Plus, Conn::Bang,
          Conn::One,    Conn::Top,   Conn::Bot,  Conn::Zero};
}
Fragment intuitionistic_plus() { return intuitionistic_full().without(Conn::Bot); }
Fragment classical_full() {
  return {Conn::Tensor, Conn::Par, Conn::With, Conn::Plus, Conn::Bang,
          Conn::Quest,  Conn::One, Conn::Top,  Conn::Bot,  Conn::Zero};
}
Fragment fl() { return {Conn::Tensor, Conn::Lolli, Conn::With, Conn::Plus, Conn::One, Conn::Bot}; }
Fragment fl_plus() { return {Conn::Tensor, Conn::Lolli, Conn::With, Conn::Plus, Conn::One}; }
Fragment implicational() { return {Conn::Lolli}; }
Fragment infl() { return {Conn::Tensor, Conn::Par, Conn::With, Conn::Plus, Conn::One, Conn::Bot}; }
Fragment light() { return {Conn::Lolli, Conn::Bang, Conn::Para}; }
Fragment multiplicative_classical() { return {Conn::Tensor, Conn::Par}; }
}  // namespace lang

// ── Formula ──

Formula Formula::var(std::string_view name) {
  if (!valid_name(name)) throw std::invalid_argument("invalid variable name '" + std::string(name) + "'");
  return Formula(make(Kind::Var, std::string(name), nullptr, nullptr));
}

Formula Formula::dual_var(std::string_view name) {
  if (!valid_name(name)) throw std::invalid_argument("invalid variable name '" + std::string(name) + "'");
  return Formula(make(Kind::DualVar, std::string(name), nullptr, nullptr));
}

Formula Formula::constant(Kind k) {
  if (!is_constant_kind(k)) throw std::invalid_argument("not a constant kind");
  return Formula(make(k, {}, nullptr, nullptr));
}
Formula Formula::one() { return constant(Kind::One); }
Formula Formula::top() { return constant(Kind::Top); }
Formula Formula::bot() { return constant(Kind::Bot); }
Formula Formula::zero() { return constant(Kind::Zero); }

Formula Formula::binary(Kind k, Formula a, Formula b) {
  if (!is_binary_kind(k)) throw std::invalid_argument("not a binary kind");
  if (!a || !b) throw std::invalid_argument("null operand");
  return Formula(make(k, {}, a.node_, b.node_));
}

Formula Formula::unary(Kind k, Formula a) {
  if (!is_unary_kind(k)) throw std::invalid_argument("not a unary kind");
  if (!a) throw std::invalid_argument("null operand");
  return Formula(make(k, {}, a.node_, nullptr));
}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
Formula Formula::left() const { return Formula(node_->left); }
Formula Formula::right() const { return Formula(node_->right); }
bool Formula::is_constant() const { return is_constant_kind(kind()); }
bool Formula::is_binary() const { return is_binary_kind(kind()); }
bool Formula::is_unary() const { return is_unary_kind(kind()); }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::connective_count() const { return node_->conns; }
std::size_t Formula::hash() const { return node_ ? node_->hash : 0; }
Fragment Formula::connectives() const { return Fragment::from_bits(node_->conn_bits); }

int compare(Formula a, Formula b) {
  if (a == b) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (a.is_atom()) return a.name() < b.name() ? -1 : 1;
  if (int c = compare(a.left(), b.left())) return c;
  return compare(a.right(), b.right());
}

Conn conn_of(Kind k) {
  switch (k) {
    case Kind::Tensor: return Conn::Tensor;
    case Kind::Par: return Conn::Par;
    case Kind::With: return Conn::With;
    case Kind::Plus: return Conn::Plus;
    case Kind::Lolli: return Conn::Lolli;
    case Kind::Bang: return Conn::Bang;
    case Kind::Quest: return Conn::Quest;
    case Kind::Para: return Conn::Para;
    case Kind::One: return Conn::One;
    case Kind::Top: return Conn::Top;
    case Kind::Bot: return Conn::Bot;
    case Kind::Zero: return Conn::Zero;
    default: break;
  }
  throw std::invalid_argument("atoms carry no connective");
}

bool in_fragment(Formula f, Fragment k) { return k.includes(f.connectives()); }

bool is_intuitionistic(Formula f) {
  static const Fragment classical_only{Conn::Par, Conn::Quest};
  if ((f.connectives() & classical_only).bits() != 0) return false;
  // dual literals are classical only
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.kind() == Kind::DualVar) return false;
    if (g.left()) stack.push_back(g.left());
    if (g.right()) stack.push_back(g.right());
  }
  return true;
}

bool is_classical(Formula f) {
  static const Fragment intuitionistic_only{Conn::Lolli, Conn::Para};
  return (f.connectives() & intuitionistic_only).bits() == 0;
}

Formula dual(Formula f) {
  switch (f.kind()) {
    case Kind::Var: return Formula::dual_var(f.name());
    case Kind::DualVar: return Formula::var(f.name());
    case Kind::One: return Formula::bot();
    case Kind::Bot: return Formula::one();
    case Kind::Top: return Formula::zero();
    case Kind::Zero: return Formula::top();
    case Kind::Tensor: return Formula::par(dual(f.left()), dual(f.right()));
    case Kind::Par: return Formula::tensor(dual(f.left()), dual(f.right()));
    case Kind::With: return Formula::plus(dual(f.left()), dual(f.right()));
    case Kind::Plus: return Formula::with(dual(f.left()), dual(f.right()));
    case Kind::Bang: return Formula::quest(dual(f.body()));
    case Kind::Quest: return Formula::bang(dual(f.body()));
    case Kind::Lolli:
    case Kind::Para: break;
  }
  throw std::invalid_argument("dual: intuitionistic connective in " + to_string(f));
}

int Closure::index_of(Formula f) const {
  auto it = std::lower_bound(formulas.begin(), formulas.end(), f, FormulaLess{});
  if (it != formulas.end() && *it == f) return static_cast<int>(it - formulas.begin());
  return -1;
}

Closure subformula_closure(Formula f) {
  std::set<Formula, FormulaLess> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    if (g.left()) stack.push_back(g.left());
    if (g.right()) stack.push_back(g.right());
  }
  Closure c;
  c.formulas.assign(seen.begin(), seen.end());
  for (Formula g : c.formulas)
    if (g.kind() == Kind::Bang) c.bang.push_back(g);
  return c;
}

std::vector<std::string> atoms_of(Formula f) {
  std::set<std::string> names;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.is_atom()) names.insert(g.name());
    if (g.left()) stack.push_back(g.left());
    if (g.right()) stack.push_back(g.right());
  }
  return {names.begin(), names.end()};
}

// ── Printing ──

namespace {

const char* binary_symbol(Kind k) {
  switch (k) {
    case Kind::Tensor: return " * ";
    case Kind::Par: return " | ";
    case Kind::With: return " & ";
    case Kind::Plus: return " + ";
    case Kind::Lolli: return " -o ";
    default: return "?";
  }
}

void print(Formula f, std::string& out);

void print_child(Formula parent, Formula child, bool is_left, std::string& out) {
  bool parens = false;
  if (child.is_binary()) {
    if (parent.is_unary()) {
      parens = true;
    } else if (child.kind() == Kind::Lolli || parent.kind() == Kind::Lolli) {
      // an implication operand is bracketed unless it is atomic-like
      parens = child.is_binary();
    } else {
      // same left-associative operator chains to the left without brackets
      parens = !(child.kind() == parent.kind() && is_left);
    }
  }
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

void print(Formula f, std::string& out) {
  switch (f.kind()) {
    case Kind::Var: out += f.name(); return;
    case Kind::DualVar: out += f.name(); out += '^'; return;
    case Kind::One: out += '1'; return;
    case Kind::Zero: out += '0'; return;
    case Kind::Top: out += "top"; return;
    case Kind::Bot: out += "bot"; return;
    case Kind::Bang: out += '!'; print_child(f, f.body(), true, out); return;
    case Kind::Quest: out += '?'; print_child(f, f.body(), true, out); return;
    case Kind::Para: out += '$'; print_child(f, f.body(), true, out); return;
    default: break;
  }
  print_child(f, f.left(), true, out);
  out += binary_symbol(f.kind());
  print_child(f, f.right(), false, out);
}

}  // namespace

std::string to_string(Formula f) {
  if (!f) return "<null>";
  std::string out;
  print(f, out);
  return out;
}

// ── Parsing ──

namespace {

enum class Tok { End, Ident, DualIdent, One, Zero, Top, Bot, LParen, RParen, Tensor, Par, With, Plus, Lolli, Bang, Quest, Para };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool starts_with(std::string_view s, std::size_t i, std::string_view pre) {
  return s.substr(i, pre.size()) == pre;
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> toks;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t pos, std::size_t len) {
    toks.push_back({k, std::string(s.substr(pos, len)), pos});
    i = pos + len;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t p = i;
    if (c == '(') { push(Tok::LParen, p, 1); continue; }
    if (c == ')') { push(Tok::RParen, p, 1); continue; }
    if (c == '*') { push(Tok::Tensor, p, 1); continue; }
    if (c == '|') { push(Tok::Par, p, 1); continue; }
    if (c == '&') { push(Tok::With, p, 1); continue; }
    if (c == '+') { push(Tok::Plus, p, 1); continue; }
    if (c == '!') { push(Tok::Bang, p, 1); continue; }
    if (c == '?') { push(Tok::Quest, p, 1); continue; }
    if (c == '$') { push(Tok::Para, p, 1); continue; }
    if (c == '1') { push(Tok::One, p, 1); continue; }
    if (c == '0') { push(Tok::Zero, p, 1); continue; }
    if (starts_with(s, i, "-o")) { push(Tok::Lolli, p, 2); continue; }
    // UTF-8 aliases
    if (starts_with(s, i, "⊗")) { push(Tok::Tensor, p, 3); continue; }
    if (starts_with(s, i, "⅋")) { push(Tok::Par, p, 3); continue; }
    if (starts_with(s, i, "⊕")) { push(Tok::Plus, p, 3); continue; }
    if (starts_with(s, i, "⊸")) { push(Tok::Lolli, p, 3); continue; }
    if (starts_with(s, i, "§")) { push(Tok::Para, p, 2); continue; }
    if (starts_with(s, i, "⊤")) { push(Tok::Top, p, 3); continue; }
    if (starts_with(s, i, "⊥")) { push(Tok::Bot, p, 3); continue; }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i;
      while (j < s.size() && ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= 'A' && s[j] <= 'Z') ||
                              (s[j] >= '0' && s[j] <= '9') || s[j] == '_'))
        ++j;
      std::string word(s.substr(i, j - i));
      if (word == "top") { push(Tok::Top, p, j - i); continue; }
      if (word == "bot") { push(Tok::Bot, p, j - i); continue; }
      if (j < s.size() && s[j] == '^') {
        toks.push_back({Tok::DualIdent, word, p});
        i = j + 1;
        continue;
      }
      if (starts_with(s, j, "⊥")) {
        toks.push_back({Tok::DualIdent, word, p});
        i = j + 3;
        continue;
      }
      toks.push_back({Tok::Ident, word, p});
      i = j;
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", p);
  }
  toks.push_back({Tok::End, "", s.size()});
  return toks;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Polarity pol) : toks_(std::move(toks)), pol_(pol) {}

  Formula parse_all() {
    Formula f = lolli();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  void classical_only(const Token& t) {
    if (pol_ == Polarity::Intuitionistic)
      throw PolarityError("'" + t.text + "' is not an intuitionistic connective", t.pos);
  }
  void intuitionistic_only(const Token& t) {
    if (pol_ == Polarity::Classical)
      throw PolarityError("'" + t.text + "' is not a classical connective", t.pos);
  }

  Formula lolli() {
    Formula a = additive();
    if (peek().kind == Tok::Lolli) {
      intuitionistic_only(take());
      Formula b = lolli();
      return Formula::lolli(a, b);
    }
    return a;
  }

  Formula additive() {
    Formula a = multiplicative();
    while (peek().kind == Tok::With || peek().kind == Tok::Plus) {
      Kind k = take().kind == Tok::With ? Kind::With : Kind::Plus;
      a = Formula::binary(k, a, multiplicative());
    }
    return a;
  }

  Formula multiplicative() {
    Formula a = unary();
    while (peek().kind == Tok::Tensor || peek().kind == Tok::Par) {
      const Token& t = take();
      if (t.kind == Tok::Par) classical_only(t);
      a = Formula::binary(t.kind == Tok::Tensor ? Kind::Tensor : Kind::Par, a, unary());
    }
    return a;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Bang: take(); return Formula::bang(unary());
      case Tok::Quest: classical_only(take()); return Formula::quest(unary());
      case Tok::Para: intuitionistic_only(take()); return Formula::para(unary());
      default: return primary();
    }
  }

  Formula primary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Ident: return Formula::var(t.text);
      case Tok::DualIdent: classical_only(t); return Formula::dual_var(t.text);
      case Tok::One: return Formula::one();
      case Tok::Zero: return Formula::zero();
      case Tok::Top: return Formula::top();
      case Tok::Bot: return Formula::bot();
      case Tok::LParen: {
        Formula f = lolli();
        if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        take();
        return f;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  Polarity pol_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, Polarity polarity) {
  return Parser(lex(text), polarity).parse_all();
}

}  // namespace subtower
