#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subtower {

enum class Kind : std::uint8_t {
  Var,
  DualVar,
  One,
  Top,
  Bot,
  Zero,
  Tensor,
  Par,
  With,
  Plus,
  Lolli,
  Bang,
  Quest,
  Para,
};

enum class Polarity : std::uint8_t { Intuitionistic, Classical };

// Connectives and constants that a language fragment may allow.
enum class Conn : std::uint8_t {
  Tensor,
  Par,
  With,
  Plus,
  Lolli,
  Bang,
  Quest,
  Para,
  One,
  Top,
  Bot,
  Zero,
};

class Fragment {
 public:
  constexpr Fragment() = default;
  Fragment(std::initializer_list<Conn> conns);

  static Fragment from_bits(std::uint16_t bits) {
    Fragment f;
    f.bits_ = bits;
    return f;
  }
  // Parses "{-o,!}" or "-o,!" using the formula grammar's symbols.
  static Fragment parse(std::string_view text);

  bool contains(Conn c) const { return (bits_ >> static_cast<unsigned>(c)) & 1U; }
  bool includes(Fragment other) const { return (other.bits_ & ~bits_) == 0; }
  bool empty() const { return bits_ == 0; }
  std::uint16_t bits() const { return bits_; }

  Fragment with(Conn c) const { return from_bits(bits_ | bit(c)); }
  Fragment without(Conn c) const { return from_bits(bits_ & ~bit(c)); }
  Fragment operator|(Fragment o) const { return from_bits(bits_ | o.bits_); }
  Fragment operator&(Fragment o) const { return from_bits(bits_ & o.bits_); }
  bool operator==(const Fragment&) const = default;

  std::string to_string() const;

 private:
  static constexpr std::uint16_t bit(Conn c) {
    return static_cast<std::uint16_t>(1U << static_cast<unsigned>(c));
  }
  std::uint16_t bits_ = 0;
};

namespace detail {
struct Node;
}

// Hash-consed immutable formula handle. Equal formulas share one node, so
// equality is pointer equality. A default-constructed handle is null.
class Formula {
 public:
  Formula() = default;

  static Formula var(std::string_view name);
  static Formula dual_var(std::string_view name);
  static Formula one();
  static Formula top();
  static Formula bot();
  static Formula zero();
  static Formula constant(Kind k);
  static Formula binary(Kind k, Formula a, Formula b);
  static Formula unary(Kind k, Formula a);

  static Formula tensor(Formula a, Formula b) { return binary(Kind::Tensor, a, b); }
  static Formula par(Formula a, Formula b) { return binary(Kind::Par, a, b); }
  static Formula with(Formula a, Formula b) { return binary(Kind::With, a, b); }
  static Formula plus(Formula a, Formula b) { return binary(Kind::Plus, a, b); }
  static Formula lolli(Formula a, Formula b) { return binary(Kind::Lolli, a, b); }
  static Formula bang(Formula a) { return unary(Kind::Bang, a); }
  static Formula quest(Formula a) { return unary(Kind::Quest, a); }
  static Formula para(Formula a) { return unary(Kind::Para, a); }

  Kind kind() const;
  const std::string& name() const;
  Formula left() const;
  Formula right() const;
  Formula body() const { return left(); }

  bool is_atom() const { return kind() == Kind::Var || kind() == Kind::DualVar; }
  bool is_constant() const;
  bool is_binary() const;
  bool is_unary() const;

  // Number of nodes: atoms, constants and connective occurrences.
  std::size_t size() const;
  std::size_t connective_count() const;
  std::size_t hash() const;
  // Connectives occurring anywhere in the formula.
  Fragment connectives() const;

  explicit operator bool() const { return node_ != nullptr; }
  bool operator==(const Formula& o) const { return node_ == o.node_; }
  bool operator!=(const Formula& o) const { return node_ != o.node_; }
  const void* id() const { return node_; }

 private:
  explicit Formula(const detail::Node* n) : node_(n) {}
  const detail::Node* node_ = nullptr;
};

// Structural total order: kind tag first, then atom name, then children.
int compare(Formula a, Formula b);

struct FormulaLess {
  bool operator()(Formula a, Formula b) const { return compare(a, b) < 0; }
};
struct FormulaHash {
  std::size_t operator()(Formula f) const { return f.hash(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        message_(what),
        position_(position) {}
  std::size_t position() const { return position_; }
  // The message without the position suffix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

// Raised for connectives that do not belong to the requested polarity.
class PolarityError : public ParseError {
 public:
  using ParseError::ParseError;
};

Formula parse_formula(std::string_view text, Polarity polarity);
std::string to_string(Formula f);

bool is_intuitionistic(Formula f);
bool is_classical(Formula f);

// De Morgan dual of a classical formula; throws std::invalid_argument on
// intuitionistic input.
Formula dual(Formula f);

Conn conn_of(Kind k);
bool in_fragment(Formula f, Fragment k);

struct Closure {
  // Distinct subformulas in canonical order; this is the fixed enumeration.
  std::vector<Formula> formulas;
  // Members of the form !B, in the same relative order.
  std::vector<Formula> bang;

  // Position in `formulas`, or -1.
  int index_of(Formula f) const;
  std::size_t size() const { return formulas.size(); }
};

Closure subformula_closure(Formula f);

// Variable names occurring in f (as p or p^), sorted.
std::vector<std::string> atoms_of(Formula f);

// Standard language fragments.
namespace lang {
Fragment intuitionistic_full();   // ⊗ ⊸ & ⊕ ! 1 ⊤ ⊥ 0
Fragment intuitionistic_plus();   // the above without ⊥
Fragment classical_full();        // ⊗ ⅋ & ⊕ ! ? 1 ⊤ ⊥ 0
Fragment fl();                    // ⊗ ⊸ & ⊕ 1 ⊥
Fragment fl_plus();               // ⊗ ⊸ & ⊕ 1
Fragment implicational();         // ⊸
Fragment infl();                  // ⊗ ⅋ & ⊕ 1 ⊥
Fragment light();                 // ⊸ ! §
Fragment multiplicative_classical();  // ⊗ ⅋
}  // namespace lang

}  // namespace subtower
