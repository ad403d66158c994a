#pragma once

// Reference procedures used only by the tests. They share no search code
// with the library: the BCK oracle has its own term representation and
// parser, and the machine oracle is a fixpoint over a bounded cube of
// configurations.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subtower/abvass.hpp"

namespace oracle {

// Implicational BCK over hash-consed terms. Weakening is folded into the
// axiom Gamma, p |- p, which is complete for affine calculi because
// weakening permutes upwards.
class Bck {
 public:
  // Parses `a -o b`, atoms and parentheses; `-o` associates to the right.
  int parse(std::string_view text);
  int atom(const std::string& name);
  int arrow(int a, int b);

  // Fewest logical rule applications in a cut-free proof of gamma |- c,
  // or nullopt when none exists.
  std::optional<std::size_t> min_proof(std::vector<int> gamma, int c);
  bool provable(const std::vector<int>& gamma, int c) { return min_proof(gamma, c).has_value(); }

  std::string show(int t) const;

 private:
  struct Node {
    std::string name;  // atoms only
    int l = -1, r = -1;
  };
  int parse_imp(std::string_view s, std::size_t& i);
  int parse_atom(std::string_view s, std::size_t& i);

  std::vector<Node> nodes_;
  std::map<std::string, int> atoms_;
  std::map<std::pair<int, int>, int> arrows_;
  std::map<std::vector<int>, std::optional<std::size_t>> memo_;
};

// Whether (root) has a leaf-covering lossy deduction tree all of whose
// configurations keep every counter at most `cap`. Computed as the least
// fixpoint over Q x [0, cap]^d.
bool lossy_reachable(const subtower::Abvass& a, const std::vector<subtower::StateId>& leaves,
                     const subtower::Config& root, std::uint32_t cap);

}  // namespace oracle
