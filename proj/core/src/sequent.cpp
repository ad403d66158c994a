#include "subtower/sequent.hpp"

#include <algorithm>

namespace subtower {

namespace ms {

void sort(std::vector<Formula>& v) { std::sort(v.begin(), v.end(), FormulaLess{}); }

std::vector<Formula> sum(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  std::vector<Formula> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), FormulaLess{});
  return out;
}

bool remove_one(std::vector<Formula>& v, Formula f) {
  auto it = std::lower_bound(v.begin(), v.end(), f, FormulaLess{});
  if (it == v.end() || *it != f) return false;
  v.erase(it);
  return true;
}

bool contains(const std::vector<Formula>& v, Formula f) {
  return std::binary_search(v.begin(), v.end(), f, FormulaLess{});
}

std::size_t count(const std::vector<Formula>& v, Formula f) {
  auto [lo, hi] = std::equal_range(v.begin(), v.end(), f, FormulaLess{});
  return static_cast<std::size_t>(hi - lo);
}

}  // namespace ms

Sequent Sequent::intuitionistic(std::vector<Formula> antecedent, Formula stoup) {
  Sequent s;
  s.side_ = Side::Intuitionistic;
  s.ctx_ = std::move(antecedent);
  ms::sort(s.ctx_);
  s.stoup_ = stoup;
  return s;
}

Sequent Sequent::classical(std::vector<Formula> formulas) {
  Sequent s;
  s.side_ = Side::Classical;
  s.ctx_ = std::move(formulas);
  ms::sort(s.ctx_);
  return s;
}

std::size_t Sequent::size() const {
  std::size_t n = stoup_ ? stoup_.size() : 0;
  for (Formula f : ctx_) n += f.size();
  return n;
}

std::size_t Sequent::hash() const {
  std::size_t h = side_ == Side::Classical ? 0x2545f4914f6cdd1dULL : 0x9e3779b97f4a7c15ULL;
  for (Formula f : ctx_) h = (h ^ f.hash()) * 0x100000001b3ULL;
  h ^= stoup_.hash() + 0x7f4a7c15 + (h << 6) + (h >> 2);
  return h;
}

Sequent Sequent::with_ctx(std::vector<Formula> ctx) const {
  Sequent s = *this;
  s.ctx_ = std::move(ctx);
  ms::sort(s.ctx_);
  return s;
}

Sequent Sequent::with_stoup(Formula stoup) const {
  Sequent s = *this;
  s.stoup_ = stoup;
  return s;
}

Sequent Sequent::plus(Formula f) const {
  Sequent s = *this;
  auto it = std::upper_bound(s.ctx_.begin(), s.ctx_.end(), f, FormulaLess{});
  s.ctx_.insert(it, f);
  return s;
}

namespace {

// Splits at top-level commas, tracking byte offsets for error positions.
std::vector<std::pair<std::string_view, std::size_t>> split_commas(std::string_view text,
                                                                   std::size_t base) {
  std::vector<std::pair<std::string_view, std::size_t>> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      parts.emplace_back(text.substr(start, i - start), base + start);
      start = i + 1;
      continue;
    }
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
  }
  return parts;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

std::vector<Formula> parse_list(std::string_view text, std::size_t base, Polarity pol) {
  std::vector<Formula> out;
  if (blank(text)) return out;
  for (auto [part, offset] : split_commas(text, base)) {
    if (blank(part)) throw ParseError("empty formula in list", offset);
    try {
      out.push_back(parse_formula(part, pol));
    } catch (const PolarityError& e) {
      throw PolarityError(e.message(), offset + e.position());
    } catch (const ParseError& e) {
      throw ParseError(e.message(), offset + e.position());
    }
  }
  return out;
}

}  // namespace

Sequent parse_sequent(std::string_view text, Side side) {
  std::size_t turnstile = std::string_view::npos;
  std::size_t width = 0;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth != 0) continue;
    if (text.substr(i, 2) == "|-") {
      turnstile = i;
      width = 2;
      break;
    }
    if (text.substr(i, 3) == "⊢") {
      turnstile = i;
      width = 3;
      break;
    }
  }
  if (turnstile == std::string_view::npos) throw ParseError("missing turnstile '|-'", text.size());

  std::string_view lhs = text.substr(0, turnstile);
  std::string_view rhs = text.substr(turnstile + width);
  Polarity pol = polarity_of(side);
  std::vector<Formula> left = parse_list(lhs, 0, pol);
  std::vector<Formula> right = parse_list(rhs, turnstile + width, pol);

  if (side == Side::Classical) {
    if (!left.empty()) throw ParseError("classical sequents are right-sided", 0);
    return Sequent::classical(std::move(right));
  }
  if (right.size() > 1)
    throw ParseError("an intuitionistic stoup holds at most one formula", turnstile + width);
  return Sequent::intuitionistic(std::move(left), right.empty() ? Formula{} : right.front());
}

std::string to_string(const Sequent& s) {
  std::string out;
  auto list = [&](const std::vector<Formula>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += to_string(v[i]);
    }
  };
  if (s.is_classical()) {
    out = "|-";
    if (!s.ctx().empty()) out += ' ';
    list(s.ctx());
    return out;
  }
  list(s.ctx());
  out += s.ctx().empty() ? "|-" : " |-";
  if (s.stoup()) {
    out += ' ';
    out += to_string(s.stoup());
  }
  return out;
}

}  // namespace subtower
