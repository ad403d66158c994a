#include "subtower/proof.hpp"

#include <algorithm>

#include "json.hpp"

namespace subtower {

using nlohmann::json;

std::size_t ProofTree::node_count() const {
  std::size_t n = 1;
  for (const ProofTree& c : children) n += c.node_count();
  return n;
}

std::size_t ProofTree::logical_size() const {
  std::size_t n = (rule == "W" || rule == "W'") ? 0 : 1;
  for (const ProofTree& c : children) n += c.logical_size();
  return n;
}

std::size_t ProofTree::height() const {
  std::size_t h = 0;
  for (const ProofTree& c : children) h = std::max(h, c.height());
  return h + 1;
}

namespace {

json to_json(const ProofTree& t) {
  json j;
  j["sequent"] = to_string(t.sequent);
  j["rule"] = t.rule;
  if (t.principal) j["principal"] = to_string(t.principal);
  json kids = json::array();
  for (const ProofTree& c : t.children) kids.push_back(to_json(c));
  j["children"] = std::move(kids);
  return j;
}

ProofTree from_json(const json& j, Side side) {
  ProofTree t;
  t.sequent = parse_sequent(j.at("sequent").get<std::string>(), side);
  t.rule = j.at("rule").get<std::string>();
  if (j.contains("principal") && !j["principal"].is_null())
    t.principal = parse_formula(j["principal"].get<std::string>(), polarity_of(side));
  if (j.contains("children"))
    for (const json& c : j["children"]) t.children.push_back(from_json(c, side));
  return t;
}

}  // namespace

std::string proof_to_json(const ProofTree& t, int indent) { return to_json(t).dump(indent); }

ProofTree proof_from_json(std::string_view text, Side side) {
  return from_json(json::parse(text), side);
}

}  // namespace subtower
