// subtower: batch front end for proof search, deducibility, translations,
// machine encodings, lossy reachability and the equivalence suites.
//
// Exit codes: 0 Proved / found / suite passed, 1 Refuted / suite failed,
// 2 Unknown, 3 route disagreement, 4 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subtower/abvass.hpp"
#include "subtower/crosscheck.hpp"
#include "subtower/encoders.hpp"
#include "subtower/prover.hpp"
#include "subtower/translate.hpp"

using namespace subtower;
using json = nlohmann::json;

namespace {

constexpr int kExitError = 4;
constexpr int kExitDisagree = 3;

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Proved:
      return 0;
    case Outcome::Refuted:
      return 1;
    case Outcome::Unknown:
      return 2;
  }
  return kExitError;
}

struct BudgetFlags {
  std::optional<std::size_t> depth, nodes, contractions, cap, nmax, height;
  std::string text;

  void attach(CLI::App* app) {
    app->add_option("--budget-depth", depth, "Maximum search depth");
    app->add_option("--budget-nodes", nodes, "Maximum expanded nodes or configurations");
    app->add_option("--budget-contractions", contractions, "Charged contractions per branch");
    app->add_option("--counter-cap", cap, "Per-coordinate counter cap for machine search");
    app->add_option("--nmax", nmax, "Maximum copies in prenex expansion");
    app->add_option("--budget-height", height, "Maximum deduction tree height");
    app->add_option("--budget", text, "Budget as key=value list, e.g. depth=32,nodes=1000");
  }

  Budget resolve() const {
    Budget b = default_budget();
    if (!text.empty()) b = parse_budget(text, b);
    if (depth) b.max_depth = *depth;
    if (nodes) b.max_nodes = *nodes;
    if (contractions) b.max_bang_contractions = *contractions;
    if (cap) b.counter_cap = *cap;
    if (nmax) b.max_prenex_copies = *nmax;
    if (height) b.max_tree_height = *height;
    return b;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

bool looks_like_sequent(const std::string& s) {
  return s.find("|-") != std::string::npos || s.find("⊢") != std::string::npos;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json budget_json(const Budget& b) {
  return {{"depth", b.max_depth},         {"contractions", b.max_bang_contractions},
          {"nmax", b.max_prenex_copies},  {"nodes", b.max_nodes},
          {"cap", b.counter_cap},         {"height", b.max_tree_height}};
}

json verdict_json(const Verdict& v) {
  json j;
  j["verdict"] = to_string(v.outcome);
  j["note"] = v.note;
  j["stats"] = {{"nodes", v.stats.nodes}, {"depth", v.stats.depth}};
  if (v.witness_n) j["witness_n"] = *v.witness_n;
  if (v.proof) j["witness"] = json::parse(proof_to_json(*v.proof));
  return j;
}

// Prints the report as JSON or text and optionally writes it to --out.
void emit(const json& report, bool as_json, const std::string& out_path, const std::string& text) {
  const std::string dumped = report.dump(2) + "\n";
  std::cout << (as_json ? dumped : text);
  if (!out_path.empty()) write_file(out_path, dumped);
}

std::string verdict_text(const std::string& what, const Verdict& v, double secs) {
  std::ostringstream s;
  s << what << "\n" << to_string(v.outcome);
  if (v.witness_n) s << " (n = " << *v.witness_n << ")";
  if (!v.note.empty()) s << "  [" << v.note << "]";
  s << "\nnodes " << v.stats.nodes << ", depth " << v.stats.depth << ", " << secs << " s\n";
  if (v.proof) {
    s << "proof: " << v.proof->node_count() << " nodes, height " << v.proof->height() << "\n";
  }
  return s.str();
}

std::vector<Formula> read_axioms(const std::string& file, const std::vector<std::string>& inline_axioms, Polarity pol) {
  std::vector<Formula> out;
  if (!file.empty()) {
    std::istringstream in(read_file(file));
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.push_back(parse_formula(line, pol));
    }
  }
  for (const auto& a : inline_axioms) out.push_back(parse_formula(a, pol));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subtower: contraction-free substructural logics and branching counter machines"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string out_path;
  app.add_flag("--json", as_json, "Machine-readable JSON report on stdout");
  app.add_option("--out", out_path, "Also write the JSON report (or encoder output) to this path");

  // prove
  auto* prove_cmd = app.add_subcommand("prove", "Bounded cut-free proof search");
  std::string prove_system, prove_goal;
  bool prove_bck_flag = false;
  BudgetFlags prove_budget;
  prove_cmd->add_option("--system", prove_system, "System name, e.g. BCK, LLW, ILLW:-o,!")->required();
  prove_cmd->add_option("sequent", prove_goal, "Goal sequent")->required();
  prove_cmd->add_flag("--bck", prove_bck_flag, "Use the complete BCK decision procedure");
  prove_budget.attach(prove_cmd);

  // deduce
  auto* deduce_cmd = app.add_subcommand("deduce", "Deducibility from non-logical axioms");
  std::string deduce_system, deduce_goal, axioms_file, route = "reduction";
  std::vector<std::string> inline_axioms;
  BudgetFlags deduce_budget;
  deduce_cmd->add_option("--system", deduce_system, "Base system: FLei, FLew, FLplus_ei, BCK, BCI, InFLew")->required();
  deduce_cmd->add_option("--axioms", axioms_file, "File with one axiom formula per line");
  deduce_cmd->add_option("--axiom", inline_axioms, "Axiom formula (repeatable)");
  deduce_cmd->add_option("--route", route, "direct, reduction or both")
      ->check(CLI::IsMember({"direct", "reduction", "both"}));
  deduce_cmd->add_option("sequent", deduce_goal, "Goal sequent")->required();
  deduce_budget.attach(deduce_cmd);

  // translate
  auto* tr_cmd = app.add_subcommand("translate", "Negative translation, underline, erasure");
  std::string tr_mode, tr_input;
  tr_cmd->add_option("mode", tr_mode, "negx, negbot, underline or erase")
      ->required()
      ->check(CLI::IsMember({"negx", "negbot", "underline", "erase"}));
  tr_cmd->add_option("input", tr_input, "Formula or sequent")->required();

  // encode
  auto* enc_cmd = app.add_subcommand("encode", "Build an encoding");
  std::string enc_kind, enc_input, enc_root;
  enc_cmd->add_option("kind", enc_kind, "iezw, ilzwprime or bvass2llw")
      ->required()
      ->check(CLI::IsMember({"iezw", "ilzwprime", "bvass2llw"}));
  enc_cmd->add_option("input", enc_input, "Formula (iezw, ilzwprime) or machine file (bvass2llw)")->required();
  enc_cmd->add_option("--root", enc_root, "bvass2llw: target configuration, e.g. \"a, (0,1)\"");

  // reach
  auto* reach_cmd = app.add_subcommand("reach", "Leaf-covering deduction tree search");
  std::string reach_file, reach_root, reach_leaves;
  bool reach_lossy = false;
  BudgetFlags reach_budget;
  reach_cmd->add_option("machine", reach_file, "Machine file in the abvass text format")->required();
  reach_cmd->add_option("--root", reach_root, "Root configuration, e.g. \"q, (1,0)\"")->required();
  reach_cmd->add_option("--leaves", reach_leaves, "Comma-separated leaf states (default: the file's leaf lines)");
  reach_cmd->add_flag("--lossy", reach_lossy, "Lossy semantics");
  reach_budget.attach(reach_cmd);

  // crosscheck
  auto* cc_cmd = app.add_subcommand("crosscheck", "Run an equivalence suite over a generated corpus");
  std::string suite;
  SuiteOptions cc;
  std::optional<bool> cc_exhaustive;
  BudgetFlags cc_budget;
  cc_cmd->add_option("suite", suite, "Suite name")->required();
  cc_cmd->add_option("--size", cc.max_size, "Maximum instance size");
  cc_cmd->add_option("--count", cc.count, "Number of sampled instances");
  cc_cmd->add_option("--seed", cc.seed, "Random seed");
  cc_cmd->add_option("--workers", cc.workers, "Worker threads");
  cc_cmd->add_flag("--exhaustive,!--sampled", cc_exhaustive,
                   "Enumerate all single-formula instances (default when size <= 5)");
  cc_budget.attach(cc_cmd);

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  json report;
  report["command"] = std::vector<std::string>(argv + 1, argv + argc);
  try {
    if (*prove_cmd) {
      System sys = system_by_name(prove_system);
      Sequent goal = parse_sequent(prove_goal, sys.side);
      Budget b = prove_budget.resolve();
      Verdict v = prove_bck_flag ? prove_bck(goal) : prove(sys, goal, b);
      if (v.proof)
        if (auto ck = check_proof(sys, *v.proof, false); !ck) throw std::logic_error("certificate rejected: " + ck.message);
      report.update(verdict_json(v));
      report["system"] = sys.name;
      report["goal"] = to_string(goal);
      report["budget"] = budget_json(b);
      report["stats"]["seconds"] = seconds_since(t0);
      emit(report, as_json, out_path, verdict_text(sys.name + "  " + to_string(goal), v, seconds_since(t0)));
      return exit_code(v.outcome);
    }

    if (*deduce_cmd) {
      System base = system_by_name(deduce_system);
      Polarity pol = polarity_of(base.side);
      auto phi = read_axioms(axioms_file, inline_axioms, pol);
      Sequent goal = parse_sequent(deduce_goal, base.side);
      Budget b = deduce_budget.resolve();
      report["system"] = base.name;
      report["goal"] = to_string(goal);
      json ax = json::array();
      for (Formula f : phi) ax.push_back(to_string(f));
      report["axioms"] = ax;
      report["budget"] = budget_json(b);
      std::string text;
      std::optional<Verdict> direct, reduced;
      if (route != "reduction") {
        direct = deduce(base, phi, goal, b, Route::Direct);
        if (direct->proof)
          if (auto ck = check_proof(with_axioms(base, phi), *direct->proof, true); !ck)
            throw std::logic_error("direct certificate rejected: " + ck.message);
        report["direct"] = verdict_json(*direct);
        text += verdict_text("direct " + base.name + "[Φ]", *direct, seconds_since(t0));
      }
      if (route != "direct") {
        reduced = deduce(base, phi, goal, b, Route::Reduction);
        Reduced red = reduce_deducibility(base, phi, goal);
        if (reduced->proof)
          if (auto ck = check_proof(red.system, *reduced->proof, false); !ck)
            throw std::logic_error("reduction certificate rejected: " + ck.message);
        report["reduction"] = verdict_json(*reduced);
        report["reduction"]["system"] = red.system.name;
        report["reduction"]["goal"] = to_string(red.goal);
        text += verdict_text("via " + red.system.name + "  " + to_string(red.goal), *reduced, seconds_since(t0));
      }
      const Verdict& main = reduced ? *reduced : *direct;
      report["verdict"] = to_string(main.outcome);
      report["stats"]["seconds"] = seconds_since(t0);
      if (direct && reduced && direct->conclusive() && reduced->conclusive() && direct->outcome != reduced->outcome) {
        report["disagreement"] = true;
        std::cerr << "route disagreement; report follows\n" << report.dump(2) << "\n";
        if (!out_path.empty()) write_file(out_path, report.dump(2) + "\n");
        return kExitDisagree;
      }
      Outcome o = main.outcome;
      if (direct && reduced && o == Outcome::Unknown) o = direct->outcome;
      report["verdict"] = to_string(o);
      emit(report, as_json, out_path, text);
      return exit_code(o);
    }

    if (*tr_cmd) {
      std::string result;
      if (tr_mode == "negx" || tr_mode == "negbot") {
        Sequent s = looks_like_sequent(tr_input) ? parse_sequent(tr_input, Side::Classical)
                                                 : Sequent::classical({parse_formula(tr_input, Polarity::Classical)});
        Sequent t;
        if (tr_mode == "negx") {
          Formula x = Formula::var(fresh_variable(s));
          t = neg_translate(s, x, x);
        } else {
          t = neg_translate(s, Formula::bot(), Formula{});
        }
        result = to_string(t);
      } else if (tr_mode == "underline") {
        result = to_string(underline(parse_formula(tr_input, Polarity::Intuitionistic)));
      } else {
        result = looks_like_sequent(tr_input)
                     ? to_string(erase_paragraph(parse_sequent(tr_input, Side::Intuitionistic)))
                     : to_string(erase_paragraph(parse_formula(tr_input, Polarity::Intuitionistic)));
      }
      report["mode"] = tr_mode;
      report["input"] = tr_input;
      report["output"] = result;
      emit(report, as_json, out_path, result + "\n");
      return 0;
    }

    if (*enc_cmd) {
      if (enc_kind == "bvass2llw") {
        Abvass m = parse_abvass(read_file(enc_input));
        if (enc_root.empty()) throw std::invalid_argument("--root is required for bvass2llw");
        Config root = parse_config(m, enc_root);
        Sequent s = encode_bvass_to_sequent(m, m.leaves, root);
        report["sequent"] = to_string(s);
        json vars = json::object();
        for (StateId q = 0; q < m.state_count(); ++q) vars[m.state_name(q)] = bvass_state_variable(m, q);
        report["state_variables"] = vars;
        emit(report, as_json, out_path, to_string(s) + "\n");
        return 0;
      }
      Variant v = enc_kind == "iezw" ? Variant::E : Variant::IPrime;
      EncodedMachine em = encode_formula(parse_formula(enc_input, Polarity::Intuitionistic), v);
      const std::string text = to_text(em.machine);
      if (!out_path.empty()) {
        write_file(out_path, text);
        write_file(out_path + ".legend.json", em.legend_json(2) + "\n");
      }
      if (as_json) {
        report["machine"] = text;
        report["legend"] = json::parse(em.legend_json());
        std::cout << report.dump(2) << "\n";
      } else {
        std::cout << text;
      }
      return 0;
    }

    if (*reach_cmd) {
      Abvass m = parse_abvass(read_file(reach_file));
      std::vector<StateId> leaves = m.leaves;
      if (!reach_leaves.empty()) {
        leaves.clear();
        std::stringstream ss(reach_leaves);
        std::string name;
        while (std::getline(ss, name, ',')) {
          name.erase(0, name.find_first_not_of(' '));
          name.erase(name.find_last_not_of(' ') + 1);
          auto q = m.find_state(name);
          if (!q) throw std::invalid_argument("unknown leaf state '" + name + "'");
          leaves.push_back(*q);
        }
      }
      Config root = parse_config(m, reach_root);
      Budget b = reach_budget.resolve();
      ReachResult r = search_deduction(m, leaves, root, reach_lossy, b);
      if (r.tree)
        if (auto ck = check_tree(m, leaves, *r.tree, reach_lossy); !ck)
          throw std::logic_error("deduction tree rejected: " + ck.message);
      report["verdict"] = to_string(r.outcome);
      report["note"] = r.note;
      report["root"] = to_string(m, root);
      report["lossy"] = reach_lossy;
      report["budget"] = budget_json(b);
      report["stats"] = {{"configurations", r.explored}, {"capped", r.capped}, {"seconds", seconds_since(t0)}};
      if (r.tree) report["witness"] = json::parse(tree_to_json(m, *r.tree));
      std::ostringstream text;
      text << to_string(m, root) << (reach_lossy ? " (lossy)" : "") << "\n" << to_string(r.outcome);
      if (!r.note.empty()) text << "  [" << r.note << "]";
      text << "\nconfigurations " << r.explored << ", " << seconds_since(t0) << " s\n";
      if (r.tree) text << "tree: " << r.tree->node_count() << " nodes, height " << r.tree->height() << "\n";
      emit(report, as_json, out_path, text.str());
      return exit_code(r.outcome);
    }

    if (*cc_cmd) {
      cc.budget = cc_budget.resolve();
      cc.exhaustive = cc_exhaustive.value_or(cc.max_size <= 5);
      SuiteReport rep = run_suite(suite, cc);
      if (as_json) {
        std::cout << rep.to_json(2) << "\n";
      } else {
        std::cout << rep.summary();
      }
      if (!out_path.empty()) write_file(out_path, rep.to_json(2) + "\n");
      return rep.passed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
