#include "subtower/crosscheck.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "subtower/translate.hpp"

namespace subtower {

using json = nlohmann::json;

bool CaseResult::conclusive() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const LabeledVerdict& v) { return v.outcome != Outcome::Unknown; });
}

bool CaseResult::agree() const {
  const LabeledVerdict* first = nullptr;
  for (const auto& v : verdicts) {
    if (v.outcome == Outcome::Unknown) continue;
    if (first && first->outcome != v.outcome) return false;
    if (!first) first = &v;
  }
  return true;
}

std::size_t SuiteReport::conclusive() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return c.conclusive(); }));
}
std::size_t SuiteReport::disagreements() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.agree(); }));
}
std::size_t SuiteReport::certificates() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.certificates;
  return n;
}
std::size_t SuiteReport::normalizations() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.normalizations;
  return n;
}
std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.failures.size();
  return n;
}

std::string SuiteReport::summary() const {
  std::ostringstream out;
  out << std::left << std::setw(16) << "suite" << std::right << std::setw(10) << "instances" << std::setw(12)
      << "conclusive" << std::setw(10) << "disagree" << std::setw(8) << "certs" << std::setw(8) << "norms"
      << std::setw(10) << "failures" << std::setw(10) << "seconds" << "  result\n";
  out << std::left << std::setw(16) << suite << std::right << std::setw(10) << cases.size() << std::setw(12)
      << conclusive() << std::setw(10) << disagreements() << std::setw(8) << certificates() << std::setw(8)
      << normalizations() << std::setw(10) << failures() << std::setw(10) << std::fixed << std::setprecision(2)
      << seconds << "  " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : cases) {
    if (c.agree() && c.failures.empty()) continue;
    out << "  " << c.instance << "\n";
    for (const auto& v : c.verdicts) out << "    " << v.label << ": " << to_string(v.outcome) << "\n";
    for (const auto& f : c.failures) out << "    failure: " << f << "\n";
  }
  return out.str();
}

std::string SuiteReport::to_json(int indent) const {
  json j;
  j["suite"] = suite;
  j["instances"] = cases.size();
  j["conclusive"] = conclusive();
  j["disagreements"] = disagreements();
  j["certificates"] = certificates();
  j["normalizations"] = normalizations();
  j["failures"] = failures();
  j["passed"] = passed();
  j["seconds"] = seconds;
  json cs = json::array();
  for (const auto& c : cases) {
    json x;
    x["instance"] = c.instance;
    json vs = json::array();
    for (const auto& v : c.verdicts) vs.push_back({{"label", v.label}, {"outcome", to_string(v.outcome)}, {"note", v.note}});
    x["verdicts"] = vs;
    x["agree"] = c.agree();
    x["failures"] = c.failures;
    cs.push_back(x);
  }
  j["cases"] = cs;
  return j.dump(indent);
}

std::vector<std::string> suite_names() {
  return {"illtoll5", "illtoll6", "illtoll8", "iezwtoabvass", "encodingofILZW2",
          "BVASStoLL", "prenextrans2", "fleitoilzw", "llwandellw"};
}

std::vector<CaseResult> run_jobs(const std::vector<std::function<CaseResult()>>& jobs, unsigned workers) {
  std::vector<CaseResult> out(jobs.size());
  auto guarded = [&](std::size_t i) {
    try {
      out[i] = jobs[i]();
    } catch (const std::exception& e) {
      out[i].instance = "job " + std::to_string(i);
      out[i].failures.push_back(std::string("exception: ") + e.what());
    }
  };
  if (workers <= 1 || jobs.size() <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) guarded(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(workers, jobs.size()); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) guarded(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

// ---------------------------------------------------------------- harnesses

namespace {

void record(CaseResult& r, const std::string& label, const Verdict& v, const System& sys, bool allow_cut) {
  r.verdicts.push_back({label, v.outcome, v.note});
  if (!v.proved()) return;
  ++r.certificates;
  if (!v.proof) {
    ++r.rejections;
    r.failures.push_back(label + ": Proved without a proof tree");
    return;
  }
  if (auto ck = check_proof(sys, *v.proof, allow_cut); !ck) {
    ++r.rejections;
    r.failures.push_back(label + ": certificate rejected: " + ck.message);
  }
}

std::string join(const std::vector<Formula>& fs) {
  std::string s;
  for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? ", " : "") + to_string(fs[i]);
  return s;
}

// check_tree, then the regular and standard normal forms of a found tree.
void check_machine_tree(CaseResult& r, const Abvass& a, const std::vector<StateId>& leaves, const DeductionTree& t,
                        const EncodedMachine* em) {
  ++r.certificates;
  if (auto ck = check_tree(a, leaves, t, true); !ck) {
    ++r.rejections;
    r.failures.push_back("deduction tree rejected: " + ck.message);
    return;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t before = r.failures.size();
  ++r.normalizations;
  DeductionTree reg = normalize_regular(a, leaves, t);
  if (!is_regular(a, leaves, reg)) r.failures.push_back("normalize_regular output is not regular");
  if (auto ck = check_tree(a, leaves, reg, true); !ck) r.failures.push_back("regular form rejected: " + ck.message);
  if (!(reg.config == t.config)) r.failures.push_back("regular form changed the root");
  if (em) {
    ++r.normalizations;
    try {
      DeductionTree st = normalize_standard(*em, reg);
      if (!is_standard(*em, st)) r.failures.push_back("normalize_standard output is not standard");
      if (auto ck = check_tree(a, leaves, st, true); !ck) r.failures.push_back("standard form rejected: " + ck.message);
      if (!(st.config == t.config)) r.failures.push_back("standard form changed the root");
    } catch (const std::exception& e) {
      r.failures.push_back(std::string("normalize_standard: ") + e.what());
    }
  }
  r.normalization_failures += r.failures.size() - before;
  r.normalize_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Formula> support(std::vector<Formula> v) {
  ms::sort(v);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

CaseResult check_translation(TranslationPair p, const Sequent& s, const Budget& b) {
  CaseResult r;
  const char* names[][2] = {{"LLW", "ILLW"}, {"ELLW", "IELW"}, {"LLW", "ILZW"}, {"LL", "ILL"}};
  const auto& nm = names[static_cast<int>(p)];
  System cl = system_by_name(nm[0]), in = system_by_name(nm[1]);
  Sequent t;
  if (p == TranslationPair::LLW_ILZW) {
    t = neg_translate(s, Formula::bot(), Formula{});
  } else {
    Formula x = Formula::var(fresh_variable(s));
    t = neg_translate(s, x, x);
  }
  r.instance = to_string(s) + "  ~>  " + to_string(t);
  record(r, std::string(nm[0]) + " " + to_string(s), prove(cl, s, b), cl, false);
  record(r, std::string(nm[1]) + " " + to_string(t), prove(in, t, b), in, false);
  return r;
}

CaseResult check_encoder(Variant v, Formula f, const Budget& b) {
  CaseResult r;
  r.instance = to_string(f);
  System sys = system_by_name(v == Variant::E ? "IEZW" : "ILZW'");
  Sequent goal = Sequent::intuitionistic({}, f);
  record(r, sys.name + " |- F", prove(sys, goal, b), sys, false);
  EncodedMachine em = encode_formula(f, v);
  Config root = sequent_to_config(em, goal);
  ReachResult rr = search_deduction(em.machine, em.leaves(), root, true, b);
  r.verdicts.push_back({"A^" + to_string(v) + "_F reaches (0,F,0)", rr.outcome, rr.note});
  if (rr.tree) check_machine_tree(r, em.machine, em.leaves(), *rr.tree, &em);
  return r;
}

bool is_quest_prenex_multiplicative(const Sequent& s) {
  auto mult = [](auto& self, Formula g) -> bool {
    if (g.is_atom()) return true;
    if (g.kind() == Kind::Tensor || g.kind() == Kind::Par) return self(self, g.left()) && self(self, g.right());
    return false;
  };
  if (!s.is_classical()) return false;
  return std::all_of(s.ctx().begin(), s.ctx().end(), [&](Formula g) {
    if (g.is_atom()) return true;
    return g.kind() == Kind::Quest && mult(mult, g.body());
  });
}

CaseResult check_bvass(const BvassCase& c, const Budget& b) {
  CaseResult r;
  Sequent s = encode_bvass_to_sequent(c.machine, c.leaves, c.root);
  r.instance = c.name + ": " + to_string(s);
  ++r.certificates;
  if (!is_quest_prenex_multiplicative(s)) r.failures.push_back("encoded sequent is not ?-prenex {*,|}");
  ReachResult rr = search_deduction(c.machine, c.leaves, c.root, true, b);
  r.verdicts.push_back({"lossy reach " + to_string(c.machine, c.root), rr.outcome, rr.note});
  if (rr.tree) check_machine_tree(r, c.machine, c.leaves, *rr.tree, nullptr);
  System llw = system_by_name("LLW");
  record(r, "LLW encoded", prove(llw, s, b), llw, false);
  return r;
}

CaseResult check_prenex(const Sequent& goal, const Budget& b) {
  CaseResult r;
  r.instance = to_string(goal);
  auto pre = split_prenex(goal);
  if (!pre) throw std::invalid_argument("goal is not !-prenex: " + to_string(goal));
  System ill = system_by_name("ILLW:-o,!");
  record(r, "ILLW{-o,!} !G,D |- A", prove(ill, goal, b), ill, false);
  const auto phi = support(pre->banged);
  for (const char* name : {"BCK", "FLplus_ei", "FLei", "FLew"}) {
    System base = system_by_name(name);
    Verdict v = deduce(base, phi, pre->rest, b, Route::Direct);
    record(r, std::string(name) + "[sG] D |- A", v, with_axioms(base, phi), true);
  }
  return r;
}

CaseResult check_deducibility(const System& base, const std::vector<Formula>& phi, const Sequent& goal,
                              const Budget& b) {
  CaseResult r;
  r.instance = base.name + "[" + join(phi) + "] " + to_string(goal);
  record(r, "direct", deduce(base, phi, goal, b, Route::Direct), with_axioms(base, phi), true);
  Reduced red = reduce_deducibility(base, phi, goal);
  record(r, "via " + red.system.name, deduce(base, phi, goal, b, Route::Reduction), red.system, false);
  std::vector<Formula> ctx = goal.ctx();
  for (Formula f : phi) ctx.push_back(Formula::bang(f));
  Sequent prenex = goal.with_ctx(ctx);
  Verdict pv = prenex_expand_prove(base, prenex, b);
  record(r, "prenex expansion", pv, base, false);
  return r;
}

CaseResult check_llw_ellw(const std::vector<Formula>& gamma, Formula a, const Budget& b) {
  std::vector<Formula> ctx;
  for (Formula g : gamma) ctx.push_back(Formula::quest(g));
  std::vector<Formula> c1 = ctx, c2 = ctx;
  c1.push_back(a);
  c2.push_back(Formula::bang(a));
  Sequent s1 = Sequent::classical(c1), s2 = Sequent::classical(c2);
  CaseResult r;
  r.instance = to_string(s1);
  System llw = system_by_name("LLW"), ellw = system_by_name("ELLW");
  record(r, "LLW |- ?G, A", prove(llw, s1, b), llw, false);
  record(r, "ELLW |- ?G, !A", prove(ellw, s2, b), ellw, false);
  return r;
}

// ---------------------------------------------------------------- suites

SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw std::invalid_argument("unknown suite '" + name + "'");
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(o.seed);
  const Budget b = o.budget;
  std::vector<std::function<CaseResult()>> jobs;

  if (o.max_size > 0) {
    if (name == "illtoll5" || name == "illtoll6" || name == "illtoll8") {
      Grammar g = Grammar::of(Polarity::Classical, lang::classical_full(), {"p", "q"});
      std::vector<Sequent> inst;
      if (o.exhaustive) {
        for (Formula f : formulas_up_to(g, o.max_size)) inst.push_back(Sequent::classical({f}));
      } else {
        for (std::size_t i = 0; i < o.count; ++i) inst.push_back(Sequent::classical(random_multiset(g, o.max_size, 3, rng)));
      }
      for (const Sequent& s : inst) {
        if (name == "illtoll5") {
          jobs.push_back([s, b] { return check_translation(TranslationPair::LLW_ILLW, s, b); });
          jobs.push_back([s, b] { return check_translation(TranslationPair::ELLW_IELW, s, b); });
        } else if (name == "illtoll6") {
          jobs.push_back([s, b] { return check_translation(TranslationPair::LLW_ILZW, s, b); });
        } else {
          jobs.push_back([s, b] { return check_translation(TranslationPair::LL_ILL, s, b); });
        }
      }
    } else if (name == "iezwtoabvass" || name == "encodingofILZW2") {
      Variant v = name == "iezwtoabvass" ? Variant::E : Variant::IPrime;
      Grammar g = Grammar::of(Polarity::Intuitionistic, lang::intuitionistic_full(), {"p"});
      std::vector<Formula> inst;
      if (o.exhaustive) {
        inst = formulas_up_to(g, o.max_size);
      } else {
        for (std::size_t i = 0; i < o.count; ++i) inst.push_back(random_formula_up_to(g, o.max_size, rng));
      }
      for (Formula f : inst) jobs.push_back([v, f, b] { return check_encoder(v, f, b); });
    } else if (name == "BVASStoLL") {
      for (const BvassCase& c : hand_built_bvass()) jobs.push_back([c, b] { return check_bvass(c, b); });
    } else if (name == "prenextrans2") {
      Grammar g = Grammar::of(Polarity::Intuitionistic, lang::implicational(), {"p", "q"});
      std::vector<Sequent> inst;
      if (o.exhaustive) {
        for (Formula f : formulas_up_to(g, o.max_size)) inst.push_back(Sequent::intuitionistic({}, f));
      } else {
        for (std::size_t i = 0; i < o.count; ++i) {
          auto fs = random_multiset(g, o.max_size, 3, rng);
          std::size_t total = 0;
          for (Formula f : fs) total += f.size();
          Formula a = fs.front();
          std::vector<Formula> ctx;
          for (std::size_t k = 1; k < fs.size(); ++k) {
            bool bang = total < o.max_size && std::bernoulli_distribution(0.6)(rng);
            if (bang) ++total;
            ctx.push_back(bang ? Formula::bang(fs[k]) : fs[k]);
          }
          inst.push_back(Sequent::intuitionistic(ctx, a));
        }
      }
      for (const Sequent& s : inst) jobs.push_back([s, b] { return check_prenex(s, b); });
    } else if (name == "fleitoilzw") {
      Grammar g = Grammar::of(Polarity::Intuitionistic, lang::fl(), {"p", "q"});
      struct Inst {
        std::vector<Formula> phi;
        Sequent goal;
      };
      std::vector<Inst> inst;
      if (o.exhaustive) {
        for (Formula f : formulas_up_to(g, o.max_size)) inst.push_back({{}, Sequent::intuitionistic({}, f)});
      } else {
        for (std::size_t i = 0; i < o.count; ++i) {
          Inst x;
          std::size_t k = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
          for (std::size_t j = 0; j < k; ++j)
            x.phi.push_back(random_formula_up_to(g, std::min<std::size_t>(3, o.max_size), rng));
          x.phi = support(x.phi);
          auto fs = random_multiset(g, o.max_size, 3, rng);
          x.goal = Sequent::intuitionistic(std::vector<Formula>(fs.begin() + 1, fs.end()), fs.front());
          inst.push_back(std::move(x));
        }
      }
      System flew = system_by_name("FLew"), flei = system_by_name("FLei");
      for (const Inst& x : inst) {
        jobs.push_back([x, flew, b] { return check_deducibility(flew, x.phi, x.goal, b); });
        jobs.push_back([x, flei, b] { return check_deducibility(flei, x.phi, x.goal, b); });
      }
    } else if (name == "llwandellw") {
      Grammar g = Grammar::of(Polarity::Classical, lang::infl(), {"p", "q"});
      if (o.exhaustive) {
        for (Formula f : formulas_up_to(g, o.max_size)) jobs.push_back([f, b] { return check_llw_ellw({}, f, b); });
      } else {
        for (std::size_t i = 0; i < o.count; ++i) {
          auto fs = random_multiset(g, o.max_size, 3, rng);
          std::vector<Formula> gamma(fs.begin() + 1, fs.end());
          Formula a = fs.front();
          jobs.push_back([gamma, a, b] { return check_llw_ellw(gamma, a, b); });
        }
      }
    }
  }

  SuiteReport rep;
  rep.suite = name;
  rep.cases = run_jobs(jobs, o.workers);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace subtower
