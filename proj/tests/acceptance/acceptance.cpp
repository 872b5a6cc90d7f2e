// Acceptance run: one PASS/FAIL line per criterion with wall-clock time.
//
//   acceptance [--list] [ids...]
//
// Exit status is the number of failed criteria (0 when all pass).

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "fragmc/classifier.hpp"
#include "fragmc/engines.hpp"
#include "fragmc/kripke_io.hpp"
#include "fragmc/oracle.hpp"
#include "fragmc/parser.hpp"
#include "fragmc/reductions.hpp"
#include "fragmc/syntax.hpp"
#include "sources.hpp"
#include "support.hpp"

using namespace fragmc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- 1: classification table ----

bool leq(ComplexityClass a, ComplexityClass b) {
  if (a == b) return true;
  return rank(a) < rank(b);
}

std::vector<OperatorSet> subsets(const std::vector<std::string>& tokens) {
  std::vector<OperatorSet> out;
  for (std::size_t m = 0; m < (1u << tokens.size()); ++m) {
    OperatorSet s;
    for (std::size_t i = 0; i < tokens.size(); ++i)
      if (m >> i & 1) s.insert(tokens[i]);
    out.push_back(s);
  }
  return out;
}

Outcome classification() {
  std::ifstream in(FRAGMC_TEST_DATA "/classification_golden.tsv");
  if (!in) return {false, "golden file missing"};
  std::size_t rows = 0, wrong = 0, ctl_rows = 0, plus_rows = 0;
  for (std::string line; std::getline(in, line);) {
    std::stringstream ss(line);
    std::string fam, disc, ops, cls, thm;
    std::getline(ss, fam, '\t');
    std::getline(ss, disc, '\t');
    std::getline(ss, ops, '\t');
    std::getline(ss, cls, '\t');
    std::getline(ss, thm, '\t');
    FragmentProfile p{*parse_family(fam), {}, *parse_discipline(disc)};
    if (ops != "-") {
      std::stringstream os(ops);
      for (std::string op; std::getline(os, op, ',');) p.operators.insert(op);
    }
    auto v = classify(p);
    if (to_string(v.cls) != cls || v.theorem != thm) ++wrong;
    ++rows;
    (p.family == Family::CTL ? ctl_rows : plus_rows) += 1;
  }

  const std::vector<Discipline> discs{Discipline::Mon, Discipline::An, Discipline::Pos, Discipline::Full};
  std::size_t identity = 0, monotone = 0;
  auto sweep = [&](Family fam, const std::vector<std::string>& tokens, bool need_quantifier) {
    auto all = subsets(tokens);
    std::map<std::pair<OperatorSet, int>, ComplexityClass> cls;
    for (const auto& t : all) {
      if (need_quantifier && !t.count("A") && !t.count("E")) continue;
      for (int d = 0; d < 4; ++d) cls[{t, d}] = classify({fam, t, discs[d]}).cls;
      if (cls[{t, 0}] != cls[{t, 1}] || cls[{t, 1}] != cls[{t, 2}]) ++identity;
    }
    for (const auto& [key, c] : cls) {
      const auto& [t, d] = key;
      if (d < 3 && !leq(c, cls[{t, d + 1}])) ++monotone;
      for (const auto& tok : tokens) {
        if (t.count(tok)) continue;
        OperatorSet bigger = t;
        bigger.insert(tok);
        auto it = cls.find({bigger, d});
        if (it != cls.end() && !leq(c, it->second)) ++monotone;
      }
    }
  };
  sweep(Family::CTL, ctl_operator_tokens(), false);
  std::vector<std::string> plus(plus_operator_tokens().begin(), plus_operator_tokens().begin() + 7);
  sweep(Family::CTLplus, plus, true);

  Outcome o;
  o.pass = wrong == 0 && identity == 0 && monotone == 0 && ctl_rows == 4096;
  o.detail = fmt("%zu golden rows (%zu CTL, %zu plus), %zu wrong; mon=an=pos violations %zu; monotonicity "
                 "violations %zu",
                 rows, ctl_rows, plus_rows, wrong, identity, monotone);
  return o;
}

// ---- 2: semantics laws ----

std::vector<char> engine_eval(const KripkeStructure& K, const StateFormula& f) {
  return check_all(K, f, select_engine(f));
}

Outcome semantics_laws() {
  fx::Rng rng(2024);
  fx::GenOptions ctl{{"EX", "AX", "EF", "AF", "EG", "AG", "EU", "AU", "ER", "AR"}};
  ctl.depth = 2;
  fx::GenOptions plus{{"X", "F", "G", "U", "R"}};
  plus.plus = true;
  plus.depth = 2;
  plus.path_depth = 2;

  std::size_t checks = 0, violations = 0, unknown = 0;
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    auto K = fx::random_kripke(rng, 1 + i % 6, {"p", "q", "r"});
    const StateFormula psi = fx::random_formula(rng, ctl), chi = fx::random_formula(rng, ctl);
    StateFormula qf = fx::random_formula(rng, plus);
    while (qf.kind() != Kind::Exists && qf.kind() != Kind::Forall) qf = fx::random_formula(rng, plus);
    const PathFormula pi = qf.path();
    const PathFormula P = embed(psi), C = embed(chi);
    const std::vector<std::pair<StateFormula, StateFormula>> laws{
        {exists(pi), negate(forall(negate(pi)))},
        {exists(eventually(C)), exists(until(embed(top()), C))},
        {forall(eventually(C)), forall(until(embed(top()), C))},
        {exists(always(C)), exists(negate(eventually(negate(C))))},
        {forall(always(C)), forall(negate(eventually(negate(C))))},
        {exists(release(P, C)), exists(negate(until(negate(P), negate(C))))},
        {forall(release(P, C)), forall(negate(until(negate(P), negate(C))))},
        {AU(psi, chi), conj(AF(chi), negate(EU(negate(chi), conj(negate(psi), negate(chi)))))},
        {ER(psi, chi), disj(EG(chi), EU(chi, conj(psi, chi)))},
    };
    for (const auto& [lhs, rhs] : laws) {
      const auto a = engine_eval(K, lhs), b = engine_eval(K, rhs);
      const auto oa = eval_oracle_all(K, lhs), ob = eval_oracle_all(K, rhs);
      for (State s = 0; s < K.size(); ++s) {
        ++checks;
        bool bad = a[s] != b[s];
        if (oa[s] == Truth::Unknown || ob[s] == Truth::Unknown)
          ++unknown;
        else
          bad = bad || oa[s] != ob[s] || (oa[s] == Truth::True) != (a[s] != 0);
        if (bad && violations++ == 0) first = to_string(lhs) + " vs " + to_string(rhs);
      }
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = fmt("%zu pointwise checks over 9 laws, %zu violations, %zu oracle indeterminates", checks, violations,
                 unknown);
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

// ---- 3: engine agreement ----

Outcome engine_agreement() {
  struct Pair {
    const char* name;
    fx::GenOptions gen;
    Engine a;
    std::optional<Engine> b;  // nullopt: the oracle
  };
  auto opts = [](std::vector<std::string> ops, bool plus, Discipline d) {
    fx::GenOptions g{std::move(ops)};
    g.plus = plus;
    g.discipline = d;
    return g;
  };
  const std::vector<std::string> all_ctl{"EX", "AX", "EF", "AF", "EG", "AG", "EU", "AU",
                                         "ER", "AR", "EFi", "AFi", "EGi", "AGi"};
  const std::vector<std::string> all_plus{"X", "F", "G", "U", "R", "Fi", "Gi"};
  std::vector<Pair> pairs{
      {"labelling/oracle", opts(all_ctl, false, Discipline::Full), Engine::Labelling, std::nullopt},
      {"topdown/oracle", opts({"EX", "EF", "EFi"}, false, Discipline::Pos), Engine::TopDown, std::nullopt},
      {"topdown-A/oracle", opts({"AX", "AG", "AGi"}, false, Discipline::Pos), Engine::TopDown, std::nullopt},
      {"aex/oracle", opts({"X"}, true, Discipline::Full), Engine::CtlplusAex, std::nullopt},
      {"general/oracle", opts(all_plus, true, Discipline::Full), Engine::CtlplusGeneral, std::nullopt},
      {"topdown/labelling", opts({"EX", "EF", "AX", "AG"}, false, Discipline::Pos), Engine::TopDown,
       Engine::Labelling},
      {"labelling/general", opts(all_ctl, false, Discipline::Full), Engine::Labelling, Engine::CtlplusGeneral},
      {"aex/general", opts({"X"}, true, Discipline::Full), Engine::CtlplusAex, Engine::CtlplusGeneral},
  };
  fx::Rng rng(303);
  std::size_t disagreements = 0, points = 0, unknown = 0, oracle_points = 0;
  std::string first;
  for (auto& pr : pairs) {
    int done = 0;
    for (int i = 0; done < 1000; ++i) {
      auto K = fx::random_kripke(rng, 1 + i % 6, {"p", "q", "r"});
      StateFormula f = fx::random_formula(rng, pr.gen);
      try {
        require_engine_accepts(pr.a, f);
        if (pr.b) require_engine_accepts(*pr.b, f);
      } catch (const FragmentError&) {
        continue;
      }
      ++done;
      const auto got = check_all(K, f, pr.a);
      std::vector<Truth> ref;
      if (pr.b) {
        for (char c : check_all(K, f, *pr.b)) ref.push_back(truth_of(c != 0));
      } else {
        ref = eval_oracle_all(K, f);
        oracle_points += K.size();
      }
      for (State s = 0; s < K.size(); ++s) {
        ++points;
        if (ref[s] == Truth::Unknown) {
          ++unknown;
          continue;
        }
        if ((got[s] != 0) != (ref[s] == Truth::True) && disagreements++ == 0)
          first = std::string(pr.name) + ": " + to_string(f);
      }
    }
  }
  Outcome o;
  const double rate = oracle_points ? 100.0 * unknown / oracle_points : 0.0;
  o.pass = disagreements == 0 && rate < 1.0;
  o.detail = fmt("%zu pairs x 1000 instances, %zu state checks, %zu disagreements, %zu oracle indeterminates "
                 "(%.3f%%)",
                 pairs.size(), points, disagreements, unknown, rate);
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

// ---- 4, 5, 7: reduction batteries ----

bool instance_truth(const HardnessInstance& h) {
  return check_all(h.structure, h.formula, select_engine(h.formula))[h.start] != 0;
}

// Every instance of the circuit battery with the value it must check to.
void circuit_battery(const std::function<void(const MonotoneCircuit&, const HardnessInstance&, bool)>& visit,
                     std::size_t* circuits = nullptr) {
  fx::enumerate_circuits(8, 3, [&](const MonotoneCircuit& c) {
    if (circuits) ++*circuits;
    for (const auto& x : fx::all_inputs(c.vars)) {
      const bool value = fx::ref_circuit_value(c, x);
      visit(c, gen_circuit_ex(c, x), value);
      visit(c, gen_circuit_ef(c, x), value);
      visit(c, gen_circuit_ax(c, x), !value);
    }
  });
}

void game_battery(const std::function<void(const AlternatingGame&, const HardnessInstance&, bool)>& visit) {
  fx::Rng rng(505);
  for (int i = 0; i < 500; ++i) {
    AlternatingGame g = fx::random_game(rng, 4, 12);
    const bool value = fx::ref_game_value(g);
    visit(g, gen_game_ax_ex(g), value);
    visit(g, gen_game_af_eg(g), value);
    visit(g, gen_game_eg_only(g), value);
  }
}

Outcome circuits() {
  std::size_t circuits = 0, instances = 0, wrong = 0;
  std::string first;
  circuit_battery(
      [&](const MonotoneCircuit& c, const HardnessInstance& h, bool want) {
        ++instances;
        if ((h.expected != want || instance_truth(h) != want) && wrong++ == 0)
          first = h.provenance.generator + " on\n" + netlist_to_string(c);
      },
      &circuits);
  Outcome o;
  o.pass = wrong == 0 && circuits > 0;
  o.detail = fmt("%zu circuits, %zu instances, %zu wrong", circuits, instances, wrong);
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome games() {
  std::size_t instances = 0, wrong = 0, not_eg_only = 0;
  std::string first;
  game_battery([&](const AlternatingGame& g, const HardnessInstance& h, bool value) {
    ++instances;
    if ((h.expected != value || instance_truth(h) != value) && wrong++ == 0)
      first = h.provenance.generator + " on " + game_to_json(g);
    if (h.provenance.generator == "game-eg" && operator_set(h.formula) != OperatorSet{"EG"}) ++not_eg_only;
  });
  Outcome o;
  o.pass = wrong == 0 && not_eg_only == 0;
  o.detail = fmt("500 games, %zu instances, %zu wrong, %zu EG-only formulas using other operators", instances, wrong,
                 not_eg_only);
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome cnf() {
  std::size_t formulas = 0, instances = 0, wrong = 0;
  std::string first;
  for (int vars = 1; vars <= 2; ++vars) {
    fx::enumerate_3cnf(vars, 3, [&](const Cnf& f) {
      ++formulas;
      const bool sat = fx::ref_satisfiable(f);
      for (int k = 0; k < 2; ++k) {
        HardnessInstance h = k == 0 ? gen_3cnf_ctlplus_eg(f) : gen_3cnf_ctlplus_ef(f);
        ++instances;
        if (h.expected != sat || instance_truth(h) != sat)
          if (wrong++ == 0) first = h.provenance.generator + " on\n" + cnf_to_dimacs(f);
      }
    });
  }
  Outcome o;
  o.pass = wrong == 0;
  o.detail = fmt("%zu formulas, %zu instances, %zu wrong", formulas, instances, wrong);
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome ectl_lift() {
  struct Tally {
    std::size_t total = 0, wrong = 0;
  };
  std::map<std::string, Tally> tally;
  auto lift = [&](const HardnessInstance& h) {
    auto& t = tally[h.provenance.generator];
    ++t.total;
    if (instance_truth(to_ectl_instance(h)) != h.expected) ++t.wrong;
  };
  circuit_battery([&](const MonotoneCircuit&, const HardnessInstance& h, bool) { lift(h); });
  game_battery([&](const AlternatingGame&, const HardnessInstance& h, bool) { lift(h); });
  Outcome o;
  std::string parts;
  std::size_t wrong = 0;
  for (const auto& [gen, t] : tally) {
    wrong += t.wrong;
    parts += fmt("%s %zu/%zu; ", gen.c_str(), t.total - t.wrong, t.total);
  }

  fx::Rng rng(707);
  std::size_t closed_wrong = 0;
  for (int i = 0; i < 500; ++i) {
    auto K = reflexive_closure(fx::random_kripke(rng, 1 + i % 6, {"p"}));
    auto r = fx::naive_reach(K);
    const StateFormula f = parse_formula("EFi p");
    auto oracle = eval_oracle_all(K, f);
    auto engine = check_all(K, f, Engine::Labelling);
    for (State w = 0; w < K.size(); ++w) {
      bool closed = false;
      for (State x = 0; x < K.size(); ++x) {
        if (!r[w][x] || !K.holds(x, "p")) continue;
        for (State y : K.successors(x)) closed = closed || r[y][x];
      }
      if (oracle[w] != truth_of(closed) || (engine[w] != 0) != closed) ++closed_wrong;
    }
  }
  o.pass = wrong == 0 && closed_wrong == 0;
  o.detail = "lift preserved: " + parts + fmt("EFi closed form mismatches on 500 reflexive structures: %zu", closed_wrong);
  return o;
}

// ---- 8: atomic negation elimination ----

Outcome atomic_negation() {
  fx::Rng rng(808);
  fx::GenOptions o{{"EX", "AX", "EF", "AF", "EG", "AG", "EU", "AU", "ER", "AR"}};
  o.discipline = Discipline::An;
  o.depth = 2;
  std::size_t wrong = 0, not_free = 0, points = 0;
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    auto K = fx::random_kripke(rng, 1 + i % 4, {"p", "q", "r"});
    StateFormula f = fx::random_formula(rng, o);
    auto [K2, f2] = elim_atomic_negation(K, f);
    if (negation_discipline(f2) != Discipline::Mon) ++not_free;
    const auto a = fx::naive_eval(K, f, 6), b = fx::naive_eval(K2, f2, 6);
    points += K.size();
    for (State s = 0; s < K.size(); ++s)
      if (a[s] != b[s] && wrong++ == 0) first = to_string(f);
  }
  Outcome out;
  out.pass = wrong == 0 && not_free == 0;
  out.detail = fmt("1000 CTLan instances, %zu states compared, %zu mismatches, %zu outputs with negation", points,
                   wrong, not_free);
  if (!first.empty()) out.detail += "; first: " + first;
  return out;
}

// ---- 9: performance ----

// A CTLpos({EX,EF}) formula with exactly `size` nodes.
StateFormula sized_formula(fx::Rng& rng, std::size_t size) {
  const char* atoms[] = {"p", "q", "r"};
  if (size == 1) return atom(atoms[rng() % 3]);
  if (size == 2) return rng() % 2 ? negate(atom(atoms[rng() % 3])) : EX(atom(atoms[rng() % 3]));
  // EX/EF add two nodes (quantifier and temporal), embed folding keeps it at two.
  if (rng() % 3 == 0 && size >= 3) {
    StateFormula inner = sized_formula(rng, size - 2);
    return rng() % 2 ? EX(inner) : EF(inner);
  }
  const std::size_t left = 1 + rng() % (size - 2);
  StateFormula a = sized_formula(rng, left), b = sized_formula(rng, size - 1 - left);
  return rng() % 2 ? conj(a, b) : disj(a, b);
}

KripkeStructure big_structure(fx::Rng& rng, std::size_t n) {
  KripkeBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_state("s" + std::to_string(i));
  for (const char* p : {"p", "q", "r"}) b.declare_prop(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 2; ++k) b.add_transition(i, rng() % n);
    for (const char* p : {"p", "q", "r"})
      if (rng() % 8 == 0) b.add_label(i, p);
  }
  return b.build(Totality::Require);
}

Outcome performance() {
  fx::Rng rng(909);
  auto K = big_structure(rng, 10000);
  StateFormula f = sized_formula(rng, 100);
  while (f.size() != 100 || operator_set(f).empty()) f = sized_formula(rng, 100);
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  TopDownChecker td(K, f);
  const bool a = td.check(0);
  auto t1 = clock::now();
  const auto table = check_ctl(K, f);
  auto t2 = clock::now();
  std::size_t differ = a != table.holds(0);
  for (State s = 0; s < K.size(); ++s) differ += td.check(s) != table.holds(s);
  auto t3 = clock::now();
  const double td_s = std::chrono::duration<double>(t1 - t0).count();
  const double ctl_s = std::chrono::duration<double>(t2 - t1).count();
  const double td_all_s = std::chrono::duration<double>(t3 - t2).count() + td_s;
  std::string ops;
  for (const auto& op : operator_set(f)) ops += (ops.empty() ? "" : ",") + op;
  Outcome o;
  o.pass = td_s < 2.0 && td_all_s < 2.0 && ctl_s < 10.0 && differ == 0;
  o.detail = fmt("|W|=10000, |f|=%zu, ops {%s}: topdown %.3f s from one state, %.3f s for all states (limit 2), "
                 "check_ctl %.3f s (limit 10), %zu verdict differences",
                 f.size(), ops.c_str(), td_s, td_all_s, ctl_s, differ);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "classification table", 1.0, classification},
      {2, "semantics laws", 60.0, semantics_laws},
      {3, "engine agreement", 300.0, engine_agreement},
      {4, "circuit reductions", 120.0, circuits},
      {5, "game reductions", 120.0, games},
      {6, "3CNF reductions", 120.0, cnf},
      {7, "ECTL lift", 120.0, ectl_lift},
      {8, "atomic negation elimination", 60.0, atomic_negation},
      {9, "performance sanity", 12.0, performance},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--list") {
      for (const auto& c : criteria) std::cout << c.id << " " << c.name << "\n";
      return 0;
    }
    only.insert(std::stoi(a));
  }
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::cout << "[" << (pass ? "PASS" : "FAIL") << "] " << c.id << " " << c.name << " (" << std::fixed
              << std::setprecision(2) << s << " s, limit " << std::setprecision(0) << c.limit_s << " s"
              << (in_time ? "" : ", TOO SLOW") << "): " << o.detail << std::endl;
  }
  return failed;
}
