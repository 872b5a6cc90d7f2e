// fragmc command-line frontend. JSON on stdout, human-readable text on stderr.
//
// Exit codes: 0 true/success, 1 false, 2 usage or parse error, 3 fragment
// mismatch, 4 oracle indeterminate, 5 corpus mismatch.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fragmc/classifier.hpp"
#include "fragmc/engines.hpp"
#include "fragmc/kripke_io.hpp"
#include "fragmc/oracle.hpp"
#include "fragmc/parser.hpp"
#include "fragmc/reductions.hpp"
#include "fragmc/syntax.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace fragmc;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kUsage = 2, kFragment = 3, kIndeterminate = 4, kMismatch = 5 };

struct Globals {
  std::string engine = "auto";
  std::size_t oracle_cap = 0;
  std::size_t oracle_bound = 0;
  bool repair = false;
  int indent = 2;
};

class Stopwatch {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void emit(const json& j, int indent) { std::cout << j.dump(indent) << std::endl; }

OracleOptions oracle_options(const Globals& g) {
  OracleOptions o;
  o.bound = g.oracle_bound;
  o.cap = g.oracle_cap;
  return o;
}

// A formula argument is literal text unless it names a readable file or starts with '@'.
StateFormula load_formula(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@')
    text = read_file(arg.substr(1));
  else if (arg.find_first_of(" ()~&|") == std::string::npos && fs::is_regular_file(arg))
    text = read_file(arg);
  return parse_formula(text);
}

json verdict_json(const ComplexityVerdict& v) {
  return {{"class", to_string(v.cls)},
          {"completeness", v.completeness},
          {"theorem", v.theorem},
          {"rule", v.rule},
          {"engine", v.engine}};
}

json profile_json(const FragmentProfile& p) {
  return {{"family", to_string(p.family)},
          {"discipline", to_string(p.discipline)},
          {"operators", std::vector<std::string>(p.operators.begin(), p.operators.end())}};
}

Engine resolve_engine(const std::string& name, const StateFormula& f) {
  if (name == "auto") return select_engine(f);
  auto e = parse_engine(name);
  if (!e) throw CLI::ValidationError("--engine", "unknown engine '" + name + "'");
  require_engine_accepts(*e, f);
  return *e;
}

struct CheckResult {
  std::vector<Truth> truth;  // per state
  std::size_t table_entries = 0;
  std::size_t oracle_calls = 0;
};

CheckResult run_engine(const KripkeStructure& K, const StateFormula& f, Engine e, const Globals& g,
                       std::optional<State> only) {
  CheckResult r;
  r.truth.assign(K.size(), Truth::False);
  auto take = [&](const LabelTable& t) {
    for (State s = 0; s < K.size(); ++s) r.truth[s] = truth_of(t.result()[s] != 0);
    r.table_entries = t.size() * K.size();
  };
  switch (e) {
    case Engine::Propositional: {
      auto v = evaluate_propositional(K, f);
      for (State s = 0; s < K.size(); ++s) r.truth[s] = truth_of(v[s] != 0);
      break;
    }
    case Engine::TopDown: {
      TopDownChecker c(K, f);
      if (only) {
        r.truth[*only] = truth_of(c.check(*only));
      } else {
        for (State s = 0; s < K.size(); ++s) r.truth[s] = truth_of(c.check(s));
      }
      r.table_entries = c.entries();
      break;
    }
    case Engine::Labelling:
      take(check_ctl(K, f));
      break;
    case Engine::CtlplusAex:
      take(check_ctlplus_aex(K, f));
      break;
    case Engine::CtlplusGeneral:
      take(check_ctlplus_general(K, f));
      break;
    case Engine::Oracle: {
      OracleStats stats;
      if (only) {
        r.truth[*only] = eval_oracle(K, *only, f, oracle_options(g), &stats);
      } else {
        r.truth = eval_oracle_all(K, f, oracle_options(g), &stats);
      }
      r.oracle_calls = stats.searches;
      break;
    }
  }
  return r;
}

// ---- check ----

struct CheckArgs {
  std::string model, formula, state, dot;
  bool all = false;
};

int cmd_check(const CheckArgs& a, const Globals& g) {
  Stopwatch sw;
  KripkeStructure K = load_kripke_file(a.model, g.repair ? Totality::Repair : Totality::Require);
  StateFormula f = load_formula(a.formula);
  const double t_parse = sw.lap();
  if (!a.dot.empty()) write_file(a.dot, kripke_to_dot(K));
  const State w = a.state.empty() ? 0 : K.at(a.state);
  const Engine e = resolve_engine(g.engine, f);
  GraphIndex idx(K);
  const double t_index = sw.lap();
  CheckResult r = run_engine(K, f, e, g, a.all ? std::nullopt : std::optional<State>(w));
  const double t_check = sw.lap();

  json report;
  const Truth tw = r.truth[w];
  if (a.all) {
    json table = json::object();
    for (State s = 0; s < K.size(); ++s) table[K.name(s)] = to_string(r.truth[s]);
    report["verdict"] = table;
  } else if (tw != Truth::Unknown) {
    report["verdict"] = tw == Truth::True;
  }
  report["state"] = K.name(w);
  report["truth"] = to_string(tw);
  report["engine"] = to_string(e);
  report["formula"] = to_string(f);
  report["profile"] = profile_json(profile_of(f));
  try {
    report["classification"] = verdict_json(classify_formula(f));
  } catch (const FragmentError&) {
    report["classification"] = nullptr;
  }
  report["timings"] = {{"parse_ms", t_parse}, {"index_ms", t_index}, {"check_ms", t_check}};
  report["counters"] = {{"states", K.size()},
                        {"transitions", K.transition_count()},
                        {"sccs", idx.scc_count()},
                        {"table_entries", r.table_entries},
                        {"oracle_calls", r.oracle_calls}};
  emit(report, g.indent);
  std::cerr << to_string(tw) << " at " << K.name(w) << " (engine " << to_string(e) << ")\n";
  if (tw == Truth::Unknown) return kIndeterminate;
  return tw == Truth::True ? kTrue : kFalse;
}

// ---- classify ----

struct ClassifyArgs {
  std::string formula, family, ops, discipline = "full";
};

int cmd_classify(const ClassifyArgs& a, const Globals& g) {
  FragmentProfile p;
  if (!a.formula.empty()) {
    p = profile_of(load_formula(a.formula));
  } else {
    if (a.family.empty()) throw CLI::ValidationError("classify", "give a formula or --family");
    auto fam = parse_family(a.family);
    if (!fam) throw CLI::ValidationError("--family", "unknown family '" + a.family + "'");
    auto disc = parse_discipline(a.discipline);
    if (!disc) throw CLI::ValidationError("--discipline", "unknown discipline '" + a.discipline + "'");
    p.family = *fam;
    p.discipline = *disc;
    std::stringstream ss(a.ops);
    for (std::string tok; std::getline(ss, tok, ',');) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
      if (!tok.empty()) p.operators.insert(tok);
    }
  }
  ComplexityVerdict v = classify(p);
  json out = verdict_json(v);
  out["profile"] = profile_json(p);
  emit(out, g.indent);
  std::cerr << to_string(v.cls) << "-" << v.completeness << " (" << v.theorem << "): " << v.rule << "\n";
  return kTrue;
}

// ---- generate ----

struct GenerateArgs {
  std::string generator, source, out, input;
  bool verify = false;
  int max_k = -1;
};

std::vector<bool> parse_bits(const std::string& s, int vars) {
  std::vector<bool> x;
  for (char c : s) {
    if (c == '0' || c == '1')
      x.push_back(c == '1');
    else if (c != ',' && c != ' ')
      throw CLI::ValidationError("--input", "input bits must be 0/1");
  }
  if (static_cast<int>(x.size()) != vars)
    throw CLI::ValidationError("--input", "circuit reads " + std::to_string(vars) + " variables, got " +
                                              std::to_string(x.size()) + " bits");
  return x;
}

int generate_snsat(const GenerateArgs& a, const Globals& g) {
  auto spec = parse_snsat_json(read_file(a.source));
  auto [psi, prime] = build_snsat_psi(spec, a.max_k);
  fs::create_directories(a.out);
  json list = json::array();
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const std::string p = "psi_" + std::to_string(k) + ".ctl", q = "psi_prime_" + std::to_string(k) + ".ctl";
    write_file((fs::path(a.out) / p).string(), to_string(psi[k]) + "\n");
    write_file((fs::path(a.out) / q).string(), to_string(prime[k]) + "\n");
    list.push_back({{"k", k},
                    {"psi", p},
                    {"psi_prime", q},
                    {"psi_size", psi[k].size()},
                    {"psi_prime_size", prime[k].size()},
                    {"psi_prime_profile", profile_json(profile_of(prime[k]))}});
  }
  json m = {{"format", "fragmc-snsat"},
            {"generator", "snsat-psi"},
            {"n", spec.n},
            {"source_digest", fnv1a_hex(read_file(a.source))},
            {"formulas", list}};
  write_file((fs::path(a.out) / "manifest.json").string(), m.dump(2) + "\n");
  json out = {{"generator", "snsat-psi"}, {"out", a.out}, {"formulas", psi.size()}};
  emit(out, g.indent);
  std::cerr << "wrote " << psi.size() << " formula pairs to " << a.out << "\n";
  return kTrue;
}

int cmd_generate(const GenerateArgs& a, const Globals& g) {
  const std::string& gen = a.generator;
  if (gen == "snsat-psi") return generate_snsat(a, g);
  HardnessInstance h;
  if (gen == "game-ax-ex" || gen == "game-af-eg" || gen == "game-eg") {
    auto game = parse_game_json(read_file(a.source));
    h = gen == "game-ax-ex" ? gen_game_ax_ex(game) : gen == "game-af-eg" ? gen_game_af_eg(game) : gen_game_eg_only(game);
  } else if (gen == "circuit-ex" || gen == "circuit-ef" || gen == "circuit-ax") {
    auto c = parse_netlist(read_file(a.source));
    auto x = parse_bits(a.input, c.vars);
    h = gen == "circuit-ex" ? gen_circuit_ex(c, x) : gen == "circuit-ef" ? gen_circuit_ef(c, x) : gen_circuit_ax(c, x);
  } else if (gen == "3cnf-eg" || gen == "3cnf-ef") {
    auto f = parse_dimacs(read_file(a.source));
    h = gen == "3cnf-eg" ? gen_3cnf_ctlplus_eg(f) : gen_3cnf_ctlplus_ef(f);
  } else if (gen == "ectl-lift") {
    h = to_ectl_instance(read_bundle(a.source));
  } else {
    throw CLI::ValidationError("generator", "unknown generator '" + gen + "'");
  }
  for (const auto& w : h.warnings) std::cerr << "warning: " << w << "\n";
  write_bundle(a.out, h);

  json out = {{"generator", h.provenance.generator},
              {"out", a.out},
              {"start", h.structure.name(h.start)},
              {"expected", h.expected},
              {"formula", to_string(h.formula)},
              {"states", h.structure.size()},
              {"transitions", h.structure.transition_count()},
              {"reconstructed", h.provenance.reconstructed},
              {"warnings", h.warnings},
              {"verified", nullptr}};
  int code = kTrue;
  if (a.verify) {
    const Engine e = select_engine(h.formula);
    const bool got = check_all(h.structure, h.formula, e)[h.start] != 0;
    out["verified"] = got == h.expected;
    out["engine"] = to_string(e);
    if (got != h.expected) {
      std::cerr << "verify mismatch: expected " << h.expected << ", engine " << to_string(e) << " says " << got
                << "\n";
      code = kMismatch;
    }
  }
  emit(out, g.indent);
  std::cerr << "wrote " << a.out << " (expected " << (h.expected ? "true" : "false") << ")\n";
  return code;
}

// ---- oracle ----

struct OracleArgs {
  std::string model, formula, state;
  bool no_escalate = false;
};

int cmd_oracle(const OracleArgs& a, const Globals& g) {
  KripkeStructure K = load_kripke_file(a.model, g.repair ? Totality::Repair : Totality::Require);
  StateFormula f = load_formula(a.formula);
  const State w = a.state.empty() ? 0 : K.at(a.state);
  OracleOptions o = oracle_options(g);
  o.escalate = !a.no_escalate;
  OracleStats stats;
  Stopwatch sw;
  const Truth t = eval_oracle(K, w, f, o, &stats);
  json out = {{"state", K.name(w)},
              {"truth", to_string(t)},
              {"formula", to_string(f)},
              {"timings", {{"check_ms", sw.lap()}}},
              {"counters",
               {{"searches", stats.searches},
                {"escalations", stats.escalations},
                {"indeterminate", stats.indeterminate}}}};
  emit(out, g.indent);
  std::cerr << to_string(t) << " at " << K.name(w) << " (oracle)\n";
  if (t == Truth::Unknown) return kIndeterminate;
  return t == Truth::True ? kTrue : kFalse;
}

// ---- corpus-verify ----

struct CorpusArgs {
  std::string dir;
  std::size_t oracle_limit = 64;
  unsigned jobs = 0;
};

int cmd_corpus_verify(const CorpusArgs& a, const Globals& g) {
  if (!fs::is_directory(a.dir)) throw ModelError("not a directory: " + a.dir);
  std::vector<std::string> bundles;
  for (const auto& entry : fs::recursive_directory_iterator(a.dir))
    if (entry.is_regular_file() && entry.path().filename() == "manifest.json" &&
        fs::exists(entry.path().parent_path() / "model.kripke"))
      bundles.push_back(entry.path().parent_path().string());
  std::sort(bundles.begin(), bundles.end());

  struct Row {
    std::string path, engine, error;
    bool expected = false, got = false;
    Truth oracle = Truth::Unknown;
    bool oracle_run = false;
  };
  std::vector<Row> rows(bundles.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i; (i = next++) < bundles.size();) {
      Row& r = rows[i];
      r.path = bundles[i];
      try {
        HardnessInstance h = read_bundle(bundles[i]);
        r.expected = h.expected;
        const Engine e = select_engine(h.formula);
        r.engine = to_string(e);
        r.got = check_all(h.structure, h.formula, e)[h.start] != 0;
        if (h.structure.size() <= a.oracle_limit) {
          r.oracle_run = true;
          r.oracle = eval_oracle(h.structure, h.start, h.formula, oracle_options(g));
        }
      } catch (const std::exception& ex) {
        r.error = ex.what();
      }
    }
  };
  const unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, std::max<std::size_t>(1, bundles.size())); ++t)
    pool.emplace_back(work);
  for (auto& t : pool) t.join();

  std::size_t agree = 0, oracle_checked = 0, oracle_unknown = 0;
  json mismatches = json::array(), errors = json::array();
  for (const Row& r : rows) {
    if (!r.error.empty()) {
      errors.push_back({{"path", r.path}, {"error", r.error}});
      continue;
    }
    bool ok = r.got == r.expected;
    if (r.oracle_run) {
      if (r.oracle == Truth::Unknown) {
        ++oracle_unknown;
      } else {
        ++oracle_checked;
        ok = ok && (r.oracle == Truth::True) == r.expected;
      }
    }
    if (ok) {
      ++agree;
    } else {
      mismatches.push_back({{"path", r.path},
                            {"expected", r.expected},
                            {"engine", r.engine},
                            {"engine_truth", r.got},
                            {"oracle_truth", r.oracle_run ? json(to_string(r.oracle)) : json(nullptr)}});
    }
  }
  json out = {{"dir", a.dir},
              {"instances", bundles.size()},
              {"agree", agree},
              {"mismatches", mismatches},
              {"errors", errors},
              {"oracle_checked", oracle_checked},
              {"oracle_indeterminate", oracle_unknown}};
  emit(out, g.indent);
  std::cerr << agree << "/" << bundles.size() << " instances agree";
  if (!mismatches.empty()) std::cerr << ", " << mismatches.size() << " mismatches";
  if (!errors.empty()) std::cerr << ", " << errors.size() << " unreadable";
  std::cerr << "\n";
  if (!mismatches.empty()) return kMismatch;
  return errors.empty() ? kTrue : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fragmc: fragment-aware model checker for CTL, ECTL, CTL+ and ECTL+"};
  app.set_config("--config", "", "key=value configuration file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--engine", g.engine, "auto|labelling|topdown|ctlplus|aex|oracle|propositional")
      ->capture_default_str();
  app.add_option("--oracle-cap", g.oracle_cap, "Oracle lasso bound cap (0: 4*|W|*(t+1))")
      ->envname("FRAGMC_ORACLE_CAP");
  app.add_option("--oracle-bound", g.oracle_bound, "Initial oracle lasso bound (0: default)");
  app.add_flag("--repair-totality", g.repair, "Give sink states a self-loop instead of failing");
  app.add_option("--indent", g.indent, "JSON indentation (-1: compact)")->capture_default_str();

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Model-check a formula");
  check->add_option("model", ca.model, "Model file")->required();
  check->add_option("formula", ca.formula, "Formula text, @file, or file path")->required();
  check->add_option("--state", ca.state, "State to report (default: first declared)");
  check->add_flag("--all", ca.all, "Report every state");
  check->add_option("--dot", ca.dot, "Also write the model as Graphviz DOT");

  ClassifyArgs cl;
  auto* classify_cmd = app.add_subcommand("classify", "Complexity class of a fragment");
  classify_cmd->add_option("formula", cl.formula, "Formula text, @file, or file path");
  classify_cmd->add_option("--family", cl.family, "ctl|ectl|ctlplus|ectlplus");
  classify_cmd->add_option("--ops", cl.ops, "Comma-separated operator tokens");
  classify_cmd->add_option("--discipline", cl.discipline, "mon|an|pos|full")->capture_default_str();

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Write a hardness-instance bundle");
  generate->add_option("generator", ga.generator, "Generator name")
      ->required()
      ->check(CLI::IsMember({"game-ax-ex", "game-af-eg", "game-eg", "circuit-ex", "circuit-ef", "circuit-ax",
                             "3cnf-eg", "3cnf-ef", "ectl-lift", "snsat-psi"}));
  generate->add_option("--source,-s", ga.source, "Source file (bundle directory for ectl-lift)")->required();
  generate->add_option("--out,-o", ga.out, "Output directory")->required();
  generate->add_option("--input", ga.input, "Circuit input bits, x1 first");
  generate->add_option("--max-k", ga.max_k, "Last psi index for snsat-psi (default 2n-1)");
  generate->add_flag("--verify", ga.verify, "Re-check the expected value with the selected engine");

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Evaluate with the brute-force reference oracle");
  oracle->add_option("model", oa.model, "Model file")->required();
  oracle->add_option("formula", oa.formula, "Formula text, @file, or file path")->required();
  oracle->add_option("--state", oa.state, "State to evaluate (default: first declared)");
  oracle->add_flag("--no-escalate", oa.no_escalate, "Answer at the initial bound only");

  CorpusArgs co;
  auto* corpus = app.add_subcommand("corpus-verify", "Re-check every bundle below a directory");
  corpus->add_option("dir", co.dir, "Corpus directory")->required();
  corpus->add_option("--oracle-limit", co.oracle_limit, "Run the oracle on structures up to this size")
      ->capture_default_str();
  corpus->add_option("--jobs,-j", co.jobs, "Worker threads (0: hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*check) return cmd_check(ca, g);
    if (*classify_cmd) return cmd_classify(cl, g);
    if (*generate) return cmd_generate(ga, g);
    if (*oracle) return cmd_oracle(oa, g);
    if (*corpus) return cmd_corpus_verify(co, g);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FragmentError& e) {
    std::cerr << "fragment error: " << e.what() << "\n";
    return kFragment;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kUsage;
  } catch (const SourceError& e) {
    std::cerr << "source error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
