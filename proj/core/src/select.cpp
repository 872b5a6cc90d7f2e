#include <stdexcept>

#include "fragmc/engines.hpp"
#include "fragmc/syntax.hpp"

namespace fragmc {
namespace {

bool subset_of(const OperatorSet& ops, std::initializer_list<const char*> allowed) {
  for (const auto& op : ops) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || op == a;
    if (!ok) return false;
  }
  return true;
}

bool topdown_accepts(const StateFormula& f) {
  const Family fam = syntactic_class(f);
  if (fam != Family::Propositional && fam != Family::CTL && fam != Family::ECTL) return false;
  if (negation_discipline(f) > Discipline::Pos) return false;
  const OperatorSet ops = paired_operators(f);
  return subset_of(ops, {"EX", "EF", "EFi"}) || subset_of(ops, {"AX", "AG", "AGi"});
}

}  // namespace

std::string to_string(Engine e) {
  switch (e) {
    case Engine::Propositional:
      return "propositional";
    case Engine::TopDown:
      return "topdown";
    case Engine::Labelling:
      return "labelling";
    case Engine::CtlplusAex:
      return "ctlplus-aex";
    case Engine::CtlplusGeneral:
      return "ctlplus-general";
    case Engine::Oracle:
      return "oracle";
  }
  return "?";
}

std::optional<Engine> parse_engine(const std::string& s) {
  for (Engine e : {Engine::Propositional, Engine::TopDown, Engine::Labelling, Engine::CtlplusAex,
                   Engine::CtlplusGeneral, Engine::Oracle})
    if (s == to_string(e)) return e;
  if (s == "ctlplus") return Engine::CtlplusGeneral;
  if (s == "aex") return Engine::CtlplusAex;
  return std::nullopt;
}

Engine select_engine(const StateFormula& f) {
  const Family fam = syntactic_class(f);
  if (fam == Family::Propositional) return Engine::Propositional;
  if (topdown_accepts(f)) return Engine::TopDown;
  if (fam == Family::CTL || fam == Family::ECTL) return Engine::Labelling;
  if (fam == Family::CTLplus || fam == Family::ECTLplus) {
    if (subset_of(separate_operators(f), {"A", "E", "X"})) return Engine::CtlplusAex;
    return Engine::CtlplusGeneral;
  }
  throw FragmentError("formula is outside ECTL+: " + to_string(f));
}

void require_engine_accepts(Engine e, const StateFormula& f) {
  const Family fam = syntactic_class(f);
  switch (e) {
    case Engine::Propositional:
      if (fam != Family::Propositional) throw FragmentError("propositional engine needs a quantifier-free formula");
      return;
    case Engine::TopDown:
      if (!topdown_accepts(f))
        throw FragmentError("top-down engine needs a positive formula over {EX, EF, EFi} or {AX, AG, AGi}");
      return;
    case Engine::Labelling:
      if (fam != Family::Propositional && fam != Family::CTL && fam != Family::ECTL)
        throw FragmentError("labelling engine needs a CTL or ECTL formula, got " + to_string(fam));
      return;
    case Engine::CtlplusAex:
      if (fam == Family::CTLstar) throw FragmentError("formula is outside ECTL+");
      if (!subset_of(separate_operators(f), {"A", "E", "X"}))
        throw FragmentError("A/E/X engine needs operator tokens within {A, E, X}");
      return;
    case Engine::CtlplusGeneral:
      if (fam == Family::CTLstar) throw FragmentError("formula is outside ECTL+");
      return;
    case Engine::Oracle:
      return;
  }
}

std::vector<char> check_all(const KripkeStructure& K, const StateFormula& f, Engine e) {
  require_engine_accepts(e, f);
  switch (e) {
    case Engine::Propositional:
      return evaluate_propositional(K, f);
    case Engine::TopDown: {
      TopDownChecker c(K, f);
      std::vector<char> out(K.size(), 0);
      for (State w = 0; w < K.size(); ++w) out[w] = c.check(w);
      return out;
    }
    case Engine::Labelling:
      return check_ctl(K, f).result();
    case Engine::CtlplusAex:
      return check_ctlplus_aex(K, f).result();
    case Engine::CtlplusGeneral:
      return check_ctlplus_general(K, f).result();
    case Engine::Oracle: {
      const auto t = eval_oracle_all(K, f);
      std::vector<char> out(K.size(), 0);
      for (State w = 0; w < K.size(); ++w) out[w] = t[w] == Truth::True;
      return out;
    }
  }
  throw std::logic_error("unknown engine");
}

std::vector<char> check_all(const KripkeStructure& K, const StateFormula& f) {
  return check_all(K, f, select_engine(f));
}

}  // namespace fragmc
