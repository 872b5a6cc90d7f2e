#include "fragmc/classifier.hpp"

#include <algorithm>

#include "fragmc/engines.hpp"
#include "fragmc/errors.hpp"

namespace fragmc {
namespace {

bool within(const OperatorSet& t, const OperatorSet& allowed) {
  return std::includes(allowed.begin(), allowed.end(), t.begin(), t.end());
}

std::string join(const OperatorSet& t) {
  std::string s = "{";
  for (const auto& op : t) s += (s.size() > 1 ? "," : "") + op;
  return s + "}";
}

// Fi -> F and Gi -> G inside each token.
OperatorSet normalize(const OperatorSet& t) {
  OperatorSet out;
  for (std::string op : t) {
    if (op.size() >= 2 && op.back() == 'i') op.pop_back();
    out.insert(op);
  }
  return out;
}

void check_tokens(const OperatorSet& t, const std::vector<std::string>& allowed, const std::string& family) {
  for (const auto& op : t)
    if (std::find(allowed.begin(), allowed.end(), op) == allowed.end())
      throw FragmentError("operator '" + op + "' does not belong to a " + family + " profile");
}

ComplexityVerdict ctl_case(const OperatorSet& t, Discipline d) {
  ComplexityVerdict v;
  if (d == Discipline::Full) {
    v.theorem = "Thm 3.1";
    if (t.empty()) {
      v.cls = ComplexityClass::NC1;
      v.rule = "T is empty";
    } else {
      v.cls = ComplexityClass::P;
      v.rule = "T is nonempty and negation is unrestricted";
    }
    return v;
  }
  v.theorem = d == Discipline::Pos ? "Thm 3.2" : "Thm 3.4";
  if (t.empty()) {
    v.cls = ComplexityClass::NC1;
    v.rule = "T is empty";
  } else if (within(t, {"EX", "EF"})) {
    v.cls = ComplexityClass::LOGCFL;
    v.rule = "T is a nonempty subset of {EX,EF}";
  } else if (within(t, {"AX", "AG"})) {
    v.cls = ComplexityClass::LOGCFL;
    v.rule = "T is a nonempty subset of {AX,AG}";
  } else {
    v.cls = ComplexityClass::P;
    v.rule = "T is contained in neither {EX,EF} nor {AX,AG}";
  }
  return v;
}

ComplexityVerdict plus_case(const OperatorSet& t, Discipline d) {
  ComplexityVerdict v;
  const bool e = t.count("E"), a = t.count("A");
  if (!e && !a) throw FragmentError("a CTL+ profile needs at least one path quantifier");
  bool pure = false;  // a pure temporal operator other than X; U and R count
  for (const char* op : {"F", "G", "U", "R"}) pure = pure || t.count(op);
  if (within(t, {"A", "E"})) {
    v.cls = ComplexityClass::NC1;
    v.rule = "T is a subset of {A,E}";
  } else if (d == Discipline::Full) {
    if (within(t, {"A", "E", "X"})) {
      v.cls = ComplexityClass::P;
      v.rule = "{X} is a proper subset of T and T is a subset of {A,E,X}";
    } else {
      v.cls = ComplexityClass::DeltaP2;
      v.rule = "T contains a quantifier and one of F, G, U, R";
    }
  } else if (t == OperatorSet{"A", "X"} || t == OperatorSet{"E", "X"}) {
    v.cls = ComplexityClass::LOGCFL;
    v.rule = "T is {A,X} or {E,X}";
  } else if (t == OperatorSet{"A", "E", "X"}) {
    v.cls = ComplexityClass::P;
    v.rule = "T is {A,E,X}";
  } else if (e && !a && pure) {
    v.cls = ComplexityClass::NP;
    v.rule = "E in T, A not in T, and T has a pure temporal operator besides X (U and R count as pure)";
  } else if (a && !e && pure) {
    v.cls = ComplexityClass::coNP;
    v.rule = "A in T, E not in T, and T has a pure temporal operator besides X (U and R count as pure)";
  } else {
    v.cls = ComplexityClass::DeltaP2;
    v.rule = "A and E in T together with a pure temporal operator besides X";
  }
  v.theorem = d == Discipline::Full ? "Thm 4.2" : "Thm 4.3";
  return v;
}

}  // namespace

std::string to_string(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::NC1:
      return "NC1";
    case ComplexityClass::LOGCFL:
      return "LOGCFL";
    case ComplexityClass::P:
      return "P";
    case ComplexityClass::NP:
      return "NP";
    case ComplexityClass::coNP:
      return "coNP";
    case ComplexityClass::DeltaP2:
      return "DeltaP2";
  }
  return "?";
}

int rank(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::NC1:
      return 0;
    case ComplexityClass::LOGCFL:
      return 1;
    case ComplexityClass::P:
      return 2;
    case ComplexityClass::NP:
    case ComplexityClass::coNP:
      return 3;
    case ComplexityClass::DeltaP2:
      return 4;
  }
  return -1;
}

const std::vector<std::string>& ctl_operator_tokens() {
  static const std::vector<std::string> t{"AX", "EX", "AF", "EF", "AG", "EG", "AU", "EU", "AR", "ER"};
  return t;
}

const std::vector<std::string>& ectl_operator_tokens() {
  static const std::vector<std::string> t{"AFi", "EFi", "AGi", "EGi"};
  return t;
}

const std::vector<std::string>& plus_operator_tokens() {
  static const std::vector<std::string> t{"A", "E", "X", "F", "G", "U", "R", "Fi", "Gi"};
  return t;
}

ComplexityVerdict classify(const FragmentProfile& profile) {
  const OperatorSet& t = profile.operators;
  const Discipline d = profile.discipline;
  ComplexityVerdict v;
  switch (profile.family) {
    case Family::Propositional:
      if (!t.empty()) throw FragmentError("a propositional profile has no operators");
      v = ctl_case(t, d);
      break;
    case Family::CTL:
      check_tokens(t, ctl_operator_tokens(), "CTL");
      v = ctl_case(t, d);
      break;
    case Family::ECTL: {
      std::vector<std::string> allowed = ctl_operator_tokens();
      allowed.insert(allowed.end(), ectl_operator_tokens().begin(), ectl_operator_tokens().end());
      check_tokens(t, allowed, "ECTL");
      const OperatorSet n = normalize(t);
      v = ctl_case(n, d);
      v.rule = "after replacing Fi by F and Gi by G, T' = " + join(n) + ": " + v.rule;
      v.theorem = "Thm 4.1";
      break;
    }
    case Family::CTLplus: {
      const auto& all = plus_operator_tokens();
      check_tokens(t, {all.begin(), all.begin() + 7}, "CTL+");
      v = plus_case(t, d);
      break;
    }
    case Family::ECTLplus: {
      check_tokens(t, plus_operator_tokens(), "ECTL+");
      const OperatorSet n = normalize(t);
      v = plus_case(n, d);
      v.rule = "after replacing Fi by F and Gi by G, T' = " + join(n) + ": " + v.rule;
      v.theorem = "Cor 4.4";
      break;
    }
    case Family::CTLstar:
      throw FragmentError("CTL* profiles are not classified");
  }

  // Recommended engine, mirroring select_engine.
  const bool plus = profile.family == Family::CTLplus || profile.family == Family::ECTLplus;
  if (t.empty()) {
    v.engine = to_string(Engine::Propositional);
  } else if (!plus) {
    const bool topdown = d != Discipline::Full && (within(t, {"EX", "EF", "EFi"}) || within(t, {"AX", "AG", "AGi"}));
    v.engine = to_string(topdown ? Engine::TopDown : Engine::Labelling);
  } else {
    v.engine = to_string(within(t, {"A", "E", "X"}) ? Engine::CtlplusAex : Engine::CtlplusGeneral);
  }
  return v;
}

ComplexityVerdict classify_formula(const StateFormula& f) {
  const FragmentProfile p = profile_of(f);
  if (p.family == Family::CTLstar) throw FragmentError("formula is outside ECTL+: " + to_string(f));
  return classify(p);
}

}  // namespace fragmc
