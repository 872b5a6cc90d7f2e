#include "fragmc/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace fragmc {

using detail::Node;
using detail::NodePtr;

namespace {

const char* temporal_token(Kind k) {
  switch (k) {
    case Kind::Next:
      return "X";
    case Kind::Future:
      return "F";
    case Kind::Globally:
      return "G";
    case Kind::Until:
      return "U";
    case Kind::Release:
      return "R";
    case Kind::InfOften:
      return "Fi";
    case Kind::AlmostAlways:
      return "Gi";
    default:
      return nullptr;
  }
}

bool is_unary_temporal(Kind k) {
  return k == Kind::Next || k == Kind::Future || k == Kind::Globally || k == Kind::InfOften ||
         k == Kind::AlmostAlways;
}

bool is_quantifier(Kind k) { return k == Kind::Exists || k == Kind::Forall; }

template <class Fn>
void visit(const Node& n, Fn&& fn) {
  fn(n);
  if (n.lhs) visit(*n.lhs, fn);
  if (n.rhs) visit(*n.rhs, fn);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Propositional:
      return "propositional";
    case Family::CTL:
      return "CTL";
    case Family::ECTL:
      return "ECTL";
    case Family::CTLplus:
      return "CTLplus";
    case Family::ECTLplus:
      return "ECTLplus";
    case Family::CTLstar:
      return "CTLstar";
  }
  return "?";
}

std::string to_string(Discipline d) {
  switch (d) {
    case Discipline::Mon:
      return "mon";
    case Discipline::An:
      return "an";
    case Discipline::Pos:
      return "pos";
    case Discipline::Full:
      return "full";
  }
  return "?";
}

std::optional<Family> parse_family(const std::string& s) {
  const std::string l = lower(s);
  for (Family f : {Family::Propositional, Family::CTL, Family::ECTL, Family::CTLplus, Family::ECTLplus,
                   Family::CTLstar})
    if (lower(to_string(f)) == l) return f;
  if (l == "ctl+") return Family::CTLplus;
  if (l == "ectl+") return Family::ECTLplus;
  if (l == "ctl*") return Family::CTLstar;
  return std::nullopt;
}

std::optional<Discipline> parse_discipline(const std::string& s) {
  const std::string l = lower(s);
  for (Discipline d : {Discipline::Mon, Discipline::An, Discipline::Pos, Discipline::Full})
    if (to_string(d) == l) return d;
  return std::nullopt;
}

bool is_ctl_body(const PathFormula& body) {
  const Node& n = *body.node();
  if (is_unary_temporal(n.kind)) return n.lhs->kind == Kind::Embed;
  if (n.kind == Kind::Until || n.kind == Kind::Release)
    return n.lhs->kind == Kind::Embed && n.rhs->kind == Kind::Embed;
  return false;
}

bool is_ctlplus_body(const PathFormula& body) {
  const Node& n = *body.node();
  switch (n.kind) {
    case Kind::Embed:
      return true;
    case Kind::PathNot:
      return is_ctlplus_body(body.lhs());
    case Kind::PathAnd:
    case Kind::PathOr:
      return is_ctlplus_body(body.lhs()) && is_ctlplus_body(body.rhs());
    case Kind::Next:
      return is_ctlplus_body(body.lhs());
    default:
      return is_ctl_body(body);
  }
}

Family syntactic_class(const StateFormula& f) {
  bool quant = false, plus = false, star = false, inf = false;
  visit(*f.node(), [&](const Node& n) {
    if (n.kind == Kind::InfOften || n.kind == Kind::AlmostAlways) inf = true;
    if (!is_quantifier(n.kind)) return;
    quant = true;
    PathFormula body(n.lhs);
    if (is_ctl_body(body)) return;
    if (is_ctlplus_body(body))
      plus = true;
    else
      star = true;
  });
  if (star) return Family::CTLstar;
  if (plus) return inf ? Family::ECTLplus : Family::CTLplus;
  if (quant) return inf ? Family::ECTL : Family::CTL;
  return Family::Propositional;
}

OperatorSet paired_operators(const StateFormula& f) {
  OperatorSet out;
  visit(*f.node(), [&](const Node& n) {
    if (!is_quantifier(n.kind)) return;
    const char* op = temporal_token(n.lhs->kind);
    if (op) out.insert(std::string(n.kind == Kind::Exists ? "E" : "A") + op);
  });
  return out;
}

OperatorSet separate_operators(const StateFormula& f) {
  OperatorSet out;
  visit(*f.node(), [&](const Node& n) {
    if (n.kind == Kind::Exists) out.insert("E");
    if (n.kind == Kind::Forall) out.insert("A");
    if (const char* op = temporal_token(n.kind)) out.insert(op);
  });
  return out;
}

OperatorSet operator_set(const StateFormula& f) {
  switch (syntactic_class(f)) {
    case Family::Propositional:
      return {};
    case Family::CTL:
    case Family::ECTL:
      return paired_operators(f);
    default:
      return separate_operators(f);
  }
}

Discipline negation_discipline(const StateFormula& f) {
  Discipline d = Discipline::Mon;
  // Returns whether the subtree contains a quantifier or temporal operator.
  std::function<bool(const Node&)> walk = [&](const Node& n) -> bool {
    bool modal = is_quantifier(n.kind) || is_temporal_kind(n.kind);
    if (n.lhs) modal = walk(*n.lhs) || modal;
    if (n.rhs) modal = walk(*n.rhs) || modal;
    if (n.kind == Kind::Not || n.kind == Kind::PathNot) {
      Discipline here;
      if (modal)
        here = Discipline::Full;
      else if (n.lhs->kind == Kind::Atom)
        here = Discipline::An;
      else
        here = Discipline::Pos;
      d = std::max(d, here);
    }
    return modal;
  };
  walk(*f.node());
  return d;
}

FragmentProfile profile_of(const StateFormula& f) {
  FragmentProfile p;
  p.family = syntactic_class(f);
  p.operators = operator_set(f);
  p.discipline = negation_discipline(f);
  return p;
}

namespace {

StateFormula nnf_state(const StateFormula& f, bool neg);

PathFormula nnf_path(const PathFormula& f, bool neg) {
  switch (f.kind()) {
    case Kind::Embed:
      return embed(nnf_state(f.state(), neg));
    case Kind::PathNot:
      return nnf_path(f.lhs(), !neg);
    case Kind::PathAnd:
      return neg ? disj(nnf_path(f.lhs(), true), nnf_path(f.rhs(), true))
                 : conj(nnf_path(f.lhs(), false), nnf_path(f.rhs(), false));
    case Kind::PathOr:
      return neg ? conj(nnf_path(f.lhs(), true), nnf_path(f.rhs(), true))
                 : disj(nnf_path(f.lhs(), false), nnf_path(f.rhs(), false));
    case Kind::Next:
      return next(nnf_path(f.lhs(), neg));
    case Kind::Future:
      return neg ? always(nnf_path(f.lhs(), true)) : eventually(nnf_path(f.lhs(), false));
    case Kind::Globally:
      return neg ? eventually(nnf_path(f.lhs(), true)) : always(nnf_path(f.lhs(), false));
    case Kind::InfOften:
      return neg ? almost_always(nnf_path(f.lhs(), true)) : inf_often(nnf_path(f.lhs(), false));
    case Kind::AlmostAlways:
      return neg ? inf_often(nnf_path(f.lhs(), true)) : almost_always(nnf_path(f.lhs(), false));
    case Kind::Until:
      return neg ? release(nnf_path(f.lhs(), true), nnf_path(f.rhs(), true))
                 : until(nnf_path(f.lhs(), false), nnf_path(f.rhs(), false));
    case Kind::Release:
      return neg ? until(nnf_path(f.lhs(), true), nnf_path(f.rhs(), true))
                 : release(nnf_path(f.lhs(), false), nnf_path(f.rhs(), false));
    default:
      return f;
  }
}

StateFormula nnf_state(const StateFormula& f, bool neg) {
  switch (f.kind()) {
    case Kind::True:
      return neg ? bottom() : top();
    case Kind::False:
      return neg ? top() : bottom();
    case Kind::Atom:
      return neg ? negate(f) : f;
    case Kind::Not:
      return nnf_state(f.lhs(), !neg);
    case Kind::And:
      return neg ? disj(nnf_state(f.lhs(), true), nnf_state(f.rhs(), true))
                 : conj(nnf_state(f.lhs(), false), nnf_state(f.rhs(), false));
    case Kind::Or:
      return neg ? conj(nnf_state(f.lhs(), true), nnf_state(f.rhs(), true))
                 : disj(nnf_state(f.lhs(), false), nnf_state(f.rhs(), false));
    case Kind::Exists:
      return neg ? forall(nnf_path(f.path(), true)) : exists(nnf_path(f.path(), false));
    case Kind::Forall:
      return neg ? exists(nnf_path(f.path(), true)) : forall(nnf_path(f.path(), false));
    default:
      return f;
  }
}

NodePtr retag(const NodePtr& n, const std::function<Kind(Kind)>& tag) {
  if (!n->lhs) return n;
  NodePtr l = retag(n->lhs, tag);
  NodePtr r = n->rhs ? retag(n->rhs, tag) : nullptr;
  switch (n->kind) {
    case Kind::Not:
      return negate(StateFormula(l)).ptr();
    case Kind::And:
      return conj(StateFormula(l), StateFormula(r)).ptr();
    case Kind::Or:
      return disj(StateFormula(l), StateFormula(r)).ptr();
    case Kind::Exists:
      return exists(PathFormula(l)).ptr();
    case Kind::Forall:
      return forall(PathFormula(l)).ptr();
    case Kind::Embed:
      return embed(StateFormula(l)).ptr();
    case Kind::PathNot:
      return negate(PathFormula(l)).ptr();
    case Kind::PathAnd:
      return conj(PathFormula(l), PathFormula(r)).ptr();
    case Kind::PathOr:
      return disj(PathFormula(l), PathFormula(r)).ptr();
    case Kind::Until:
      return until(PathFormula(l), PathFormula(r)).ptr();
    case Kind::Release:
      return release(PathFormula(l), PathFormula(r)).ptr();
    default:
      break;
  }
  PathFormula body(l);
  switch (tag(n->kind)) {
    case Kind::Next:
      return next(body).ptr();
    case Kind::Future:
      return eventually(body).ptr();
    case Kind::Globally:
      return always(body).ptr();
    case Kind::InfOften:
      return inf_often(body).ptr();
    default:
      return almost_always(body).ptr();
  }
}

}  // namespace

StateFormula to_nnf(const StateFormula& f) { return nnf_state(f, false); }
PathFormula to_nnf(const PathFormula& f) { return nnf_path(f, false); }

StateFormula lift_to_ectl(const StateFormula& f) {
  return StateFormula(retag(f.ptr(), [](Kind k) {
    if (k == Kind::Future) return Kind::InfOften;
    if (k == Kind::Globally) return Kind::AlmostAlways;
    return k;
  }));
}

StateFormula lower_from_ectl(const StateFormula& f) {
  return StateFormula(retag(f.ptr(), [](Kind k) {
    if (k == Kind::InfOften) return Kind::Future;
    if (k == Kind::AlmostAlways) return Kind::Globally;
    return k;
  }));
}

bool has_future_or_globally(const StateFormula& f) {
  bool found = false;
  visit(*f.node(), [&](const Node& n) { found = found || n.kind == Kind::Future || n.kind == Kind::Globally; });
  return found;
}

std::string dual_token(const std::string& token) {
  if (token == "A") return "E";
  if (token == "E") return "A";
  std::string prefix, op = token;
  if (!token.empty() && (token[0] == 'A' || token[0] == 'E')) {
    prefix = token[0] == 'A' ? "E" : "A";
    op = token.substr(1);
  }
  static const std::pair<const char*, const char*> duals[] = {
      {"X", "X"}, {"F", "G"}, {"G", "F"}, {"U", "R"}, {"R", "U"}, {"Fi", "Gi"}, {"Gi", "Fi"}};
  for (auto [a, b] : duals)
    if (op == a) return prefix + b;
  return token;
}

}  // namespace fragmc
