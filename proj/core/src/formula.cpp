#include "fragmc/formula.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace fragmc {

bool is_state_kind(Kind k) { return k <= Kind::Forall; }

bool is_temporal_kind(Kind k) { return k >= Kind::Next; }

namespace detail {

bool deep_equal(const Node& a, const Node& b) {
  if (&a == &b) return true;
  if (a.hash != b.hash || a.kind != b.kind || a.size != b.size || a.name != b.name) return false;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !deep_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !deep_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

}  // namespace detail

namespace {

using detail::Node;
using detail::NodePtr;

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

NodePtr make(Kind kind, std::string name, NodePtr lhs, NodePtr rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  std::size_t h = mix(0x51ed27u, static_cast<std::size_t>(kind));
  if (!node->name.empty()) h = mix(h, std::hash<std::string>{}(node->name));
  std::size_t size = kind == Kind::Embed ? 0 : 1;
  std::size_t depth = 0;
  if (lhs) {
    h = mix(h, lhs->hash);
    size += lhs->size;
    depth = std::max(depth, lhs->depth);
  }
  if (rhs) {
    h = mix(h, rhs->hash);
    size += rhs->size;
    depth = std::max(depth, rhs->depth);
  }
  if (lhs && kind != Kind::Embed) ++depth;
  node->hash = h;
  node->size = size;
  node->depth = depth;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

const NodePtr& true_node() {
  static const NodePtr n = make(Kind::True, "", nullptr, nullptr);
  return n;
}

const NodePtr& false_node() {
  static const NodePtr n = make(Kind::False, "", nullptr, nullptr);
  return n;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"true", "false", "A",   "E",   "X",   "F",   "G",   "U",
                                          "R",    "Fi",    "Gi",  "AX",  "EX",  "AF",  "EF",  "AG",
                                          "EG",   "AFi",   "EFi", "AGi", "EGi"};
  return k;
}

}  // namespace

StateFormula top() { return StateFormula(true_node()); }
StateFormula bottom() { return StateFormula(false_node()); }
StateFormula atom(std::string name) { return StateFormula(make(Kind::Atom, std::move(name), nullptr, nullptr)); }
StateFormula negate(StateFormula f) { return StateFormula(make(Kind::Not, "", f.ptr(), nullptr)); }
StateFormula conj(StateFormula a, StateFormula b) { return StateFormula(make(Kind::And, "", a.ptr(), b.ptr())); }
StateFormula disj(StateFormula a, StateFormula b) { return StateFormula(make(Kind::Or, "", a.ptr(), b.ptr())); }
StateFormula exists(PathFormula body) { return StateFormula(make(Kind::Exists, "", body.ptr(), nullptr)); }
StateFormula forall(PathFormula body) { return StateFormula(make(Kind::Forall, "", body.ptr(), nullptr)); }

PathFormula embed(StateFormula f) { return PathFormula(make(Kind::Embed, "", f.ptr(), nullptr)); }

PathFormula negate(PathFormula f) {
  if (f.kind() == Kind::Embed) return embed(negate(f.state()));
  return PathFormula(make(Kind::PathNot, "", f.ptr(), nullptr));
}

PathFormula conj(PathFormula a, PathFormula b) {
  if (a.kind() == Kind::Embed && b.kind() == Kind::Embed) return embed(conj(a.state(), b.state()));
  return PathFormula(make(Kind::PathAnd, "", a.ptr(), b.ptr()));
}

PathFormula disj(PathFormula a, PathFormula b) {
  if (a.kind() == Kind::Embed && b.kind() == Kind::Embed) return embed(disj(a.state(), b.state()));
  return PathFormula(make(Kind::PathOr, "", a.ptr(), b.ptr()));
}

PathFormula next(PathFormula f) { return PathFormula(make(Kind::Next, "", f.ptr(), nullptr)); }
PathFormula eventually(PathFormula f) { return PathFormula(make(Kind::Future, "", f.ptr(), nullptr)); }
PathFormula always(PathFormula f) { return PathFormula(make(Kind::Globally, "", f.ptr(), nullptr)); }
PathFormula until(PathFormula a, PathFormula b) { return PathFormula(make(Kind::Until, "", a.ptr(), b.ptr())); }
PathFormula release(PathFormula a, PathFormula b) {
  return PathFormula(make(Kind::Release, "", a.ptr(), b.ptr()));
}
PathFormula inf_often(PathFormula f) { return PathFormula(make(Kind::InfOften, "", f.ptr(), nullptr)); }
PathFormula almost_always(PathFormula f) { return PathFormula(make(Kind::AlmostAlways, "", f.ptr(), nullptr)); }

StateFormula implies(StateFormula a, StateFormula b) { return disj(negate(std::move(a)), std::move(b)); }
PathFormula implies(PathFormula a, PathFormula b) { return disj(negate(std::move(a)), std::move(b)); }

StateFormula conj_all(const std::vector<StateFormula>& fs) {
  if (fs.empty()) return top();
  StateFormula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

StateFormula disj_all(const std::vector<StateFormula>& fs) {
  if (fs.empty()) return bottom();
  StateFormula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

PathFormula conj_all(const std::vector<PathFormula>& fs) {
  if (fs.empty()) return embed(top());
  PathFormula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

PathFormula disj_all(const std::vector<PathFormula>& fs) {
  if (fs.empty()) return embed(bottom());
  PathFormula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

bool is_plain_identifier(const std::string& name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name[0])) return false;
  for (char c : name)
    if (!alpha(c) && !digit(c)) return false;
  return keywords().count(name) == 0;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Prec { kOr = 1, kAnd = 2, kPrefix = 3, kAtomic = 4 };

int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::Or:
    case Kind::PathOr:
      return kOr;
    case Kind::And:
    case Kind::PathAnd:
      return kAnd;
    case Kind::Not:
    case Kind::PathNot:
    case Kind::Exists:
    case Kind::Forall:
    case Kind::Next:
    case Kind::Future:
    case Kind::Globally:
    case Kind::InfOften:
    case Kind::AlmostAlways:
      return kPrefix;
    case Kind::Embed:
      return precedence(*n.lhs);
    default:
      return kAtomic;
  }
}

const char* unary_token(Kind k) {
  switch (k) {
    case Kind::Next:
      return "X";
    case Kind::Future:
      return "F";
    case Kind::Globally:
      return "G";
    case Kind::InfOften:
      return "Fi";
    case Kind::AlmostAlways:
      return "Gi";
    default:
      return "?";
  }
}

void print(std::ostream& os, const Node& n, int min_prec);

void print_atom(std::ostream& os, const std::string& name) {
  if (is_plain_identifier(name)) {
    os << name;
    return;
  }
  os << '"';
  for (char c : name) {
    if (c == '"' || c == '\\') os << '\\';
    os << c;
  }
  os << '"';
}

void print_body(std::ostream& os, const Node& n) {
  switch (n.kind) {
    case Kind::Or:
    case Kind::PathOr:
      print(os, *n.lhs, kOr);
      os << " | ";
      print(os, *n.rhs, kAnd);
      return;
    case Kind::And:
    case Kind::PathAnd:
      print(os, *n.lhs, kAnd);
      os << " & ";
      print(os, *n.rhs, kPrefix);
      return;
    case Kind::Not:
    case Kind::PathNot:
      os << '~';
      print(os, *n.lhs, kPrefix);
      return;
    case Kind::True:
      os << "true";
      return;
    case Kind::False:
      os << "false";
      return;
    case Kind::Atom:
      print_atom(os, n.name);
      return;
    case Kind::Embed:
      print(os, *n.lhs, kOr);
      return;
    case Kind::Next:
    case Kind::Future:
    case Kind::Globally:
    case Kind::InfOften:
    case Kind::AlmostAlways:
      os << unary_token(n.kind) << ' ';
      print(os, *n.lhs, kPrefix);
      return;
    case Kind::Until:
    case Kind::Release:
      os << '[';
      print(os, *n.lhs, kOr);
      os << (n.kind == Kind::Until ? " U " : " R ");
      print(os, *n.rhs, kOr);
      os << ']';
      return;
    case Kind::Exists:
    case Kind::Forall: {
      os << (n.kind == Kind::Exists ? 'E' : 'A');
      const Node& body = *n.lhs;
      switch (body.kind) {
        case Kind::Next:
        case Kind::Future:
        case Kind::Globally:
        case Kind::InfOften:
        case Kind::AlmostAlways:
          os << unary_token(body.kind) << ' ';
          print(os, *body.lhs, kPrefix);
          return;
        case Kind::Until:
        case Kind::Release:
          print_body(os, body);
          return;
        case Kind::PathAnd:
        case Kind::PathOr:
          os << '(';
          print_body(os, body);
          os << ')';
          return;
        default:
          os << ' ';
          print(os, body, kPrefix);
          return;
      }
    }
  }
}

void print(std::ostream& os, const Node& n, int min_prec) {
  if (precedence(n) < min_prec) {
    os << '(';
    print_body(os, n);
    os << ')';
  } else {
    print_body(os, n);
  }
}

}  // namespace

std::string to_string(const StateFormula& f) {
  std::ostringstream os;
  print(os, *f.node(), kOr);
  return os.str();
}

std::string to_string(const PathFormula& f) {
  std::ostringstream os;
  print(os, *f.node(), kOr);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const StateFormula& f) { return os << to_string(f); }
std::ostream& operator<<(std::ostream& os, const PathFormula& f) { return os << to_string(f); }

// ---------------------------------------------------------------------------

namespace {

void collect_atoms(const Node& n, std::set<std::string>& out) {
  if (n.kind == Kind::Atom) out.insert(n.name);
  if (n.lhs) collect_atoms(*n.lhs, out);
  if (n.rhs) collect_atoms(*n.rhs, out);
}

std::size_t count_temporal(const Node& n) {
  if (n.kind == Kind::Embed) return 0;
  std::size_t c = is_temporal_kind(n.kind) ? 1 : 0;
  if (n.lhs) c += count_temporal(*n.lhs);
  if (n.rhs) c += count_temporal(*n.rhs);
  return c;
}

NodePtr rebuild(const NodePtr& n, const std::function<StateFormula(const std::string&)>& rename) {
  switch (n->kind) {
    case Kind::Atom:
      return rename(n->name).ptr();
    case Kind::True:
    case Kind::False:
      return n;
    case Kind::Not:
      return negate(StateFormula(rebuild(n->lhs, rename))).ptr();
    case Kind::And:
      return conj(StateFormula(rebuild(n->lhs, rename)), StateFormula(rebuild(n->rhs, rename))).ptr();
    case Kind::Or:
      return disj(StateFormula(rebuild(n->lhs, rename)), StateFormula(rebuild(n->rhs, rename))).ptr();
    case Kind::Exists:
      return exists(PathFormula(rebuild(n->lhs, rename))).ptr();
    case Kind::Forall:
      return forall(PathFormula(rebuild(n->lhs, rename))).ptr();
    case Kind::Embed:
      return embed(StateFormula(rebuild(n->lhs, rename))).ptr();
    case Kind::PathNot:
      return negate(PathFormula(rebuild(n->lhs, rename))).ptr();
    case Kind::PathAnd:
      return conj(PathFormula(rebuild(n->lhs, rename)), PathFormula(rebuild(n->rhs, rename))).ptr();
    case Kind::PathOr:
      return disj(PathFormula(rebuild(n->lhs, rename)), PathFormula(rebuild(n->rhs, rename))).ptr();
    default:
      return make(n->kind, "", n->lhs ? rebuild(n->lhs, rename) : nullptr,
                  n->rhs ? rebuild(n->rhs, rename) : nullptr);
  }
}

}  // namespace

std::vector<std::string> atoms_of(const StateFormula& f) {
  std::set<std::string> out;
  collect_atoms(*f.node(), out);
  return {out.begin(), out.end()};
}

std::size_t temporal_count(const PathFormula& f) { return count_temporal(*f.node()); }

StateFormula map_atoms(const StateFormula& f, const std::function<StateFormula(const std::string&)>& rename) {
  return StateFormula(rebuild(f.ptr(), rename));
}

PathFormula map_atoms(const PathFormula& f, const std::function<StateFormula(const std::string&)>& rename) {
  return PathFormula(rebuild(f.ptr(), rename));
}

}  // namespace fragmc
