#include <unordered_map>

#include "fragmc/engines.hpp"
#include "fragmc/syntax.hpp"

namespace fragmc {
namespace {

bool within(const OperatorSet& ops, std::initializer_list<const char*> allowed) {
  for (const auto& op : ops) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || op == a;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

struct TopDownChecker::Impl {
  const KripkeStructure& K;
  GraphIndex index;
  StateFormula formula;
  bool negated = false;
  std::unordered_map<const detail::Node*, std::size_t> ids;
  std::vector<std::vector<signed char>> memo;      // [subformula][state]
  std::vector<std::vector<signed char>> scc_memo;  // [subformula][component]
  std::size_t written = 0;

  Impl(const KripkeStructure& k, const StateFormula& f) : K(k), index(k), formula(f) {}

  std::size_t id(const detail::Node* n) {
    auto [it, fresh] = ids.emplace(n, memo.size());
    if (fresh) {
      memo.emplace_back(K.size(), -1);
      scc_memo.emplace_back();
    }
    return it->second;
  }

  bool eval(const StateFormula& f, State w) {
    const std::size_t i = id(f.node());
    signed char& slot = memo[i][w];
    if (slot >= 0) return slot != 0;
    bool r = false;
    switch (f.kind()) {
      case Kind::True:
        r = true;
        break;
      case Kind::False:
        r = false;
        break;
      case Kind::Atom:
        r = K.holds(w, f.atom_name());
        break;
      case Kind::Not:
        r = !eval(f.lhs(), w);
        break;
      case Kind::And:
        r = eval(f.lhs(), w) && eval(f.rhs(), w);
        break;
      case Kind::Or:
        r = eval(f.lhs(), w) || eval(f.rhs(), w);
        break;
      case Kind::Exists: {
        const PathFormula body = f.path();
        const StateFormula a = body.lhs().state();
        if (body.kind() == Kind::Next) {
          for (State s : K.successors(w))
            if (eval(a, s)) {
              r = true;
              break;
            }
        } else {
          r = reach_component(i, a, index.scc_of(w), body.kind() == Kind::InfOften);
        }
        break;
      }
      default:
        throw FragmentError("top-down engine: unexpected operator in " + to_string(f));
    }
    // The slot reference may be stale after recursion grew `memo`.
    memo[i][w] = r ? 1 : 0;
    ++written;
    return r;
  }

  // EF a (or EFi a when `cyclic_only`) for every state of component c: some
  // component reachable from c contains an a-state (lying on a cycle).
  bool reach_component(std::size_t i, const StateFormula& a, std::size_t c, bool cyclic_only) {
    if (scc_memo[i].empty()) scc_memo[i].assign(index.scc_count(), -1);
    if (scc_memo[i][c] >= 0) return scc_memo[i][c] != 0;
    // Iterative post-order over the condensation. Frame: component, next
    // successor position, whether the members were inspected.
    struct Frame {
      std::size_t comp, pos;
      bool started;
    };
    std::vector<Frame> stack{{c, 0, false}};
    while (!stack.empty()) {
      Frame& fr = stack.back();
      const std::size_t d = fr.comp;
      if (!fr.started) {
        fr.started = true;
        bool here = false;
        if (!cyclic_only || index.scc_cyclic(d))
          for (State s : index.members(d))
            if (eval(a, s)) {
              here = true;
              break;
            }
        if (here) {
          scc_memo[i][d] = 1;
          ++written;
          stack.pop_back();
          continue;
        }
      }
      Frame& top = stack.back();
      const auto& succ = index.scc_successors(d);
      bool found = false, descended = false;
      while (top.pos < succ.size()) {
        const std::size_t e = succ[top.pos];
        if (scc_memo[i][e] == 1) {
          found = true;
          break;
        }
        if (scc_memo[i][e] < 0) {
          stack.push_back({e, 0, false});
          descended = true;
          break;
        }
        ++top.pos;
      }
      if (descended) continue;
      scc_memo[i][d] = found ? 1 : 0;
      ++written;
      stack.pop_back();
    }
    return scc_memo[i][c] != 0;
  }
};

TopDownChecker::TopDownChecker(const KripkeStructure& K, const StateFormula& f) {
  const Family fam = syntactic_class(f);
  if (fam != Family::Propositional && fam != Family::CTL && fam != Family::ECTL)
    throw FragmentError("top-down engine needs a CTL or ECTL formula, got " + to_string(fam));
  if (negation_discipline(f) > Discipline::Pos)
    throw FragmentError("top-down engine needs a positive formula (no operator under negation)");
  const OperatorSet ops = paired_operators(f);
  if (within(ops, {"EX", "EF", "EFi"})) {
    impl_ = std::make_unique<Impl>(K, f);
  } else if (within(ops, {"AX", "AG", "AGi"})) {
    impl_ = std::make_unique<Impl>(K, to_nnf(negate(f)));
    impl_->negated = true;
  } else {
    throw FragmentError("top-down engine needs operators within {EX, EF, EFi} or within {AX, AG, AGi}");
  }
}

TopDownChecker::~TopDownChecker() = default;
TopDownChecker::TopDownChecker(TopDownChecker&&) noexcept = default;
TopDownChecker& TopDownChecker::operator=(TopDownChecker&&) noexcept = default;

bool TopDownChecker::check(State w) {
  if (w >= impl_->K.size()) throw ModelError("state out of range");
  return impl_->eval(impl_->formula, w) != impl_->negated;
}

std::size_t TopDownChecker::entries() const { return impl_->written; }

bool check_topdown_pos(const KripkeStructure& K, State w0, const StateFormula& f) {
  return TopDownChecker(K, f).check(w0);
}

}  // namespace fragmc
