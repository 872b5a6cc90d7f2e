#include "support.hpp"

#include <functional>
#include <map>

namespace fragmc::fx {

KripkeStructure random_kripke(Rng& rng, std::size_t n, const std::vector<std::string>& props, std::size_t max_out) {
  KripkeBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_state("s" + std::to_string(i));
  for (const auto& p : props) b.declare_prop(p);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1), deg(1, max_out);
  std::bernoulli_distribution coin(0.5);
  for (State s = 0; s < n; ++s) {
    const std::size_t d = deg(rng);
    for (std::size_t k = 0; k < d; ++k) b.add_transition(s, static_cast<State>(pick(rng)));
    for (const auto& p : props)
      if (coin(rng)) b.add_label(s, p);
  }
  return b.build();
}

namespace {

struct Gen {
  Rng& rng;
  const GenOptions& o;

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng); }

  StateFormula leaf() {
    const std::size_t r = below(10);
    StateFormula f = r == 0 ? top() : r == 1 ? bottom() : atom(o.atoms[below(o.atoms.size())]);
    if (f.kind() == Kind::Atom && o.discipline != Discipline::Mon && chance(0.3)) f = negate(f);
    return f;
  }

  // Quantifier-free formula; negations anywhere unless mon/an.
  StateFormula propositional(int d) {
    if (d == 0 || chance(0.5)) return leaf();
    StateFormula a = propositional(d - 1), b = propositional(d - 1);
    StateFormula f = chance(0.5) ? conj(a, b) : disj(a, b);
    if (o.discipline >= Discipline::Pos && chance(0.2)) f = negate(f);
    return f;
  }

  StateFormula state(int d) {
    if (d == 0) return propositional(1);
    const std::size_t r = below(10);
    StateFormula f = r < 2 ? (chance(0.5) ? conj(state(d - 1), state(d - 1)) : disj(state(d - 1), state(d - 1)))
                     : r < 3 ? propositional(1)
                             : quantified(d);
    if (o.discipline == Discipline::Full && chance(0.2)) f = negate(f);
    return f;
  }

  PathFormula e(int d) { return embed(state(d - 1)); }

  StateFormula quantified(int d) {
    if (o.ops.empty()) return propositional(1);
    if (!o.plus) {
      const std::string& tok = o.ops[below(o.ops.size())];
      const bool ex = tok[0] == 'E';
      const std::string t = tok.substr(1);
      PathFormula body = temporal(t, d, [&] { return e(d); });
      return ex ? exists(body) : forall(body);
    }
    const std::string& q = o.quantifiers[below(o.quantifiers.size())];
    PathFormula body = plus_body(d, o.path_depth);
    return q == "E" ? exists(body) : forall(body);
  }

  PathFormula temporal(const std::string& t, int, const std::function<PathFormula()>& arg) {
    if (t == "X") return next(arg());
    if (t == "F") return eventually(arg());
    if (t == "G") return always(arg());
    if (t == "Fi") return inf_often(arg());
    if (t == "Gi") return almost_always(arg());
    PathFormula a = arg(), b = arg();
    if (t == "U") return until(a, b);
    return release(a, b);
  }

  // Boolean combinations of temporal operators over embedded formulas; X may
  // nest a further plus body.
  PathFormula plus_body(int d, int pd) {
    const std::size_t r = below(10);
    if (pd > 0 && r < 3) {
      PathFormula a = plus_body(d, pd - 1), b = plus_body(d, pd - 1);
      return chance(0.5) ? conj(a, b) : disj(a, b);
    }
    if (pd > 0 && r < 4 && o.discipline == Discipline::Full) return negate(plus_body(d, pd - 1));
    if (r < 5) return e(d);
    const std::string& t = o.ops[below(o.ops.size())];
    if (t == "X" && pd > 0 && chance(0.5)) return next(plus_body(d, pd - 1));
    return temporal(t, d, [&] { return e(d); });
  }
};

}  // namespace

StateFormula random_formula(Rng& rng, const GenOptions& opts) {
  Gen g{rng, opts};
  return g.state(opts.depth);
}

std::vector<std::vector<char>> naive_reach(const KripkeStructure& K) {
  const std::size_t n = K.size();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (State s = 0; s < n; ++s) {
    r[s][s] = 1;
    for (State t : K.successors(s)) r[s][t] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = 1;
  return r;
}

namespace {

// Truth of a path formula at each position of a lasso of length L whose last
// position wraps to `loop`.
std::vector<char> positions(const PathFormula& f, const std::vector<State>& word, std::size_t loop,
                            const std::function<bool(const StateFormula&, State)>& embed) {
  const std::size_t L = word.size();
  auto nx = [&](std::size_t i) { return i + 1 < L ? i + 1 : loop; };
  std::vector<char> out(L, 0);
  switch (f.kind()) {
    case Kind::Embed:
      for (std::size_t i = 0; i < L; ++i) out[i] = embed(f.state(), word[i]);
      return out;
    case Kind::PathNot: {
      auto a = positions(f.lhs(), word, loop, embed);
      for (std::size_t i = 0; i < L; ++i) out[i] = !a[i];
      return out;
    }
    case Kind::PathAnd:
    case Kind::PathOr: {
      auto a = positions(f.lhs(), word, loop, embed);
      auto b = positions(f.rhs(), word, loop, embed);
      for (std::size_t i = 0; i < L; ++i) out[i] = f.kind() == Kind::PathAnd ? (a[i] && b[i]) : (a[i] || b[i]);
      return out;
    }
    case Kind::Next: {
      auto a = positions(f.lhs(), word, loop, embed);
      for (std::size_t i = 0; i < L; ++i) out[i] = a[nx(i)];
      return out;
    }
    case Kind::InfOften:
    case Kind::AlmostAlways: {
      auto a = positions(f.lhs(), word, loop, embed);
      bool any = false, all = true;
      for (std::size_t i = loop; i < L; ++i) {
        any = any || a[i];
        all = all && a[i];
      }
      std::fill(out.begin(), out.end(), f.kind() == Kind::InfOften ? any : all);
      return out;
    }
    default:
      break;
  }
  // F, G, U, R: iterate the unfolding from the appropriate extreme.
  std::vector<char> a, b;
  Kind k = f.kind();
  if (k == Kind::Future || k == Kind::Globally) {
    a = positions(f.lhs(), word, loop, embed);
  } else {
    a = positions(f.lhs(), word, loop, embed);
    b = positions(f.rhs(), word, loop, embed);
  }
  const bool greatest = k == Kind::Globally || k == Kind::Release;
  std::fill(out.begin(), out.end(), greatest ? 1 : 0);
  for (std::size_t round = 0; round <= L + 1; ++round) {
    for (std::size_t j = L; j-- > 0;) {
      const bool n = out[nx(j)];
      switch (k) {
        case Kind::Future:
          out[j] = a[j] || n;
          break;
        case Kind::Globally:
          out[j] = a[j] && n;
          break;
        case Kind::Until:
          out[j] = b[j] || (a[j] && n);
          break;
        default:
          out[j] = b[j] && (a[j] || n);
          break;
      }
    }
  }
  return out;
}

}  // namespace

bool naive_on_lasso(const KripkeStructure&, const std::vector<State>& prefix, const std::vector<State>& cycle,
                    const PathFormula& chi, const std::function<bool(const StateFormula&, State)>& embed) {
  std::vector<State> word = prefix;
  word.insert(word.end(), cycle.begin(), cycle.end());
  return positions(chi, word, prefix.size(), embed)[0] != 0;
}

std::vector<char> naive_exists(const KripkeStructure& K, const PathFormula& chi, std::size_t max_len,
                               const std::function<bool(const StateFormula&, State)>& embed) {
  std::vector<char> out(K.size(), 0);
  std::vector<State> word;
  std::function<bool()> extend = [&]() -> bool {
    // Try closing the current word into every possible loop.
    const State last = word.back();
    for (std::size_t loop = 0; loop < word.size(); ++loop) {
      if (!K.has_edge(last, word[loop])) continue;
      std::vector<State> prefix(word.begin(), word.begin() + loop), cycle(word.begin() + loop, word.end());
      if (naive_on_lasso(K, prefix, cycle, chi, embed)) return true;
    }
    if (word.size() >= max_len) return false;
    for (State t : K.successors(last)) {
      word.push_back(t);
      const bool r = extend();
      word.pop_back();
      if (r) return true;
    }
    return false;
  };
  for (State w = 0; w < K.size(); ++w) {
    word = {w};
    out[w] = extend();
  }
  return out;
}

std::vector<char> naive_eval(const KripkeStructure& K, const StateFormula& f, std::size_t max_len) {
  std::map<const detail::Node*, std::vector<char>> cache;
  std::vector<StateFormula> alive;  // keeps cached node addresses from being reused
  std::function<const std::vector<char>&(const StateFormula&)> ev = [&](const StateFormula& g) -> const std::vector<char>& {
    if (auto it = cache.find(g.node()); it != cache.end()) return it->second;
    const std::size_t n = K.size();
    std::vector<char> out(n, 0);
    switch (g.kind()) {
      case Kind::True:
        out.assign(n, 1);
        break;
      case Kind::False:
        break;
      case Kind::Atom:
        for (State s = 0; s < n; ++s) out[s] = K.holds(s, g.atom_name());
        break;
      case Kind::Not: {
        const auto& a = ev(g.lhs());
        for (State s = 0; s < n; ++s) out[s] = !a[s];
        break;
      }
      case Kind::And:
      case Kind::Or: {
        std::vector<char> a = ev(g.lhs());
        const auto& b = ev(g.rhs());
        for (State s = 0; s < n; ++s) out[s] = g.kind() == Kind::And ? (a[s] && b[s]) : (a[s] || b[s]);
        break;
      }
      case Kind::Exists:
      case Kind::Forall: {
        auto embed = [&](const StateFormula& e, State s) { return ev(e)[s] != 0; };
        const PathFormula body = g.kind() == Kind::Exists ? g.path() : negate(g.path());
        out = naive_exists(K, body, max_len, embed);
        if (g.kind() == Kind::Forall)
          for (auto& x : out) x = !x;
        break;
      }
      default:
        break;
    }
    alive.push_back(g);
    return cache.emplace(g.node(), std::move(out)).first->second;
  };
  return ev(f);
}

}  // namespace fragmc::fx
