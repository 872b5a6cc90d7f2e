// psi_k and its positive rewrite psi'_k over the SNSAT alphabet.

#include <algorithm>
#include <set>

#include "fragmc/errors.hpp"
#include "fragmc/reductions.hpp"
#include "json.hpp"

namespace fragmc {
namespace {

std::string idx(int i) { return std::to_string(i); }

std::string lit_atom(const SnsatLiteral& l) {
  if (!l.negated) return l.var;
  return l.var.substr(0, 1) + "b" + l.var.substr(1);
}

std::string complement_atom(SnsatLiteral l) {
  l.negated = !l.negated;
  return lit_atom(l);
}

const char* kSuffix[] = {"00", "01", "10", "11"};

struct Builder {
  const SnsatSpec& spec;
  int n;
  std::vector<std::string> phi;  // whole alphabet

  explicit Builder(const SnsatSpec& s) : spec(s), n(s.n) {
    int zmax = 0;
    for (const auto& cnf : spec.phi)
      for (const auto& clause : cnf)
        for (const auto& l : clause)
          if (l.var[0] == 'z') zmax = std::max(zmax, std::stoi(l.var.substr(1)));
    for (int i = 1; i <= n; ++i) {
      phi.push_back("x" + idx(i));
      phi.push_back("xb" + idx(i));
      phi.push_back("c" + idx(i));
      for (const char* j : kSuffix) phi.push_back(s_(i, j));
    }
    for (int i = 1; i <= zmax; ++i) {
      phi.push_back("z" + idx(i));
      phi.push_back("zb" + idx(i));
    }
  }

  static std::string s_(int i, const char* j) { return "s" + idx(i) + "^" + j; }

  // \/ (Phi \ drop)
  StateFormula all_but(const std::set<std::string>& drop) const {
    std::vector<StateFormula> out;
    for (const auto& a : phi)
      if (!drop.count(a)) out.push_back(atom(a));
    return disj_all(out);
  }

  template <class F>
  StateFormula big_or(F f) const {
    std::vector<StateFormula> out;
    for (int i = 1; i <= n; ++i) out.push_back(f(i));
    return disj_all(out);
  }
  template <class F>
  StateFormula big_and(F f) const {
    std::vector<StateFormula> out;
    for (int i = 1; i <= n; ++i) out.push_back(f(i));
    return conj_all(out);
  }

  StateFormula any_s() const {
    return big_or([](int i) {
      std::vector<StateFormula> s;
      for (const char* j : kSuffix) s.push_back(atom(s_(i, j)));
      return disj_all(s);
    });
  }
  StateFormula no_s() const {
    return big_and([](int i) {
      std::vector<StateFormula> s;
      for (const char* j : kSuffix) s.push_back(negate(atom(s_(i, j))));
      return conj_all(s);
    });
  }
  StateFormula any(const char* prefix) const {
    return big_or([&](int i) { return atom(prefix + idx(i)); });
  }

  const std::vector<std::vector<SnsatLiteral>>& clauses(int i) const { return spec.phi[i - 1]; }

  StateFormula psi(const StateFormula& prev) const {
    PathFormula A = always(embed(implies(
        any("xb"), exists(conj(negate(eventually(embed(any_s()))),
                               eventually(embed(conj(any("x"), negate(prev)))))))));
    PathFormula B = always(embed(big_and([](int i) { return negate(atom("c" + idx(i))); })));
    std::vector<PathFormula> C;
    for (int i = 1; i <= n; ++i) {
      std::vector<PathFormula> cls;
      for (const auto& clause : clauses(i)) {
        std::vector<PathFormula> lits;
        for (const auto& l : clause) lits.push_back(eventually(embed(atom(lit_atom(l)))));
        cls.push_back(disj_all(lits));
      }
      C.push_back(implies(eventually(embed(atom("x" + idx(i)))), conj_all(cls)));
    }
    return exists(conj(A, conj(B, conj_all(C))));
  }

  // Odd k. neg_prev is the rewrite of ~psi_{k-1}.
  StateFormula psi_odd(const StateFormula& neg_prev) const {
    StateFormula inner = exists(conj(always(embed(no_s())),
                                     always(embed(disj_all({any("xb"), any("c"), neg_prev})))));
    PathFormula A = always(embed(disj(big_and([](int i) { return negate(atom("xb" + idx(i))); }), inner)));
    PathFormula B = always(embed(big_and([](int i) { return negate(atom("c" + idx(i))); })));
    std::vector<PathFormula> C;
    for (int i = 1; i <= n; ++i) {
      std::vector<PathFormula> cls;
      for (const auto& clause : clauses(i)) {
        std::vector<PathFormula> lits;
        for (const auto& l : clause) lits.push_back(always(embed(all_but({complement_atom(l)}))));
        cls.push_back(disj_all(lits));
      }
      C.push_back(disj(always(embed(negate(atom("x" + idx(i))))), conj_all(cls)));
    }
    return exists(conj(A, conj(B, conj_all(C))));
  }

  // Even k >= 2: rewrite of ~psi_k. prev is psi'_{k-1}.
  StateFormula neg_psi_even(const StateFormula& prev) const {
    std::vector<PathFormula> A, B, C;
    for (int i = 1; i <= n; ++i) {
      const std::string c = "c" + idx(i), xb = "xb" + idx(i);
      StateFormula inner =
          forall(disj(always(embed(all_but({c}))), always(embed(disj(atom(c), prev)))));
      A.push_back(always(embed(disj(all_but({xb}), inner))));
    }
    for (int i = 2; i <= n; ++i)
      B.push_back(always(embed(all_but({s_(i, "00"), s_(i, "01"), s_(i - 1, "01"), s_(i - 1, "11")}))));
    for (int i = 1; i <= n; ++i) {
      std::vector<PathFormula> some_clause;
      for (const auto& clause : clauses(i)) {
        std::vector<PathFormula> none;
        for (const auto& l : clause) none.push_back(always(embed(negate(atom(lit_atom(l))))));
        some_clause.push_back(conj_all(none));
      }
      C.push_back(conj(always(embed(all_but({"xb" + idx(i)}))), disj_all(some_clause)));
    }
    std::vector<PathFormula> parts;
    for (auto* v : {&A, &B, &C})
      if (!v->empty()) parts.push_back(disj_all(*v));
    return forall(disj_all(parts));
  }
};

SnsatLiteral parse_literal(std::string s) {
  SnsatLiteral l;
  if (!s.empty() && (s[0] == '~' || s[0] == '-' || s[0] == '!')) {
    l.negated = true;
    s.erase(0, 1);
  }
  if (s.size() < 2 || (s[0] != 'x' && s[0] != 'z') ||
      !std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s[1] == '0')
    throw SourceError("SNSAT literal must be x<k> or z<k> with k >= 1, optionally negated: '" + s + "'");
  l.var = s;
  return l;
}

}  // namespace

SnsatSpec parse_snsat_json(const std::string& text) {
  SnsatSpec spec;
  try {
    auto j = nlohmann::json::parse(text);
    spec.n = j.at("n").get<int>();
    if (spec.n < 1) throw SourceError("SNSAT n must be positive");
    const auto& phi = j.at("phi");
    if (!phi.is_array() || static_cast<int>(phi.size()) != spec.n)
      throw SourceError("SNSAT phi must list exactly n formulas");
    for (const auto& cnf : phi) {
      std::vector<std::vector<SnsatLiteral>> clauses;
      for (const auto& clause : cnf) {
        std::vector<SnsatLiteral> lits;
        for (const auto& l : clause) lits.push_back(parse_literal(l.get<std::string>()));
        if (lits.empty()) throw SourceError("SNSAT clause is empty");
        clauses.push_back(lits);
      }
      spec.phi.push_back(clauses);
    }
  } catch (const nlohmann::json::exception& e) {
    throw SourceError(std::string("SNSAT JSON: ") + e.what());
  }
  for (int i = 1; i <= spec.n; ++i)
    for (const auto& clause : spec.phi[i - 1])
      for (const auto& l : clause)
        if (l.var[0] == 'x' && std::stoi(l.var.substr(1)) >= i)
          throw SourceError("phi_" + std::to_string(i) + " may only read x_1..x_" + std::to_string(i - 1));
  return spec;
}

std::pair<std::vector<StateFormula>, std::vector<StateFormula>> build_snsat_psi(const SnsatSpec& spec, int max_k) {
  if (static_cast<int>(spec.phi.size()) != spec.n) throw SourceError("SNSAT spec needs n formulas");
  if (max_k < 0) max_k = 2 * spec.n - 1;
  Builder b(spec);
  std::vector<StateFormula> psi{top()}, prime{top()};
  for (int k = 1; k <= max_k; ++k) {
    psi.push_back(b.psi(psi.back()));
    if (k % 2 == 1)
      prime.push_back(b.psi_odd(k == 1 ? bottom() : prime.back()));
    else
      prime.push_back(b.neg_psi_even(prime.back()));
  }
  return {psi, prime};
}

}  // namespace fragmc
