// Reduction source objects: games, circuits, CNF.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "fragmc/errors.hpp"
#include "fragmc/reductions.hpp"
#include "json.hpp"

namespace fragmc {

using nlohmann::json;

// ---- games ----

void validate_game(const AlternatingGame& g) {
  const std::size_t n = g.size();
  if (n == 0) throw SourceError("game has no nodes");
  if (g.level.size() != n || g.succ.size() != n || g.accepting.size() != n)
    throw SourceError("game arrays disagree in length");
  if (g.level[0] != 0) throw SourceError("node 0 must be the root on level 0");
  std::vector<int> per_level(g.depth + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (g.level[v] < 0 || g.level[v] > g.depth)
      throw SourceError("node '" + g.names[v] + "' has level outside 0.." + std::to_string(g.depth));
    ++per_level[g.level[v]];
  }
  if (per_level[0] != 1) throw SourceError("level 0 must hold exactly the root");
  for (int j = 0; j <= g.depth; ++j)
    if (per_level[j] == 0) throw SourceError("level " + std::to_string(j) + " is empty");

  for (std::size_t v = 0; v < n; ++v) {
    const auto& s = g.succ[v];
    const std::string& name = g.names[v];
    if (g.level[v] == g.depth) {
      if (!s.empty()) throw SourceError("leaf '" + name + "' has successors");
      continue;
    }
    if (s.empty()) throw SourceError("node '" + name + "' above the last level has no successor");
    std::set<int> seen;
    for (int w : s) {
      if (w < 0 || static_cast<std::size_t>(w) >= n) throw SourceError("node '" + name + "' has a dangling edge");
      if (g.level[w] != g.level[v] + 1)
        throw SourceError("edge " + name + " -> " + g.names[w] + " does not go to the next level");
      if (!seen.insert(w).second) throw SourceError("node '" + name + "' repeats successor '" + g.names[w] + "'");
    }
    if (g.universal(v) && s.size() != 2)
      throw SourceError("universal node '" + name + "' needs exactly two successors, has " +
                        std::to_string(s.size()));
    if (g.accepting[v]) throw SourceError("accepting node '" + name + "' is not a leaf");
  }
}

bool game_value(const AlternatingGame& g) {
  validate_game(g);
  std::vector<int> order(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) order[v] = static_cast<int>(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return g.level[a] > g.level[b]; });
  std::vector<char> val(g.size(), 0);
  for (int v : order) {
    if (g.level[v] == g.depth) {
      val[v] = g.accepting[v];
    } else if (g.universal(v)) {
      val[v] = std::all_of(g.succ[v].begin(), g.succ[v].end(), [&](int w) { return val[w] != 0; });
    } else {
      val[v] = std::any_of(g.succ[v].begin(), g.succ[v].end(), [&](int w) { return val[w] != 0; });
    }
  }
  return val[0] != 0;
}

AlternatingGame parse_game_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SourceError(std::string("game JSON: ") + e.what());
  }
  AlternatingGame g;
  try {
    const std::string pol = j.at("root_polarity").get<std::string>();
    if (pol == "forall" || pol == "universal" || pol == "A")
      g.root_universal = true;
    else if (pol == "exists" || pol == "existential" || pol == "E")
      g.root_universal = false;
    else
      throw SourceError("root_polarity must be 'exists' or 'forall', got '" + pol + "'");

    std::map<std::string, int> index;
    const auto& levels = j.at("levels");
    if (!levels.is_array() || levels.empty()) throw SourceError("levels must be a nonempty array");
    g.depth = static_cast<int>(levels.size()) - 1;
    for (std::size_t l = 0; l < levels.size(); ++l) {
      for (const auto& nm : levels[l]) {
        const std::string name = nm.get<std::string>();
        if (!index.emplace(name, static_cast<int>(g.names.size())).second)
          throw SourceError("duplicate game node '" + name + "'");
        g.names.push_back(name);
        g.level.push_back(static_cast<int>(l));
      }
    }
    g.succ.assign(g.names.size(), {});
    g.accepting.assign(g.names.size(), 0);
    auto lookup = [&](const std::string& name) {
      auto it = index.find(name);
      if (it == index.end()) throw SourceError("unknown game node '" + name + "'");
      return it->second;
    };
    if (j.contains("edges")) {
      for (const auto& [from, tos] : j.at("edges").items()) {
        const int v = lookup(from);
        for (const auto& to : tos) g.succ[v].push_back(lookup(to.get<std::string>()));
      }
    }
    if (j.contains("accepting"))
      for (const auto& a : j.at("accepting")) g.accepting[lookup(a.get<std::string>())] = 1;
  } catch (const json::exception& e) {
    throw SourceError(std::string("game JSON: ") + e.what());
  }
  validate_game(g);
  return g;
}

std::string game_to_json(const AlternatingGame& g) {
  json j;
  j["root_polarity"] = g.root_universal ? "forall" : "exists";
  json levels = json::array();
  for (int l = 0; l <= g.depth; ++l) {
    json row = json::array();
    for (std::size_t v = 0; v < g.size(); ++v)
      if (g.level[v] == l) row.push_back(g.names[v]);
    levels.push_back(row);
  }
  j["levels"] = levels;
  json edges = json::object();
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.succ[v].empty()) continue;
    json to = json::array();
    for (int w : g.succ[v]) to.push_back(g.names[w]);
    edges[g.names[v]] = to;
  }
  j["edges"] = edges;
  json acc = json::array();
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.accepting[v]) acc.push_back(g.names[v]);
  j["accepting"] = acc;
  return j.dump(2) + "\n";
}

// ---- circuits ----

void validate_circuit(const MonotoneCircuit& c) {
  const int n = static_cast<int>(c.gates.size());
  if (n == 0) throw SourceError("circuit has no gates");
  if (c.depth < 1) throw SourceError("circuit needs at least one gate layer above the inputs");
  if (c.output < 0 || c.output >= n) throw SourceError("output gate out of range");
  const auto& out = c.gates[c.output];
  if (out.layer != 0 || out.kind != GateKind::Or) throw SourceError("output gate must be an OR gate on layer 0");
  for (int i = 0; i < n; ++i) {
    const auto& g = c.gates[i];
    if (g.layer == 0 && i != c.output) throw SourceError("gate '" + g.id + "' shares layer 0 with the output");
    if (g.kind == GateKind::Input) {
      if (g.layer != c.depth) throw SourceError("input '" + g.id + "' is not on the input layer");
      if (g.var < 1 || g.var > c.vars) throw SourceError("input '" + g.id + "' reads an undeclared variable");
      if (!g.preds.empty()) throw SourceError("input '" + g.id + "' has predecessors");
      continue;
    }
    if (g.layer < 0 || g.layer >= c.depth) throw SourceError("gate '" + g.id + "' is on the input layer or below");
    const GateKind want = g.layer % 2 == 0 ? GateKind::Or : GateKind::And;
    if (g.kind != want)
      throw SourceError("gate '" + g.id + "' on layer " + std::to_string(g.layer) + " must be " +
                        (want == GateKind::Or ? "OR" : "AND"));
    if (g.kind == GateKind::And && g.preds.size() != 2)
      throw SourceError("AND gate '" + g.id + "' needs fan-in 2, has " + std::to_string(g.preds.size()));
    if (g.kind == GateKind::Or && g.preds.empty()) throw SourceError("OR gate '" + g.id + "' has no inputs");
    for (int p : g.preds) {
      if (p < 0 || p >= n) throw SourceError("gate '" + g.id + "' has a dangling predecessor");
      if (c.gates[p].layer != g.layer + 1)
        throw SourceError("gate '" + g.id + "' reads '" + c.gates[p].id + "' from a non-adjacent layer");
    }
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{c.output};
  seen[c.output] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int p : c.gates[v].preds)
      if (!seen[p]) seen[p] = 1, stack.push_back(p);
  }
  for (int i = 0; i < n; ++i)
    if (!seen[i]) throw SourceError("gate '" + c.gates[i].id + "' does not feed the output");
}

bool circuit_value(const MonotoneCircuit& c, const std::vector<bool>& x) {
  validate_circuit(c);
  if (static_cast<int>(x.size()) != c.vars)
    throw SourceError("input vector has " + std::to_string(x.size()) + " bits, circuit reads " +
                      std::to_string(c.vars));
  std::vector<int> order(c.gates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return c.gates[a].layer > c.gates[b].layer; });
  std::vector<char> val(c.gates.size(), 0);
  for (int i : order) {
    const auto& g = c.gates[i];
    switch (g.kind) {
      case GateKind::Input:
        val[i] = x[g.var - 1] != g.negated;
        break;
      case GateKind::And:
        val[i] = std::all_of(g.preds.begin(), g.preds.end(), [&](int p) { return val[p] != 0; });
        break;
      case GateKind::Or:
        val[i] = std::any_of(g.preds.begin(), g.preds.end(), [&](int p) { return val[p] != 0; });
        break;
    }
  }
  return val[c.output] != 0;
}

MonotoneCircuit parse_netlist(const std::string& text) {
  MonotoneCircuit c;
  std::map<std::string, int> index;
  std::vector<std::vector<std::string>> pred_names;
  std::map<std::string, int> var_index;
  std::istringstream in(text);
  std::string line;
  int lineno = 0, max_layer = -1;
  auto fail = [&](const std::string& msg) { throw SourceError("netlist line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> w;
    for (std::string t; ls >> t;) w.push_back(t);
    if (w.empty()) continue;
    CircuitGate g;
    std::vector<std::string> preds;
    if (w[0] == "gate") {
      if (w.size() < 4) fail("expected 'gate <id> <layer> AND|OR <pred...>'");
      g.id = w[1];
      try {
        std::size_t used = 0;
        g.layer = std::stoi(w[2], &used);
        if (used != w[2].size() || g.layer < 0) throw std::invalid_argument("layer");
      } catch (const std::exception&) {
        fail("bad layer '" + w[2] + "'");
      }
      std::string kind = w[3];
      std::transform(kind.begin(), kind.end(), kind.begin(), ::toupper);
      if (kind == "AND")
        g.kind = GateKind::And;
      else if (kind == "OR")
        g.kind = GateKind::Or;
      else
        fail("gate kind must be AND or OR, got '" + w[3] + "'");
      preds.assign(w.begin() + 4, w.end());
      max_layer = std::max(max_layer, g.layer);
    } else if (w[0] == "input") {
      if (w.size() < 2 || w.size() > 4) fail("expected 'input <id> [<var>] [neg]'");
      g.id = w[1];
      std::string var;
      for (std::size_t k = 2; k < w.size(); ++k) {
        if (w[k] == "neg")
          g.negated = true;
        else if (var.empty())
          var = w[k];
        else
          fail("unexpected token '" + w[k] + "'");
      }
      if (var.empty()) var = "#" + g.id;  // fresh variable
      if (var.size() > 1 && (var[0] == 'x' || var[0] == 'X')) var = var.substr(1);
      auto it = var_index.find(var);
      if (it == var_index.end()) {
        int k = static_cast<int>(var_index.size()) + 1;
        if (var[0] != '#') {
          try {
            std::size_t used = 0;
            k = std::stoi(var, &used);
            if (used != var.size() || k < 1) throw std::invalid_argument("var");
          } catch (const std::exception&) {
            fail("bad variable '" + var + "'");
          }
        }
        it = var_index.emplace(var, k).first;
      }
      g.var = it->second;
    } else {
      fail("unknown directive '" + w[0] + "'");
    }
    if (!index.emplace(g.id, static_cast<int>(c.gates.size())).second) fail("duplicate gate id '" + g.id + "'");
    c.gates.push_back(g);
    pred_names.push_back(preds);
  }
  if (max_layer < 0) throw SourceError("netlist has no gates");
  c.depth = max_layer + 1;
  c.output = -1;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    auto& g = c.gates[i];
    if (g.kind == GateKind::Input) {
      g.layer = c.depth;
      c.vars = std::max(c.vars, g.var);
    }
    if (g.kind != GateKind::Input && g.layer == 0) {
      if (c.output >= 0) throw SourceError("netlist has more than one gate on layer 0");
      c.output = static_cast<int>(i);
    }
    for (const auto& p : pred_names[i]) {
      auto it = index.find(p);
      if (it == index.end()) throw SourceError("gate '" + g.id + "' reads unknown gate '" + p + "'");
      g.preds.push_back(it->second);
    }
  }
  if (c.output < 0) throw SourceError("netlist has no output gate on layer 0");
  validate_circuit(c);
  return c;
}

std::string netlist_to_string(const MonotoneCircuit& c) {
  std::ostringstream out;
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::Input) {
      out << "input " << g.id << ' ' << g.var << (g.negated ? " neg" : "") << '\n';
    } else {
      out << "gate " << g.id << ' ' << g.layer << (g.kind == GateKind::And ? " AND" : " OR");
      for (int p : g.preds) out << ' ' << c.gates[p].id;
      out << '\n';
    }
  }
  return out.str();
}

// ---- CNF ----

Cnf parse_dimacs(const std::string& text) {
  Cnf f;
  std::istringstream in(text);
  std::string line;
  int lineno = 0, declared_clauses = -1;
  bool header = false;
  std::vector<int> cur;
  auto fail = [&](const std::string& msg) { throw SourceError("DIMACS line " + std::to_string(lineno) + ": " + msg); };
  auto finish = [&]() {
    if (cur.empty()) fail("empty clause");
    if (cur.size() > 3) fail("clause has " + std::to_string(cur.size()) + " literals, at most 3 allowed");
    while (cur.size() < 3) cur.push_back(cur.back());
    f.clauses.push_back(cur);
    cur.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c" || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> f.vars >> declared_clauses) || fmt != "cnf" || f.vars < 0)
        fail("bad problem line");
      header = true;
      continue;
    }
    if (!header) fail("clause before the 'p cnf' line");
    ls.clear();
    ls.str(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        finish();
        continue;
      }
      if (std::labs(lit) > f.vars) fail("variable " + std::to_string(std::labs(lit)) + " out of range");
      cur.push_back(static_cast<int>(lit));
    }
    if (!ls.eof()) fail("unexpected token");
  }
  if (!header) throw SourceError("DIMACS input has no 'p cnf' line");
  if (!cur.empty()) finish();
  if (declared_clauses >= 0 && static_cast<int>(f.clauses.size()) != declared_clauses)
    throw SourceError("DIMACS header declares " + std::to_string(declared_clauses) + " clauses, found " +
                      std::to_string(f.clauses.size()));
  return f;
}

std::string cnf_to_dimacs(const Cnf& f) {
  std::ostringstream out;
  out << "p cnf " << f.vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

bool satisfiable(const Cnf& f) {
  if (f.vars > 24) throw SourceError("brute-force SAT is limited to 24 variables");
  for (std::uint32_t a = 0; a < (1u << f.vars); ++a) {
    bool all = true;
    for (const auto& c : f.clauses) {
      bool some = false;
      for (int l : c) {
        const bool v = (a >> (std::abs(l) - 1)) & 1u;
        some = some || (l > 0 ? v : !v);
      }
      if (!some) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace fragmc
