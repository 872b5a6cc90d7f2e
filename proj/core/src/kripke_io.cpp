#include "fragmc/kripke_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace fragmc {
namespace {

struct Word {
  std::string text;
  std::size_t col;
};

std::vector<Word> split(const std::string& line, std::size_t offset) {
  std::vector<Word> out;
  std::size_t i = offset;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

}  // namespace

KripkeStructure load_kripke(std::string_view text, Totality mode) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  KripkeBuilder b;
  struct Pending {
    std::string from, to;
    std::size_t line, col;
  };
  std::vector<Pending> trans;
  struct Label {
    std::string state;
    std::vector<std::string> props;
    std::size_t line, col;
  };
  std::vector<Label> labels;

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto words = split(line, 0);
    if (words.empty()) continue;
    if (!header) {
      if (words.size() != 1 || words[0].text != "kripke") throw ParseError("expected header 'kripke'", lineno, words[0].col);
      header = true;
      continue;
    }
    const std::string& key = words[0].text;
    if (key == "states:") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        try {
          b.add_state(words[i].text);
        } catch (const ModelError& e) {
          throw ModelError("line " + std::to_string(lineno) + ": " + e.what());
        }
      }
    } else if (key == "trans:") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        const auto& w = words[i].text;
        auto arrow = w.find("->");
        if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= w.size())
          throw ParseError("expected transition 'a->b', found '" + w + "'", lineno, words[i].col);
        trans.push_back({w.substr(0, arrow), w.substr(arrow + 2), lineno, words[i].col});
      }
    } else if (key == "label:") {
      if (words.size() < 2 || words[1].text.size() < 2 || words[1].text.back() != ':')
        throw ParseError("expected 'label: <state>: <props>'", lineno, words.size() > 1 ? words[1].col : words[0].col);
      Label l{words[1].text.substr(0, words[1].text.size() - 1), {}, lineno, words[1].col};
      for (std::size_t i = 2; i < words.size(); ++i) l.props.push_back(words[i].text);
      labels.push_back(std::move(l));
    } else {
      throw ParseError("unknown directive '" + key + "'", lineno, words[0].col);
    }
  }
  if (!header) throw ParseError("missing header 'kripke'", lineno + 1, 1);

  for (const auto& t : trans) {
    try {
      b.add_transition(t.from, t.to);
    } catch (const ModelError& e) {
      throw ModelError("line " + std::to_string(t.line) + ": " + e.what());
    }
  }
  std::vector<std::string> seen;
  for (const auto& l : labels) {
    if (std::find(seen.begin(), seen.end(), l.state) != seen.end())
      throw ModelError("line " + std::to_string(l.line) + ": duplicate label line for state '" + l.state + "'");
    seen.push_back(l.state);
    try {
      if (!b.has_state(l.state)) throw ModelError("label for undeclared state '" + l.state + "'");
      for (const auto& p : l.props) b.add_label(l.state, p);
    } catch (const ModelError& e) {
      throw ModelError("line " + std::to_string(l.line) + ": " + e.what());
    }
  }
  return b.build(mode);
}

std::string save_kripke(const KripkeStructure& K) {
  std::ostringstream out;
  out << "kripke\nstates:";
  for (const auto& n : K.names()) out << ' ' << n;
  out << '\n';
  for (State s = 0; s < K.size(); ++s) {
    out << "trans:";
    for (State t : K.successors(s)) out << ' ' << K.name(s) << "->" << K.name(t);
    out << '\n';
  }
  for (State s = 0; s < K.size(); ++s) {
    auto ls = K.labels(s);
    if (ls.empty()) continue;
    out << "label: " << K.name(s) << ':';
    for (const auto& p : ls) out << ' ' << p;
    out << '\n';
  }
  return out.str();
}

KripkeStructure kripke_from_json(std::string_view text, Totality mode) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1, e.byte);
  }
  KripkeBuilder b;
  try {
    for (const auto& s : j.at("states")) b.add_state(s.get<std::string>());
    if (j.contains("trans"))
      for (const auto& t : j.at("trans")) {
        if (!t.is_array() || t.size() != 2) throw ModelError("transition must be a pair");
        b.add_transition(t[0].get<std::string>(), t[1].get<std::string>());
      }
    if (j.contains("labels"))
      for (const auto& [s, props] : j.at("labels").items()) {
        if (!b.has_state(s)) throw ModelError("label for undeclared state '" + s + "'");
        for (const auto& p : props) b.add_label(s, p.get<std::string>());
      }
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed model JSON: ") + e.what());
  }
  return b.build(mode);
}

std::string kripke_to_json(const KripkeStructure& K, int indent) {
  nlohmann::ordered_json j;
  j["states"] = K.names();
  auto trans = nlohmann::ordered_json::array();
  for (State s = 0; s < K.size(); ++s)
    for (State t : K.successors(s)) trans.push_back({K.name(s), K.name(t)});
  j["trans"] = trans;
  auto labels = nlohmann::ordered_json::object();
  for (State s = 0; s < K.size(); ++s) {
    auto ls = K.labels(s);
    if (!ls.empty()) labels[K.name(s)] = ls;
  }
  j["labels"] = labels;
  return j.dump(indent);
}

std::string kripke_to_dot(const KripkeStructure& K) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + '"';
  };
  std::ostringstream out;
  out << "digraph K {\n";
  for (State s = 0; s < K.size(); ++s) {
    std::string text = K.name(s) + "\\n{";
    auto ls = K.labels(s);
    for (std::size_t i = 0; i < ls.size(); ++i) text += (i ? "," : "") + ls[i];
    text += "}";
    out << "  " << quote(K.name(s)) << " [label=\"";
    for (char c : text) {
      if (c == '"') out << '\\';
      out << c;
    }
    out << "\"];\n";
  }
  for (State s = 0; s < K.size(); ++s)
    for (State t : K.successors(s)) out << "  " << quote(K.name(s)) << " -> " << quote(K.name(t)) << ";\n";
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

KripkeStructure load_kripke_file(const std::string& path, Totality mode) {
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return kripke_from_json(text, mode);
  return load_kripke(text, mode);
}

}  // namespace fragmc
