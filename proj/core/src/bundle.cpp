// Instance bundles: model.kripke, formula.ctl, manifest.json.

#include <filesystem>

#include "fragmc/errors.hpp"
#include "fragmc/kripke_io.hpp"
#include "fragmc/parser.hpp"
#include "fragmc/reductions.hpp"
#include "json.hpp"

namespace fragmc {

namespace fs = std::filesystem;
using nlohmann::json;

void write_bundle(const std::string& dir, const HardnessInstance& h) {
  fs::create_directories(dir);
  const fs::path root(dir);
  write_file((root / "model.kripke").string(), save_kripke(h.structure));
  const std::string formula = to_string(h.formula);
  write_file((root / "formula.ctl").string(), formula + "\n");
  json m;
  m["format"] = "fragmc-instance";
  m["start"] = h.structure.name(h.start);
  m["expected"] = h.expected;
  m["formula"] = formula;
  m["states"] = h.structure.size();
  m["transitions"] = h.structure.transition_count();
  m["provenance"] = {{"generator", h.provenance.generator},
                     {"source_digest", h.provenance.digest},
                     {"reconstructed", h.provenance.reconstructed}};
  m["warnings"] = h.warnings;
  write_file((root / "manifest.json").string(), m.dump(2) + "\n");
}

HardnessInstance read_bundle(const std::string& dir) {
  const fs::path root(dir);
  json m;
  try {
    m = json::parse(read_file((root / "manifest.json").string()));
  } catch (const json::parse_error& e) {
    throw ModelError(dir + "/manifest.json: " + e.what());
  }
  HardnessInstance h;
  h.structure = load_kripke_file((root / "model.kripke").string());
  h.formula = parse_formula(read_file((root / "formula.ctl").string()));
  try {
    h.start = h.structure.at(m.at("start").get<std::string>());
    h.expected = m.at("expected").get<bool>();
    const auto& p = m.at("provenance");
    h.provenance.generator = p.at("generator").get<std::string>();
    h.provenance.digest = p.value("source_digest", "");
    h.provenance.reconstructed = p.value("reconstructed", false);
    if (m.contains("warnings")) h.warnings = m["warnings"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ModelError(dir + "/manifest.json: " + e.what());
  }
  return h;
}

}  // namespace fragmc
