#ifndef PATHNORM_TESTS_FIXTURES_HPP
#define PATHNORM_TESTS_FIXTURES_HPP

#include <algorithm>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathnorm/pathnorm.hpp"

namespace pathnorm::testing {

inline std::filesystem::path data_path(const std::string& rel) { return std::filesystem::path(PATHNORM_DATA_DIR) / rel; }

inline Pathway load_csv(const std::string& rel) { return read_csv(read_file(data_path(rel))); }

inline Pathway gprotein() { return load_csv("gprotein.csv"); }
inline Pathway model82() { return load_csv("model82.csv"); }

inline Resolution resolution_from(const nlohmann::json& j) {
  Resolution r{j.at("reaction_id"), j.at("reactants"), j.at("products"), {}};
  for (const auto& s : j.value("splits", nlohmann::json::array())) r.splits.push_back({s.at("species"), s.at("into")});
  return r;
}

inline std::vector<Resolution> model82_resolutions() {
  std::vector<Resolution> out;
  for (const auto& j : nlohmann::json::parse(read_file(data_path("model82_resolutions.json")))) {
    out.push_back(resolution_from(j));
  }
  return out;
}

using NameSet = std::set<std::string>;

/// Components as sets of display names, restricted to species present.
inline std::set<NameSet> component_names(const Pathway& pw, const ComponentPartition& p) {
  std::set<NameSet> out;
  for (const auto& cls : present_components(pw, p)) {
    NameSet names;
    for (auto s : cls) names.insert(pw.species().name(s));
    out.insert(names);
  }
  return out;
}

inline NameSet component_of_name(const Pathway& pw, const ComponentPartition& p, const std::string& name) {
  NameSet out;
  for (auto s : p.component_of(*pw.species().find(name))) out.insert(pw.species().name(s));
  return out;
}

inline std::vector<std::string> reaction_texts(const Pathway& pw) {
  std::vector<std::string> out;
  for (const auto& r : pw.reactions()) out.push_back(r.id + ": " + pw.reaction_text(r));
  return out;
}

inline SpeciesId id_of(const Pathway& pw, const std::string& name) {
  auto id = pw.species().find(name);
  if (!id) throw StructuralError("fixture has no species '" + name + "'");
  return *id;
}

// The expected normal form of the G-protein pathway and its components.
inline const std::vector<std::string>& gprotein_normal_form() {
  static const std::vector<std::string> v{
      "r1: Lig, rcpt -> C1-Lig, C1-rcpt",
      "r2: GDP, Galpha -> C2-GDP, C2-Galpha",
      "r3: GTP, Galpha -> C3-GTP, C3-Galpha",
      "r4: C3-GTP, C3-Galpha -> C2-GDP, C2-Galpha",
      "r5: C2-GDP, C2-Galpha, Gbetagamma -> C4-GDP, C4-Galpha, C4-Gbetagamma",
      "r6: C4-GDP, C4-Galpha, C4-Gbetagamma, C1-Lig, C1-rcpt -> C5-GDP, C5-Galpha, C5-Gbetagamma, C5-Lig, C5-rcpt",
  };
  return v;
}

inline const std::set<NameSet>& gprotein_components() {
  static const std::set<NameSet> v{
      {"Lig", "C1-Lig", "C5-Lig"},
      {"rcpt", "C1-rcpt", "C5-rcpt"},
      {"GDP", "C2-GDP", "C4-GDP", "C5-GDP", "GTP", "C3-GTP"},
      {"Galpha", "C2-Galpha", "C3-Galpha", "C4-Galpha", "C5-Galpha"},
      {"Gbetagamma", "C4-Gbetagamma", "C5-Gbetagamma"},
  };
  return v;
}

}  // namespace pathnorm::testing

#endif  // PATHNORM_TESTS_FIXTURES_HPP
