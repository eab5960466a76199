#ifndef PATHNORM_PREPROCESS_HPP
#define PATHNORM_PREPROCESS_HPP

#include <map>
#include <set>
#include <string>

#include "pathnorm/pathway.hpp"

namespace pathnorm {

/// Gives every empty reactant or product list one fresh dummy species
/// (D1, D2, ...), so synthesis and degradation reactions balance. Each dummy
/// occurs exactly once.
inline Pathway preprocess(Pathway pw) {
  std::size_t counter = 0;
  auto fresh = [&] {
    std::string name;
    do {
      name = "D" + std::to_string(++counter);
    } while (pw.species().find(name));
    return pw.species().add(name, DummyOf{DummyOrigin::Preprocess});
  };
  for (auto& r : pw.reactions()) {
    bool touched = false;
    if (r.reactants.empty()) {
      r.reactants.push_back(fresh());
      touched = true;
    }
    if (r.products.empty()) {
      r.products.push_back(fresh());
      touched = true;
    }
    if (touched) r.origin = ReactionOrigin::Preprocessed;
  }
  return pw;
}

/// Rebuilds `pw` with every occurrence of the listed original species
/// replaced by its own fresh dummy "<name>.<k>". Used for shared source/sink
/// placeholders such as "none" that would otherwise glue unrelated entities.
inline Pathway freshen(const Pathway& pw, const std::set<std::string>& names) {
  if (names.empty()) return pw;
  Pathway out;
  std::map<std::string, std::size_t> counters;
  std::map<std::uint32_t, SpeciesId> kept;
  auto map_side = [&](const std::vector<SpeciesId>& side) {
    std::vector<SpeciesId> ids;
    for (auto s : side) {
      const Species& sp = pw.species().at(s);
      if (std::holds_alternative<Original>(sp.provenance) && names.contains(sp.name)) {
        std::string name;
        do {
          name = sp.name + "." + std::to_string(++counters[sp.name]);
        } while (pw.species().find(name) || out.species().find(name));
        ids.push_back(out.species().add(name, DummyOf{DummyOrigin::Freshened}));
      } else {
        auto it = kept.find(s.value);
        if (it == kept.end()) it = kept.emplace(s.value, out.species().add(sp.name, sp.provenance)).first;
        ids.push_back(it->second);
      }
    }
    return ids;
  };
  for (const auto& r : pw.reactions()) {
    auto reactants = map_side(r.reactants);
    auto products = map_side(r.products);
    out.add_reaction(r.id, std::move(reactants), std::move(products), r.origin);
  }
  return out;
}

}  // namespace pathnorm

#endif  // PATHNORM_PREPROCESS_HPP
