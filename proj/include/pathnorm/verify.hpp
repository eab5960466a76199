#ifndef PATHNORM_VERIFY_HPP
#define PATHNORM_VERIFY_HPP

#include <string>
#include <vector>

#include "pathnorm/partition.hpp"
#include "pathnorm/pathway.hpp"

namespace pathnorm {

/// Checks the normal-form property directly from its definition: equal side
/// lengths and position-wise component equality. Deliberately does not use
/// the matcher. Returns one message per violation.
inline std::vector<std::string> normal_form_violations(const Pathway& pw, const ComponentPartition& p) {
  std::vector<std::string> out;
  for (const auto& r : pw.reactions()) {
    if (r.reactants.size() != r.products.size()) {
      out.push_back(r.id + ": " + std::to_string(r.reactants.size()) + " reactants vs " +
                    std::to_string(r.products.size()) + " products");
      continue;
    }
    for (std::size_t i = 0; i < r.reactants.size(); ++i) {
      if (!p.contains(r.reactants[i]) || !p.contains(r.products[i])) {
        out.push_back(r.id + ": position " + std::to_string(i) + " names a species outside the partition");
      } else if (!p.same(r.reactants[i], r.products[i])) {
        out.push_back(r.id + ": position " + std::to_string(i) + " pairs " + pw.species().name(r.reactants[i]) +
                      " with " + pw.species().name(r.products[i]) + " across components");
      }
    }
  }
  return out;
}

inline bool is_normal_form(const Pathway& pw, const ComponentPartition& p) {
  return normal_form_violations(pw, p).empty();
}

/// Components restricted to species present in `pw`, ordered by
/// representative; members ascending by id.
inline std::vector<std::vector<SpeciesId>> present_components(const Pathway& pw, const ComponentPartition& p) {
  std::vector<bool> present(pw.species().size(), false);
  for (auto s : pw.live_species()) present[s.value] = true;
  std::vector<std::vector<SpeciesId>> out;
  for (auto& cls : p.components()) {
    std::vector<SpeciesId> kept;
    for (auto s : cls) {
      if (s.value < present.size() && present[s.value]) kept.push_back(s);
    }
    if (!kept.empty()) out.push_back(std::move(kept));
  }
  return out;
}

inline std::size_t component_count(const Pathway& pw, const ComponentPartition& p) {
  return present_components(pw, p).size();
}

}  // namespace pathnorm

#endif  // PATHNORM_VERIFY_HPP
