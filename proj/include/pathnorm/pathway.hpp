#ifndef PATHNORM_PATHWAY_HPP
#define PATHNORM_PATHWAY_HPP

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "pathnorm/error.hpp"
#include "pathnorm/partition.hpp"
#include "pathnorm/species.hpp"

namespace pathnorm {

enum class ReactionOrigin { Source, Preprocessed, DynamicallyCorrected, UserResolved, SplitRewritten };

inline const char* to_string(ReactionOrigin o) {
  switch (o) {
    case ReactionOrigin::Source: return "Source";
    case ReactionOrigin::Preprocessed: return "Preprocessed";
    case ReactionOrigin::DynamicallyCorrected: return "DynamicallyCorrected";
    case ReactionOrigin::UserResolved: return "UserResolved";
    case ReactionOrigin::SplitRewritten: return "SplitRewritten";
  }
  return "?";
}

/// Reactant and product lists are ordered multisets; position i of a
/// normal-form reaction pairs reactants[i] with products[i].
struct Reaction {
  std::string id;
  std::vector<SpeciesId> reactants;
  std::vector<SpeciesId> products;
  ReactionOrigin origin = ReactionOrigin::Source;

  bool balanced() const { return reactants.size() == products.size(); }

  bool mentions(SpeciesId s) const {
    return std::find(reactants.begin(), reactants.end(), s) != reactants.end() ||
           std::find(products.begin(), products.end(), s) != products.end();
  }

  friend bool operator==(const Reaction&, const Reaction&) = default;
};

/// A reaction list plus the species table it indexes into. Copies are deep;
/// every rewriting step produces a new value.
class Pathway {
 public:
  Pathway() = default;

  SpeciesTable& species() { return species_; }
  const SpeciesTable& species() const { return species_; }

  std::vector<Reaction>& reactions() { return reactions_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }

  /// Species kept even though no reaction mentions them.
  std::vector<SpeciesId>& free_species() { return free_; }
  const std::vector<SpeciesId>& free_species() const { return free_; }

  SpeciesId intern(std::string_view name) { return species_.intern(name); }

  Reaction& add_reaction(std::string id, std::vector<SpeciesId> reactants, std::vector<SpeciesId> products,
                         ReactionOrigin origin = ReactionOrigin::Source) {
    if (find_reaction(id)) throw StructuralError("duplicate reaction id '" + id + "'");
    reactions_.push_back(Reaction{std::move(id), std::move(reactants), std::move(products), origin});
    return reactions_.back();
  }

  /// Convenience for fixtures: species given by name, interned as originals.
  Reaction& add_reaction(std::string id, const std::vector<std::string>& reactants,
                         const std::vector<std::string>& products) {
    std::vector<SpeciesId> r, p;
    for (const auto& n : reactants) r.push_back(intern(n));
    for (const auto& n : products) p.push_back(intern(n));
    return add_reaction(std::move(id), std::move(r), std::move(p));
  }

  const Reaction* find_reaction(std::string_view id) const {
    for (const auto& r : reactions_) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }

  std::ptrdiff_t reaction_index(std::string_view id) const {
    for (std::size_t i = 0; i < reactions_.size(); ++i) {
      if (reactions_[i].id == id) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
  }

  /// Species present in the pathway: every species some reaction mentions,
  /// plus retained free species, ascending by id.
  std::vector<SpeciesId> live_species() const {
    std::vector<bool> used(species_.size(), false);
    for (const auto& r : reactions_) {
      for (auto s : r.reactants) used[s.value] = true;
      for (auto s : r.products) used[s.value] = true;
    }
    for (auto s : free_) {
      if (species_.is_live(s)) used[s.value] = true;
    }
    std::vector<SpeciesId> out;
    for (std::uint32_t i = 0; i < used.size(); ++i) {
      if (used[i]) out.push_back(SpeciesId{i});
    }
    return out;
  }

  bool occurs(SpeciesId s) const {
    return std::any_of(reactions_.begin(), reactions_.end(), [&](const Reaction& r) { return r.mentions(s); });
  }

  std::string side_text(const std::vector<SpeciesId>& side) const {
    std::string out;
    for (std::size_t i = 0; i < side.size(); ++i) {
      if (i) out += ", ";
      out += species_.name(side[i]);
    }
    return out;
  }

  /// "A, B -> C" rendering used in logs, questions and reports.
  std::string reaction_text(const Reaction& r) const {
    return side_text(r.reactants) + " -> " + side_text(r.products);
  }

  std::vector<std::string> names(const std::vector<SpeciesId>& side) const {
    std::vector<std::string> out;
    out.reserve(side.size());
    for (auto s : side) out.push_back(species_.name(s));
    return out;
  }

 private:
  SpeciesTable species_;
  std::vector<Reaction> reactions_;
  std::vector<SpeciesId> free_;
};

/// Singleton partition over the live species of `pw`; retired species are
/// registered and immediately retired so ids stay aligned with the table.
inline ComponentPartition singleton_partition(const Pathway& pw) {
  ComponentPartition p;
  if (pw.species().size() == 0) return p;
  p.add(SpeciesId{static_cast<std::uint32_t>(pw.species().size() - 1)});
  for (const auto& s : pw.species()) {
    if (s.retired) p.retire(s.id);
  }
  return p;
}

}  // namespace pathnorm

#endif  // PATHNORM_PATHWAY_HPP
