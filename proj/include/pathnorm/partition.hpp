#ifndef PATHNORM_PARTITION_HPP
#define PATHNORM_PARTITION_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "pathnorm/error.hpp"
#include "pathnorm/species.hpp"

namespace pathnorm {

/// Union-find over dense indices with path compression and union by size.
/// Each root keeps its member list so whole classes can be enumerated.
template <typename Index = std::uint32_t>
class DisjointSets {
 public:
  Index add() {
    Index i = static_cast<Index>(parent_.size());
    parent_.push_back(i);
    members_.push_back({i});
    return i;
  }

  std::size_t size() const { return parent_.size(); }

  Index root(Index i) const {
    Index r = i;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[i] != r) {
      Index next = parent_[i];
      parent_[i] = r;
      i = next;
    }
    return r;
  }

  /// Returns false when both indices were already in one set.
  bool unite(Index a, Index b) {
    Index ra = root(a);
    Index rb = root(b);
    if (ra == rb) return false;
    if (members_[ra].size() < members_[rb].size()) std::swap(ra, rb);
    parent_[rb] = ra;
    members_[ra].insert(members_[ra].end(), members_[rb].begin(), members_[rb].end());
    members_[rb].clear();
    members_[rb].shrink_to_fit();
    return true;
  }

  const std::vector<Index>& members_of_root(Index r) const { return members_[r]; }

 private:
  mutable std::vector<Index> parent_;
  std::vector<std::vector<Index>> members_;
};

/// The component equivalence relation over species. Retired species (split
/// parents) stay in the forest as link nodes but are invisible to every
/// query; a class representative is its live member with the lowest id.
class ComponentPartition {
 public:
  ComponentPartition() = default;

  /// Registers ids up to and including `id` as singletons.
  void add(SpeciesId id) {
    while (sets_.size() <= id.value) {
      sets_.add();
      live_.push_back(true);
    }
  }

  bool contains(SpeciesId id) const { return id.value < live_.size() && live_[id.value]; }

  void retire(SpeciesId id) {
    require(id);
    live_[id.value] = false;
  }

  SpeciesId find(SpeciesId id) const {
    require(id);
    return representative_of_root(sets_.root(id.value));
  }

  bool same(SpeciesId a, SpeciesId b) const {
    require(a);
    require(b);
    return sets_.root(a.value) == sets_.root(b.value);
  }

  /// Returns true if two distinct classes were joined.
  bool merge(SpeciesId a, SpeciesId b) {
    require(a);
    require(b);
    return sets_.unite(a.value, b.value);
  }

  /// Live members of the class of `id`, ascending.
  std::vector<SpeciesId> component_of(SpeciesId id) const {
    require(id);
    return live_members(sets_.root(id.value));
  }

  /// All classes with at least one live member, ordered by representative.
  std::vector<std::vector<SpeciesId>> components() const {
    std::vector<std::vector<SpeciesId>> out;
    std::vector<bool> seen(sets_.size(), false);
    for (std::uint32_t i = 0; i < live_.size(); ++i) {
      if (!live_[i]) continue;
      auto r = sets_.root(i);
      if (seen[r]) continue;
      seen[r] = true;
      out.push_back(live_members(r));
    }
    return out;
  }

  std::size_t component_count() const { return components().size(); }

  std::size_t live_count() const {
    return static_cast<std::size_t>(std::count(live_.begin(), live_.end(), true));
  }

  /// Identity of the underlying class including retired link nodes; equal for
  /// two ids iff `same` holds. Only meaningful until the next merge.
  std::uint32_t class_key(SpeciesId id) const {
    require(id);
    return sets_.root(id.value);
  }

 private:
  void require(SpeciesId id) const {
    if (!contains(id)) {
      throw StructuralError("species id " + std::to_string(id.value) + " is not in the partition");
    }
  }

  std::vector<SpeciesId> live_members(std::uint32_t root) const {
    std::vector<SpeciesId> out;
    for (auto m : sets_.members_of_root(root)) {
      if (live_[m]) out.push_back(SpeciesId{m});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  SpeciesId representative_of_root(std::uint32_t root) const {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (auto m : sets_.members_of_root(root)) {
      if (live_[m]) best = std::min(best, m);
    }
    return SpeciesId{best};
  }

  DisjointSets<std::uint32_t> sets_;
  std::vector<bool> live_;
};

}  // namespace pathnorm

#endif  // PATHNORM_PARTITION_HPP
