#ifndef PATHNORM_SPECIES_HPP
#define PATHNORM_SPECIES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pathnorm/error.hpp"

namespace pathnorm {

/// Interned species handle. Values are dense insertion indices into the
/// owning SpeciesTable, so ordering by id is ordering by insertion.
struct SpeciesId {
  std::uint32_t value{};

  friend auto operator<=>(const SpeciesId&, const SpeciesId&) = default;
};

enum class DummyOrigin { Preprocess, Dynamic, Freshened };

struct Original {
  friend bool operator==(const Original&, const Original&) = default;
};

/// A subspecies produced by splitting `parent`. Automatic splits record the
/// counterpart species the subspecies was paired with; user-declared splits
/// have no constituent.
struct SplitOf {
  SpeciesId parent;
  std::optional<SpeciesId> constituent;
  std::uint32_t ordinal{};

  friend bool operator==(const SplitOf&, const SplitOf&) = default;
};

struct DummyOf {
  DummyOrigin origin{};

  friend bool operator==(const DummyOf&, const DummyOf&) = default;
};

using Provenance = std::variant<Original, SplitOf, DummyOf>;

struct Species {
  SpeciesId id;
  std::string name;
  Provenance provenance;
  bool retired = false;  // replaced by its subspecies
};

inline const char* to_string(DummyOrigin o) {
  switch (o) {
    case DummyOrigin::Preprocess: return "preprocess";
    case DummyOrigin::Dynamic: return "dynamic";
    case DummyOrigin::Freshened: return "freshened";
  }
  return "?";
}

/// Owns every species ever created in one pathway lineage. Display names are
/// kept unique: a colliding name receives a "#k" suffix.
class SpeciesTable {
 public:
  SpeciesId add(std::string_view preferred, Provenance provenance) {
    SpeciesId id{static_cast<std::uint32_t>(entries_.size())};
    std::string name = unique_name(preferred);
    by_name_.emplace(name, id);
    entries_.push_back(Species{id, std::move(name), provenance, false});
    return id;
  }

  /// Original species are identified by name.
  SpeciesId intern(std::string_view name) {
    if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
      if (std::holds_alternative<Original>(entries_[it->second.value].provenance)) {
        return it->second;
      }
    }
    return add(name, Original{});
  }

  std::optional<SpeciesId> find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(SpeciesId id) const { return id.value < entries_.size(); }

  const Species& at(SpeciesId id) const {
    if (!contains(id)) {
      throw StructuralError("unknown species id " + std::to_string(id.value));
    }
    return entries_[id.value];
  }

  const Species& operator[](SpeciesId id) const { return entries_[id.value]; }

  const std::string& name(SpeciesId id) const { return at(id).name; }

  bool is_live(SpeciesId id) const { return contains(id) && !entries_[id.value].retired; }

  void retire(SpeciesId id) {
    at(id);
    entries_[id.value].retired = true;
  }

  std::size_t size() const { return entries_.size(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Entity label used when synthesizing subspecies and dummy names: the
  /// name of the original species a subspecies ultimately stands for.
  std::string label(SpeciesId id) const {
    const Species* s = &at(id);
    while (const auto* split = std::get_if<SplitOf>(&s->provenance)) {
      if (split->constituent) {
        s = &at(*split->constituent);
        continue;
      }
      // User-named subspecies: "<parent>-<label>" by convention, otherwise
      // whatever follows the last hyphen.
      const std::string& parent = at(split->parent).name;
      if (s->name.size() > parent.size() + 1 && s->name.compare(0, parent.size(), parent) == 0 &&
          s->name[parent.size()] == '-') {
        return s->name.substr(parent.size() + 1);
      }
      auto dash = s->name.rfind('-');
      if (dash != std::string::npos && dash + 1 < s->name.size()) return s->name.substr(dash + 1);
      return s->name;
    }
    return s->name;
  }

 private:
  std::string unique_name(std::string_view preferred) const {
    std::string name(preferred);
    if (!by_name_.contains(name)) return name;
    for (int k = 2;; ++k) {
      std::string candidate = name + "#" + std::to_string(k);
      if (!by_name_.contains(candidate)) return candidate;
    }
  }

  std::vector<Species> entries_;
  std::unordered_map<std::string, SpeciesId> by_name_;
};

}  // namespace pathnorm

template <>
struct std::hash<pathnorm::SpeciesId> {
  std::size_t operator()(const pathnorm::SpeciesId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

#endif  // PATHNORM_SPECIES_HPP
