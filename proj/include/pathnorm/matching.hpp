#ifndef PATHNORM_MATCHING_HPP
#define PATHNORM_MATCHING_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pathnorm/partition.hpp"
#include "pathnorm/pathway.hpp"

namespace pathnorm {

/// A reactant or product slot of a reaction.
struct Slot {
  std::size_t position{};
  SpeciesId species;

  friend bool operator==(const Slot&, const Slot&) = default;
};

struct MatchedPair {
  Slot reactant;
  Slot product;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// Maximum component matching between the two sides of one reaction.
/// Pairs are listed in reactant order; unmatched slots keep input order.
struct MatchResult {
  std::vector<MatchedPair> matched;
  std::vector<Slot> unmatched_reactants;
  std::vector<Slot> unmatched_products;

  std::size_t k() const { return matched.size(); }
  std::size_t n() const { return unmatched_reactants.size(); }
  std::size_t m() const { return unmatched_products.size(); }
};

/// Within each component the i-th reactant pairs with the i-th product.
/// Component-equality edges form complete bipartite blocks, so per-component
/// min-counting is a maximum matching.
inline MatchResult match_reaction(const Reaction& r, const ComponentPartition& p) {
  MatchResult out;
  std::unordered_map<std::uint32_t, std::vector<std::size_t>> products_by_class;
  for (std::size_t j = 0; j < r.products.size(); ++j) {
    products_by_class[p.class_key(r.products[j])].push_back(j);
  }
  std::unordered_map<std::uint32_t, std::size_t> next;
  std::vector<bool> product_used(r.products.size(), false);
  for (std::size_t i = 0; i < r.reactants.size(); ++i) {
    auto key = p.class_key(r.reactants[i]);
    auto it = products_by_class.find(key);
    std::size_t& cursor = next[key];
    if (it != products_by_class.end() && cursor < it->second.size()) {
      std::size_t j = it->second[cursor++];
      product_used[j] = true;
      out.matched.push_back({{i, r.reactants[i]}, {j, r.products[j]}});
    } else {
      out.unmatched_reactants.push_back({i, r.reactants[i]});
    }
  }
  for (std::size_t j = 0; j < r.products.size(); ++j) {
    if (!product_used[j]) out.unmatched_products.push_back({j, r.products[j]});
  }
  return out;
}

enum class Side { Reactants, Products };

inline const char* to_string(Side s) { return s == Side::Reactants ? "reactants" : "products"; }

namespace status {

struct Resolved {
  friend bool operator==(const Resolved&, const Resolved&) = default;
};

struct Merge {
  SpeciesId reactant;
  SpeciesId product;
  friend bool operator==(const Merge&, const Merge&) = default;
};

/// `side` holds `unmatched` species with no counterpart on the other side.
struct Error {
  Side side{};
  std::size_t unmatched{};
  friend bool operator==(const Error&, const Error&) = default;
};

struct Split {
  SpeciesId target;
  std::vector<SpeciesId> counterparts;
  friend bool operator==(const Split&, const Split&) = default;
};

struct Ambiguous {
  std::size_t n{};
  std::size_t m{};
  friend bool operator==(const Ambiguous&, const Ambiguous&) = default;
};

}  // namespace status

using ReactionStatus =
    std::variant<status::Resolved, status::Merge, status::Error, status::Split, status::Ambiguous>;

inline ReactionStatus classify(const MatchResult& mr) {
  const std::size_t n = mr.n();
  const std::size_t m = mr.m();
  if (n == 0 && m == 0) return status::Resolved{};
  if (n == 1 && m == 1) return status::Merge{mr.unmatched_reactants[0].species, mr.unmatched_products[0].species};
  if (n == 0) return status::Error{Side::Products, m};
  if (m == 0) return status::Error{Side::Reactants, n};
  if (n == 1 || m == 1) {
    status::Split s;
    const auto& lone = n == 1 ? mr.unmatched_reactants : mr.unmatched_products;
    const auto& others = n == 1 ? mr.unmatched_products : mr.unmatched_reactants;
    s.target = lone[0].species;
    for (const auto& slot : others) s.counterparts.push_back(slot.species);
    return s;
  }
  return status::Ambiguous{n, m};
}

inline std::string status_name(const ReactionStatus& s) {
  struct {
    std::string operator()(const status::Resolved&) const { return "Resolved"; }
    std::string operator()(const status::Merge&) const { return "Merge"; }
    std::string operator()(const status::Error&) const { return "Error"; }
    std::string operator()(const status::Split&) const { return "Split"; }
    std::string operator()(const status::Ambiguous&) const { return "Ambiguous"; }
  } visitor;
  return std::visit(visitor, s);
}

}  // namespace pathnorm

#endif  // PATHNORM_MATCHING_HPP
