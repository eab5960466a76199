#ifndef PATHNORM_SBML_HPP
#define PATHNORM_SBML_HPP

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "pathnorm/error.hpp"
#include "pathnorm/pathway.hpp"
#include "pathnorm/preprocess.hpp"

namespace pathnorm {

/// Exact stoichiometry, kept as a reduced fraction so "0.5" and "1/2" agree
/// and integrality is decidable.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  bool is_integer() const { return den == 1; }
  friend bool operator==(const Rational&, const Rational&) = default;

  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  /// Parses decimal notation with an optional exponent ("2", "0.5", "1e1").
  static std::optional<Rational> parse(std::string_view text) {
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    };
    skip_ws();
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    std::int64_t num = 0;
    std::int64_t den = 1;
    int digits = 0;
    bool fraction = false;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c == '.' && !fraction) {
        fraction = true;
        continue;
      }
      if (c < '0' || c > '9') break;
      if (++digits > 17) return std::nullopt;
      num = num * 10 + (c - '0');
      if (fraction) den *= 10;
    }
    if (digits == 0) return std::nullopt;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
      ++i;
      bool neg_exp = false;
      if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg_exp = text[i++] == '-';
      int exp = 0;
      int exp_digits = 0;
      for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
        exp = exp * 10 + (text[i] - '0');
        if (++exp_digits > 2) return std::nullopt;
      }
      if (exp_digits == 0) return std::nullopt;
      for (int k = 0; k < exp; ++k) {
        std::int64_t& target = neg_exp ? den : num;
        if (target > INT64_MAX / 10) return std::nullopt;
        target *= 10;
      }
    }
    skip_ws();
    if (i != text.size()) return std::nullopt;
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    return Rational{negative ? -num : num, den};
  }
};

struct SpeciesDecl {
  std::string id;
  std::string name;
  std::string compartment;
};

struct SpeciesRef {
  std::string species;
  Rational stoichiometry;
};

struct ReactionDecl {
  std::string id;
  bool reversible = true;
  std::vector<SpeciesRef> reactants;
  std::vector<SpeciesRef> products;
  std::vector<std::string> modifiers;
};

struct ModelDescription {
  std::string model_id;
  std::vector<SpeciesDecl> species;
  std::vector<std::string> compartments;
  std::vector<ReactionDecl> reactions;
  bool has_rules = false;
  bool has_events = false;
};

namespace detail {

namespace pt = boost::property_tree;

inline std::string_view local_name(std::string_view tag) {
  auto colon = tag.find(':');
  return colon == std::string_view::npos ? tag : tag.substr(colon + 1);
}

inline std::optional<std::string> attribute(const pt::ptree& node, const char* name) {
  if (auto attrs = node.get_child_optional("<xmlattr>")) {
    for (const auto& [key, value] : *attrs) {
      if (local_name(key) == name) return value.data();
    }
  }
  return std::nullopt;
}

inline const pt::ptree* child(const pt::ptree& node, std::string_view name) {
  for (const auto& [key, value] : node) {
    if (local_name(key) == name) return &value;
  }
  return nullptr;
}

template <typename F>
void for_each_child(const pt::ptree* node, std::string_view name, F&& f) {
  if (!node) return;
  for (const auto& [key, value] : *node) {
    if (local_name(key) == name) f(value);
  }
}

inline bool has_element_children(const pt::ptree* node) {
  if (!node) return false;
  for (const auto& [key, value] : *node) {
    if (key != "<xmlattr>" && key != "<xmlcomment>") return true;
  }
  return false;
}

inline bool parse_bool(const std::string& s) { return s == "true" || s == "1"; }

}  // namespace detail

/// Extracts species, compartments, reactions and the presence of rules and
/// events. Kinetic laws, units and annotations are ignored.
inline ModelDescription parse_sbml(std::string_view document) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(document)};
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("malformed XML: ") + e.message() + " at line " + std::to_string(e.line()));
  }
  const pt::ptree* sbml = detail::child(tree, "sbml");
  if (!sbml) throw ParseError("document has no <sbml> root element");
  const pt::ptree* model = detail::child(*sbml, "model");
  if (!model) throw ParseError("<sbml> has no <model> element");

  ModelDescription md;
  md.model_id = detail::attribute(*model, "id").value_or("");

  detail::for_each_child(detail::child(*model, "listOfCompartments"), "compartment", [&](const pt::ptree& c) {
    auto id = detail::attribute(c, "id");
    if (!id || id->empty()) throw ParseError("compartment without id");
    md.compartments.push_back(*id);
  });

  std::set<std::string> declared;
  detail::for_each_child(detail::child(*model, "listOfSpecies"), "species", [&](const pt::ptree& s) {
    auto id = detail::attribute(s, "id");
    if (!id || id->empty()) throw ParseError("species without id");
    if (!declared.insert(*id).second) throw ParseError("species '" + *id + "' declared twice");
    md.species.push_back({*id, detail::attribute(s, "name").value_or(""),
                          detail::attribute(s, "compartment").value_or("")});
  });

  std::set<std::string> reaction_ids;
  detail::for_each_child(detail::child(*model, "listOfReactions"), "reaction", [&](const pt::ptree& r) {
    ReactionDecl rd;
    auto id = detail::attribute(r, "id");
    if (!id || id->empty()) throw ParseError("reaction without id");
    if (!reaction_ids.insert(*id).second) throw ParseError("reaction '" + *id + "' declared twice");
    rd.id = *id;
    if (auto rev = detail::attribute(r, "reversible")) rd.reversible = detail::parse_bool(*rev);

    auto refs = [&](const char* list, std::vector<SpeciesRef>& out) {
      detail::for_each_child(detail::child(r, list), "speciesReference", [&](const pt::ptree& ref) {
        auto sp = detail::attribute(ref, "species");
        if (!sp || sp->empty()) throw ParseError("reaction '" + rd.id + "': species reference without species");
        if (!declared.contains(*sp)) {
          throw ParseError("reaction '" + rd.id + "' references undeclared species '" + *sp + "'");
        }
        Rational st;
        if (auto text = detail::attribute(ref, "stoichiometry")) {
          auto parsed = Rational::parse(*text);
          if (!parsed) throw ParseError("reaction '" + rd.id + "': bad stoichiometry '" + *text + "'");
          if (parsed->num <= 0) {
            throw ParseError("reaction '" + rd.id + "': stoichiometry must be positive, got '" + *text + "'");
          }
          st = *parsed;
        }
        out.push_back({*sp, st});
      });
    };
    refs("listOfReactants", rd.reactants);
    refs("listOfProducts", rd.products);
    detail::for_each_child(detail::child(r, "listOfModifiers"), "modifierSpeciesReference", [&](const pt::ptree& m) {
      auto sp = detail::attribute(m, "species");
      if (!sp || !declared.contains(*sp)) {
        throw ParseError("reaction '" + rd.id + "': modifier references undeclared species");
      }
      rd.modifiers.push_back(*sp);
    });
    md.reactions.push_back(std::move(rd));
  });

  md.has_rules = detail::has_element_children(detail::child(*model, "listOfRules"));
  md.has_events = detail::has_element_children(detail::child(*model, "listOfEvents"));
  return md;
}

// ---------------------------------------------------------------------------
// Verdicts

struct Usable {
  Pathway pathway;
  std::map<std::string, std::vector<std::string>> modifiers;  // reaction id -> modifier species
};

enum class UnusableReason { NoReactions, RulesOnly };
enum class ExcludedReason { FractionalStoichiometry };

struct Unusable {
  UnusableReason reason{};
};

struct Excluded {
  ExcludedReason reason{};
  std::string detail;  // first offending reaction
};

using IngestVerdict = std::variant<Usable, Unusable, Excluded>;

inline const char* to_string(UnusableReason r) {
  return r == UnusableReason::RulesOnly ? "rules-only" : "no-reactions";
}

inline const char* to_string(ExcludedReason) { return "fractional-stoichiometry"; }

inline std::string verdict_name(const IngestVerdict& v) {
  if (std::holds_alternative<Usable>(v)) return "usable";
  if (std::holds_alternative<Unusable>(v)) return "unusable";
  return "excluded";
}

inline std::string verdict_reason(const IngestVerdict& v) {
  if (const auto* u = std::get_if<Unusable>(&v)) return to_string(u->reason);
  if (const auto* e = std::get_if<Excluded>(&v)) return to_string(e->reason);
  return "";
}

struct IngestOptions {
  std::set<std::string> fresh_species_names;
};

/// Species are named by their SBML id. A fresh-species entry matches either
/// the id or the display name.
inline IngestVerdict to_pathway(const ModelDescription& md, const IngestOptions& opts = {}) {
  if (md.reactions.empty()) return Unusable{md.has_rules ? UnusableReason::RulesOnly : UnusableReason::NoReactions};
  for (const auto& r : md.reactions) {
    for (const auto* side : {&r.reactants, &r.products}) {
      for (const auto& ref : *side) {
        if (!ref.stoichiometry.is_integer()) {
          return Excluded{ExcludedReason::FractionalStoichiometry,
                          r.id + ": " + ref.species + " x " + ref.stoichiometry.str()};
        }
      }
    }
  }
  std::set<std::string> fresh;
  for (const auto& s : md.species) {
    if (opts.fresh_species_names.contains(s.id) || (!s.name.empty() && opts.fresh_species_names.contains(s.name))) {
      fresh.insert(s.id);
    }
  }
  Usable u;
  for (const auto& r : md.reactions) {
    auto expand = [](const std::vector<SpeciesRef>& refs) {
      std::vector<std::string> out;
      for (const auto& ref : refs) {
        for (std::int64_t k = 0; k < ref.stoichiometry.num; ++k) out.push_back(ref.species);
      }
      return out;
    };
    u.pathway.add_reaction(r.id, expand(r.reactants), expand(r.products));
    if (!r.modifiers.empty()) u.modifiers[r.id] = r.modifiers;
  }
  u.pathway = freshen(u.pathway, fresh);
  return u;
}

}  // namespace pathnorm

#endif  // PATHNORM_SBML_HPP
