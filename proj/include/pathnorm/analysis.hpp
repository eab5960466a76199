#ifndef PATHNORM_ANALYSIS_HPP
#define PATHNORM_ANALYSIS_HPP

#include <set>
#include <string>
#include <vector>

#include "pathnorm/error.hpp"
#include "pathnorm/partition.hpp"
#include "pathnorm/pathway.hpp"
#include "pathnorm/verify.hpp"

namespace pathnorm {

namespace detail {

inline void require_normal_form(const Pathway& pw, const ComponentPartition& p) {
  auto v = normal_form_violations(pw, p);
  if (!v.empty()) throw ValidationError("pathway", "pathway is not in normal form: " + v.front());
}

inline SpeciesId require_representative(const Pathway& pw, const ComponentPartition& p, std::string_view name,
                                        const std::string& field) {
  auto id = pw.species().find(name);
  if (!id || !p.contains(*id)) throw ValidationError(field, "unknown species '" + std::string(name) + "'");
  if (p.find(*id) != *id) {
    throw ValidationError(field, "'" + std::string(name) + "' is not a component representative (the representative is '" +
                                     pw.species().name(p.find(*id)) + "')");
  }
  return *id;
}

}  // namespace detail

/// Restricts a normal-form pathway to the positional pairs whose component
/// representative is in `keep`. Reactions left empty or left without any
/// state change are dropped; duplicates keep their own ids.
inline Pathway project(const Pathway& pw, const ComponentPartition& p, const std::set<SpeciesId>& keep) {
  detail::require_normal_form(pw, p);
  for (auto k : keep) {
    if (!p.contains(k) || p.find(k) != k) {
      throw ValidationError("keep", "species " + std::to_string(k.value) + " is not a component representative");
    }
  }
  Pathway out;
  out.species() = pw.species();
  for (const auto& r : pw.reactions()) {
    Reaction kept{r.id, {}, {}, r.origin};
    for (std::size_t i = 0; i < r.reactants.size(); ++i) {
      if (keep.contains(p.find(r.reactants[i]))) {
        kept.reactants.push_back(r.reactants[i]);
        kept.products.push_back(r.products[i]);
      }
    }
    if (kept.reactants.empty() || kept.reactants == kept.products) continue;
    out.reactions().push_back(std::move(kept));
  }
  return out;
}

/// Name-based variant for the CLI and the service.
inline Pathway project(const Pathway& pw, const ComponentPartition& p, const std::vector<std::string>& keep) {
  detail::require_normal_form(pw, p);
  std::set<SpeciesId> ids;
  for (const auto& name : keep) ids.insert(detail::require_representative(pw, p, name, "keep"));
  return project(pw, p, ids);
}

struct Transition {
  SpeciesId from;
  SpeciesId to;
  std::string label;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct ComponentAutomaton {
  SpeciesId component;
  std::vector<SpeciesId> states;
  std::vector<std::string> state_names;  // parallel to states
  std::vector<Transition> transitions;

  const std::string& name_of(SpeciesId s) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i] == s) return state_names[i];
    }
    throw StructuralError("species " + std::to_string(s.value) + " is not a state");
  }
};

inline ComponentAutomaton to_automaton(const Pathway& pw, const ComponentPartition& p, SpeciesId component) {
  detail::require_normal_form(pw, p);
  if (!p.contains(component)) {
    throw ValidationError("component", "species " + std::to_string(component.value) + " is not a live component");
  }
  ComponentAutomaton a;
  a.component = p.find(component);
  a.states = p.component_of(component);
  for (auto s : a.states) a.state_names.push_back(pw.species().name(s));
  for (const auto& r : pw.reactions()) {
    for (std::size_t i = 0; i < r.reactants.size(); ++i) {
      if (r.reactants[i] == r.products[i] || !p.same(r.reactants[i], component)) continue;
      a.transitions.push_back({r.reactants[i], r.products[i], r.id});
    }
  }
  return a;
}

inline ComponentAutomaton to_automaton(const Pathway& pw, const ComponentPartition& p, std::string_view representative) {
  detail::require_normal_form(pw, p);
  return to_automaton(pw, p, detail::require_representative(pw, p, representative, "component"));
}

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Nodes in state order, edges in reaction order.
inline std::string export_dot(const ComponentAutomaton& a) {
  std::string out = "digraph " + (a.states.empty() ? std::string("c") : detail::dot_quote(a.name_of(a.component))) + " {\n";
  for (const auto& name : a.state_names) out += "  " + detail::dot_quote(name) + ";\n";
  for (const auto& t : a.transitions) {
    out += "  " + detail::dot_quote(a.name_of(t.from)) + " -> " + detail::dot_quote(a.name_of(t.to)) +
           " [label=" + detail::dot_quote(t.label) + "];\n";
  }
  return out + "}\n";
}

}  // namespace pathnorm

#endif  // PATHNORM_ANALYSIS_HPP
