#ifndef PATHNORM_NORMALIZER_HPP
#define PATHNORM_NORMALIZER_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pathnorm/error.hpp"
#include "pathnorm/matching.hpp"
#include "pathnorm/partition.hpp"
#include "pathnorm/pathway.hpp"

namespace pathnorm {

// ---------------------------------------------------------------------------
// Event log

namespace event {
struct Pass {
  std::size_t number{};
  friend bool operator==(const Pass&, const Pass&) = default;
};
struct Split {
  std::string parent;
  std::vector<std::string> parts;
  friend bool operator==(const Split&, const Split&) = default;
};
struct Merge {
  std::string a;
  std::string b;
  friend bool operator==(const Merge&, const Merge&) = default;
};
struct Dummy {
  std::string dummy;
  std::string reaction;
  friend bool operator==(const Dummy&, const Dummy&) = default;
};
struct Resolve {
  std::string reaction;
  friend bool operator==(const Resolve&, const Resolve&) = default;
};
}  // namespace event

using Event = std::variant<event::Pass, event::Split, event::Merge, event::Dummy, event::Resolve>;
using EventLog = std::vector<Event>;

inline std::string to_string(const Event& e) {
  struct {
    std::string operator()(const event::Pass& p) const { return "PASS " + std::to_string(p.number); }
    std::string operator()(const event::Split& s) const {
      std::string out = "SPLIT " + s.parent + " ->";
      for (std::size_t i = 0; i < s.parts.size(); ++i) out += (i ? "," : " ") + s.parts[i];
      return out;
    }
    std::string operator()(const event::Merge& m) const { return "MERGE " + m.a + " " + m.b; }
    std::string operator()(const event::Dummy& d) const { return "DUMMY " + d.dummy + " @" + d.reaction; }
    std::string operator()(const event::Resolve& r) const { return "RESOLVE " + r.reaction; }
  } visitor;
  return std::visit(visitor, e);
}

inline std::string to_text(const EventLog& log) {
  std::string out;
  for (const auto& e : log) out += to_string(e) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Options, questions, resolutions, outcomes

/// What to do when a reaction asks to split a species whose component already
/// contains other live species.
enum class SplitPolicy {
  Escalate,   // report the reaction as ambiguous and let the user decide
  Propagate,  // split anyway; the other members get split through their own reactions
};

struct SpeciesContext {
  std::string species;
  std::string representative;
  std::vector<std::string> members;
};

/// The one ambiguous reaction presented to a resolver.
struct Question {
  std::string reaction_id;
  std::size_t index{};
  std::vector<std::string> reactants;
  std::vector<std::string> products;
  std::string text;         // current form
  std::string source_text;  // form in the input pathway
  std::size_t n{};
  std::size_t m{};
  std::vector<SpeciesContext> context;
};

struct SplitDeclaration {
  std::string species;
  std::vector<std::string> into;

  friend bool operator==(const SplitDeclaration&, const SplitDeclaration&) = default;
};

/// A user-asserted normal form for one ambiguous reaction: the rewritten
/// sides pair positionally, and `splits` declares the new subspecies used.
struct Resolution {
  std::string reaction_id;
  std::vector<std::string> reactants;
  std::vector<std::string> products;
  std::vector<SplitDeclaration> splits;

  friend bool operator==(const Resolution&, const Resolution&) = default;
};

using Resolver = std::function<std::optional<Resolution>(const Question&)>;

struct NormalizationOptions {
  bool dynamic_correction = false;
  std::size_t max_passes = 10000;
  SplitPolicy split_policy = SplitPolicy::Escalate;
  Resolver resolver;
};

enum class OutcomeStatus { NormalForm, Erroneous, AmbiguitiesPending, PassLimitExceeded };

inline const char* to_string(OutcomeStatus s) {
  switch (s) {
    case OutcomeStatus::NormalForm: return "NormalForm";
    case OutcomeStatus::Erroneous: return "Erroneous";
    case OutcomeStatus::AmbiguitiesPending: return "AmbiguitiesPending";
    case OutcomeStatus::PassLimitExceeded: return "PassLimitExceeded";
  }
  return "?";
}

struct NormalizationOutcome {
  OutcomeStatus status = OutcomeStatus::NormalForm;
  std::size_t erroneous = 0;
  std::size_t ambiguous = 0;
  Pathway pathway;
  ComponentPartition partition;
  EventLog log;
  std::vector<ReactionStatus> statuses;  // parallel to pathway.reactions()
  std::size_t questions_answered = 0;
  std::size_t splits = 0;
  std::size_t merges = 0;
};

// ---------------------------------------------------------------------------
// Rewriting primitives

inline bool valid_species_name(std::string_view name) {
  if (name.empty()) return false;
  if (name.front() == ' ' || name.back() == ' ') return false;
  for (char c : name) {
    if (c == ';' || c == ',' || c == '\n' || c == '\r' || c == '\t') return false;
  }
  return name.find("->") == std::string_view::npos;
}

/// Thrown when an automatic split targets a species whose component has other
/// live members and the policy asks for escalation.
class AmbiguousSplit : public StructuralError {
 public:
  explicit AmbiguousSplit(const std::string& what) : StructuralError(what) {}
};

namespace detail {

struct Counters {
  std::size_t splits = 0;
  std::size_t merges = 0;
};

inline bool merge_logged(const Pathway& pw, ComponentPartition& p, SpeciesId a, SpeciesId b, EventLog& log,
                         Counters& counters) {
  if (!p.merge(a, b)) return false;
  log.push_back(event::Merge{pw.species().name(a), pw.species().name(b)});
  ++counters.merges;
  return true;
}

/// Replaces every occurrence of `target` in every reaction with `parts`,
/// expanding in place. Returns the number of reactions touched.
inline std::size_t replace_everywhere(Pathway& pw, SpeciesId target, const std::vector<SpeciesId>& parts,
                                      std::ptrdiff_t skip_index = -1) {
  std::size_t touched = 0;
  auto expand = [&](std::vector<SpeciesId>& side) {
    if (std::find(side.begin(), side.end(), target) == side.end()) return false;
    std::vector<SpeciesId> out;
    out.reserve(side.size() + parts.size());
    for (auto s : side) {
      if (s == target) {
        out.insert(out.end(), parts.begin(), parts.end());
      } else {
        out.push_back(s);
      }
    }
    side = std::move(out);
    return true;
  };
  auto& reactions = pw.reactions();
  for (std::size_t i = 0; i < reactions.size(); ++i) {
    if (static_cast<std::ptrdiff_t>(i) == skip_index) continue;
    auto& r = reactions[i];
    bool a = expand(r.reactants);
    bool b = expand(r.products);
    if (a || b) {
      ++touched;
      if (r.origin == ReactionOrigin::Source) r.origin = ReactionOrigin::SplitRewritten;
    }
  }
  pw.free_species().erase(std::remove(pw.free_species().begin(), pw.free_species().end(), target),
                          pw.free_species().end());
  return touched;
}

/// Subspecies names "<target>-<label>", with ".k" on repeated labels.
inline std::vector<std::string> subspecies_names(const Pathway& pw, SpeciesId target,
                                                 const std::vector<SpeciesId>& counterparts) {
  std::vector<std::string> labels;
  std::map<std::string, int> total;
  for (auto c : counterparts) {
    labels.push_back(pw.species().label(c));
    ++total[labels.back()];
  }
  std::map<std::string, int> seen;
  std::vector<std::string> names;
  const std::string& base = pw.species().name(target);
  for (const auto& l : labels) {
    std::string name = base + "-" + l;
    if (total[l] > 1) name += "." + std::to_string(++seen[l]);
    names.push_back(std::move(name));
  }
  return names;
}

inline std::vector<SpeciesId> split_in_place(Pathway& pw, ComponentPartition& p, SpeciesId target,
                                             const std::vector<SpeciesId>& counterparts, SplitPolicy policy,
                                             EventLog& log, Counters& counters) {
  if (!pw.species().is_live(target) || !p.contains(target) || !pw.occurs(target)) {
    throw StructuralError("cannot split species " + std::to_string(target.value) + ": not in the pathway");
  }
  if (counterparts.size() < 2) throw StructuralError("a split needs at least two counterparts");
  for (auto c : counterparts) {
    if (!p.contains(c)) throw StructuralError("split counterpart " + std::to_string(c.value) + " is unknown");
  }
  if (policy == SplitPolicy::Escalate && p.component_of(target).size() > 1) {
    throw AmbiguousSplit("component of '" + pw.species().name(target) + "' has other live species");
  }
  auto names = subspecies_names(pw, target, counterparts);
  std::vector<SpeciesId> parts;
  std::vector<std::string> part_names;
  for (std::size_t j = 0; j < counterparts.size(); ++j) {
    SpeciesId id = pw.species().add(names[j], SplitOf{target, counterparts[j], static_cast<std::uint32_t>(j + 1)});
    p.add(id);
    parts.push_back(id);
    part_names.push_back(pw.species().name(id));
  }
  log.push_back(event::Split{pw.species().name(target), part_names});
  ++counters.splits;
  replace_everywhere(pw, target, parts);
  pw.species().retire(target);
  p.retire(target);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    merge_logged(pw, p, parts[j], counterparts[j], log, counters);
  }
  return parts;
}

}  // namespace detail

/// Splits `target` against `counterparts`: one subspecies per counterpart
/// replaces every occurrence of `target`, and each subspecies joins its
/// counterpart's component.
inline std::pair<Pathway, ComponentPartition> split_species(Pathway pw, ComponentPartition p, SpeciesId target,
                                                            const std::vector<SpeciesId>& counterparts,
                                                            SplitPolicy policy = SplitPolicy::Escalate) {
  EventLog log;
  detail::Counters counters;
  detail::split_in_place(pw, p, target, counterparts, policy, log, counters);
  return {std::move(pw), std::move(p)};
}

namespace detail {

/// Checks a resolution against the current state without mutating anything.
/// Returns the split targets resolved to ids, in declaration order.
inline std::vector<SpeciesId> validate_resolution(const Pathway& pw, const Resolution& res,
                                                  const std::vector<ReactionStatus>* statuses) {
  auto index = pw.reaction_index(res.reaction_id);
  if (index < 0) throw ValidationError("reaction_id", "unknown reaction '" + res.reaction_id + "'");
  if (statuses && (static_cast<std::size_t>(index) >= statuses->size() ||
                   !std::holds_alternative<status::Ambiguous>((*statuses)[index]))) {
    throw ValidationError("reaction_id", "reaction '" + res.reaction_id + "' is not ambiguous");
  }
  const Reaction& r = pw.reactions()[index];
  if (res.reactants.size() != res.products.size()) {
    throw ValidationError("products", "rewritten sides differ in length (" + std::to_string(res.reactants.size()) +
                                          " reactants, " + std::to_string(res.products.size()) + " products)");
  }
  if (res.reactants.empty()) throw ValidationError("reactants", "rewritten reaction is empty");

  std::vector<SpeciesId> targets;
  std::set<std::string> new_names;
  for (std::size_t k = 0; k < res.splits.size(); ++k) {
    const auto& decl = res.splits[k];
    const std::string field = "splits[" + std::to_string(k) + "]";
    auto id = pw.species().find(decl.species);
    if (!id || !pw.species().is_live(*id)) {
      throw ValidationError(field + ".species", "unknown species '" + decl.species + "'");
    }
    if (!r.mentions(*id)) {
      throw ValidationError(field + ".species", "species '" + decl.species + "' does not occur in the reaction");
    }
    if (std::find(targets.begin(), targets.end(), *id) != targets.end()) {
      throw ValidationError(field + ".species", "species '" + decl.species + "' is split twice");
    }
    if (decl.into.size() < 2) throw ValidationError(field + ".into", "a split needs at least two subspecies");
    for (const auto& n : decl.into) {
      if (!valid_species_name(n)) throw ValidationError(field + ".into", "malformed species name '" + n + "'");
      if (pw.species().find(n)) throw ValidationError(field + ".into", "species name '" + n + "' already exists");
      if (!new_names.insert(n).second) {
        throw ValidationError(field + ".into", "subspecies name '" + n + "' declared twice");
      }
    }
    targets.push_back(*id);
  }

  auto expected = [&](const std::vector<SpeciesId>& side) {
    std::multiset<std::string> out;
    for (auto s : side) {
      auto it = std::find(targets.begin(), targets.end(), s);
      if (it == targets.end()) {
        out.insert(pw.species().name(s));
      } else {
        for (const auto& n : res.splits[it - targets.begin()].into) out.insert(n);
      }
    }
    return out;
  };
  auto check_side = [&](const std::vector<std::string>& given, const std::vector<SpeciesId>& side,
                        const std::string& field) {
    for (const auto& n : given) {
      if (!new_names.contains(n)) {
        auto id = pw.species().find(n);
        if (!id || !pw.species().is_live(*id)) throw ValidationError(field, "unknown species '" + n + "'");
      }
    }
    std::multiset<std::string> got(given.begin(), given.end());
    if (got != expected(side)) {
      throw ValidationError(field, "rewritten " + field +
                                       " must be a reordering of the reaction's " + field +
                                       " with split species replaced by their subspecies");
    }
  };
  check_side(res.reactants, r.reactants, "reactants");
  check_side(res.products, r.products, "products");
  return targets;
}

inline void apply_resolution_in_place(Pathway& pw, ComponentPartition& p, const Resolution& res,
                                      const std::vector<SpeciesId>& targets, EventLog& log, Counters& counters) {
  auto index = pw.reaction_index(res.reaction_id);
  log.push_back(event::Resolve{res.reaction_id});
  for (std::size_t k = 0; k < targets.size(); ++k) {
    SpeciesId target = targets[k];
    std::vector<SpeciesId> parts;
    for (std::size_t j = 0; j < res.splits[k].into.size(); ++j) {
      SpeciesId id = pw.species().add(res.splits[k].into[j],
                                      SplitOf{target, std::nullopt, static_cast<std::uint32_t>(j + 1)});
      p.add(id);
      parts.push_back(id);
    }
    log.push_back(event::Split{pw.species().name(target), res.splits[k].into});
    ++counters.splits;
    replace_everywhere(pw, target, parts, index);
    pw.species().retire(target);
    p.retire(target);
  }
  Reaction& r = pw.reactions()[index];
  r.reactants.clear();
  r.products.clear();
  for (const auto& n : res.reactants) r.reactants.push_back(*pw.species().find(n));
  for (const auto& n : res.products) r.products.push_back(*pw.species().find(n));
  r.origin = ReactionOrigin::UserResolved;
  for (std::size_t i = 0; i < r.reactants.size(); ++i) {
    merge_logged(pw, p, r.reactants[i], r.products[i], log, counters);
  }
}

}  // namespace detail

/// Validates and applies a resolution. Throws ValidationError and leaves the
/// inputs untouched when the resolution is not acceptable.
inline std::pair<Pathway, ComponentPartition> apply_resolution(Pathway pw, ComponentPartition p,
                                                               const Resolution& res) {
  auto targets = detail::validate_resolution(pw, res, nullptr);
  EventLog log;
  detail::Counters counters;
  detail::apply_resolution_in_place(pw, p, res, targets, log, counters);
  return {std::move(pw), std::move(p)};
}

// ---------------------------------------------------------------------------
// Engine

/// One normalization session: alternates the automatic fixpoint with
/// one-at-a-time resolutions. Single writer; not internally synchronized.
class Normalizer {
 public:
  Normalizer(Pathway pw, NormalizationOptions opts)
      : Normalizer(pw, singleton_partition(pw), std::move(opts)) {}

  Normalizer(Pathway pw, ComponentPartition partition, NormalizationOptions opts)
      : pw_(std::move(pw)), partition_(std::move(partition)), opts_(std::move(opts)) {
    if (opts_.max_passes < 1) throw ValidationError("max_passes", "max_passes must be at least 1");
    if (pw_.species().size() > 0) partition_.add(SpeciesId{static_cast<std::uint32_t>(pw_.species().size() - 1)});
    for (const auto& r : pw_.reactions()) source_text_.emplace(r.id, pw_.reaction_text(r));
  }

  /// Runs classification passes until nothing changes, an error stops the
  /// run, or the pass limit is reached.
  OutcomeStatus run_phase1() {
    auto& reactions = pw_.reactions();
    for (std::size_t pass = 1; pass <= opts_.max_passes; ++pass) {
      ++passes_;
      log_.push_back(event::Pass{passes_});
      statuses_.assign(reactions.size(), status::Resolved{});
      bool changed = false;
      std::size_t errors = 0;
      std::size_t ambiguous = 0;
      for (std::size_t i = 0; i < reactions.size(); ++i) {
        ReactionStatus st = classify(match_reaction(reactions[i], partition_));
        if (auto* merge = std::get_if<status::Merge>(&st)) {
          changed |= detail::merge_logged(pw_, partition_, merge->reactant, merge->product, log_, counters_);
        } else if (auto* err = std::get_if<status::Error>(&st)) {
          if (opts_.dynamic_correction) {
            correct(i, *err);
            changed = true;
          } else {
            ++errors;
          }
        } else if (auto* split = std::get_if<status::Split>(&st)) {
          if (opts_.split_policy == SplitPolicy::Escalate && partition_.component_of(split->target).size() > 1) {
            auto mr = match_reaction(reactions[i], partition_);
            st = status::Ambiguous{mr.n(), mr.m()};
            ++ambiguous;
          } else {
            detail::split_in_place(pw_, partition_, split->target, split->counterparts, opts_.split_policy, log_,
                                   counters_);
            changed = true;
          }
        } else if (std::holds_alternative<status::Ambiguous>(st)) {
          ++ambiguous;
        }
        statuses_[i] = std::move(st);
      }
      if (errors > 0) return finish(OutcomeStatus::Erroneous, errors, ambiguous);
      if (!changed) {
        if (ambiguous > 0) return finish(OutcomeStatus::AmbiguitiesPending, 0, ambiguous);
        align_products();
        return finish(OutcomeStatus::NormalForm, 0, 0);
      }
    }
    return finish(OutcomeStatus::PassLimitExceeded, 0, 0);
  }

  /// The first ambiguous reaction in input order, if the last phase stopped
  /// with pending ambiguities.
  std::optional<Question> question() const {
    if (status_ != OutcomeStatus::AmbiguitiesPending) return std::nullopt;
    for (std::size_t i = 0; i < statuses_.size(); ++i) {
      const auto* amb = std::get_if<status::Ambiguous>(&statuses_[i]);
      if (!amb) continue;
      const Reaction& r = pw_.reactions()[i];
      Question q;
      q.reaction_id = r.id;
      q.index = i;
      q.reactants = pw_.names(r.reactants);
      q.products = pw_.names(r.products);
      q.text = pw_.reaction_text(r);
      q.source_text = source_text_.at(r.id);
      q.n = amb->n;
      q.m = amb->m;
      std::set<SpeciesId> seen;
      auto add_context = [&](SpeciesId s) {
        if (!seen.insert(s).second) return;
        SpeciesContext c;
        c.species = pw_.species().name(s);
        c.representative = pw_.species().name(partition_.find(s));
        for (auto mbr : partition_.component_of(s)) c.members.push_back(pw_.species().name(mbr));
        q.context.push_back(std::move(c));
      };
      for (auto s : r.reactants) add_context(s);
      for (auto s : r.products) add_context(s);
      return q;
    }
    return std::nullopt;
  }

  /// Applies a resolution to the pending question's reaction, then re-runs
  /// the automatic phase. On ValidationError nothing changes.
  OutcomeStatus resolve(const Resolution& res) {
    auto q = question();
    if (!q) throw ValidationError("reaction_id", "no ambiguity is pending");
    if (res.reaction_id != q->reaction_id) {
      throw ValidationError("reaction_id",
                            "reaction '" + res.reaction_id + "' is not the pending question ('" + q->reaction_id + "')");
    }
    auto targets = detail::validate_resolution(pw_, res, &statuses_);
    detail::apply_resolution_in_place(pw_, partition_, res, targets, log_, counters_);
    ++answered_;
    resolutions_.push_back(res);
    return run_phase1();
  }

  OutcomeStatus status() const { return status_; }
  const Pathway& pathway() const { return pw_; }
  const ComponentPartition& partition() const { return partition_; }
  const EventLog& log() const { return log_; }
  const std::vector<ReactionStatus>& statuses() const { return statuses_; }
  const std::vector<Resolution>& resolutions() const { return resolutions_; }
  const NormalizationOptions& options() const { return opts_; }
  std::size_t erroneous() const { return erroneous_; }
  std::size_t ambiguous() const { return ambiguous_; }

  NormalizationOutcome outcome() const {
    NormalizationOutcome o;
    o.status = status_;
    o.erroneous = erroneous_;
    o.ambiguous = ambiguous_;
    o.pathway = pw_;
    o.partition = partition_;
    o.log = log_;
    o.statuses = statuses_;
    o.questions_answered = answered_;
    o.splits = counters_.splits;
    o.merges = counters_.merges;
    return o;
  }

 private:
  OutcomeStatus finish(OutcomeStatus s, std::size_t errors, std::size_t ambiguous) {
    status_ = s;
    erroneous_ = errors;
    ambiguous_ = ambiguous;
    return s;
  }

  // One fresh dummy per unmatched species, appended to the opposite side and
  // merged with it.
  void correct(std::size_t index, const status::Error& err) {
    Reaction& r = pw_.reactions()[index];
    auto mr = match_reaction(r, partition_);
    const auto& unmatched = err.side == Side::Products ? mr.unmatched_products : mr.unmatched_reactants;
    std::vector<SpeciesId> counterparts;
    for (const auto& slot : unmatched) counterparts.push_back(slot.species);
    for (auto c : counterparts) {
      SpeciesId d = pw_.species().add("D-" + pw_.species().label(c), DummyOf{DummyOrigin::Dynamic});
      partition_.add(d);
      Reaction& target = pw_.reactions()[index];
      (err.side == Side::Products ? target.reactants : target.products).push_back(d);
      target.origin = ReactionOrigin::DynamicallyCorrected;
      log_.push_back(event::Dummy{pw_.species().name(d), target.id});
      detail::merge_logged(pw_, partition_, d, c, log_, counters_);
    }
  }

  // Reorders products so that products[i] pairs with reactants[i].
  void align_products() {
    for (auto& r : pw_.reactions()) {
      auto mr = match_reaction(r, partition_);
      std::vector<SpeciesId> products(r.products.size());
      for (const auto& pair : mr.matched) products[pair.reactant.position] = pair.product.species;
      r.products = std::move(products);
    }
  }

  Pathway pw_;
  ComponentPartition partition_;
  NormalizationOptions opts_;
  EventLog log_;
  std::vector<ReactionStatus> statuses_;
  std::vector<Resolution> resolutions_;
  std::map<std::string, std::string> source_text_;
  detail::Counters counters_;
  OutcomeStatus status_ = OutcomeStatus::NormalForm;
  std::size_t erroneous_ = 0;
  std::size_t ambiguous_ = 0;
  std::size_t passes_ = 0;
  std::size_t answered_ = 0;
};

/// Runs the automatic phase once on the given state.
inline NormalizationOutcome phase1(Pathway pw, ComponentPartition p, const NormalizationOptions& opts) {
  Normalizer engine(std::move(pw), std::move(p), opts);
  engine.run_phase1();
  return engine.outcome();
}

/// Alternates the automatic phase with resolver questions until normal form,
/// an error, a declined or absent resolver, or the pass limit.
inline NormalizationOutcome normalize(Pathway pw, ComponentPartition p, const NormalizationOptions& opts) {
  Normalizer engine(std::move(pw), std::move(p), opts);
  auto st = engine.run_phase1();
  while (st == OutcomeStatus::AmbiguitiesPending && opts.resolver) {
    auto q = engine.question();
    auto answer = opts.resolver(*q);
    if (!answer) break;
    st = engine.resolve(*answer);
  }
  return engine.outcome();
}

inline NormalizationOutcome normalize(const Pathway& pw, const NormalizationOptions& opts) {
  return normalize(pw, singleton_partition(pw), opts);
}

/// Resolver that answers questions from a fixed list, in order, and declines
/// once the list is exhausted.
inline Resolver scripted_resolver(std::vector<Resolution> script) {
  auto state = std::make_shared<std::pair<std::vector<Resolution>, std::size_t>>(std::move(script), 0);
  return [state](const Question&) -> std::optional<Resolution> {
    if (state->second >= state->first.size()) return std::nullopt;
    return state->first[state->second++];
  };
}

}  // namespace pathnorm

#endif  // PATHNORM_NORMALIZER_HPP
