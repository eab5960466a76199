#ifndef PATHNORM_BATCH_HPP
#define PATHNORM_BATCH_HPP

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pathnorm/ingest.hpp"
#include "pathnorm/normalizer.hpp"
#include "pathnorm/preprocess.hpp"
#include "pathnorm/verify.hpp"

namespace pathnorm {

enum class Configuration { Plain, Preprocessed, Dynamic };

inline constexpr std::array<Configuration, 3> kConfigurations{Configuration::Plain, Configuration::Preprocessed,
                                                              Configuration::Dynamic};

inline const char* to_string(Configuration c) {
  switch (c) {
    case Configuration::Plain: return "plain";
    case Configuration::Preprocessed: return "preprocessed";
    case Configuration::Dynamic: return "preprocessed+dynamic";
  }
  return "?";
}

enum class RunKind { Ok, Erroneous, Ambiguous };

struct RunOutcome {
  RunKind kind = RunKind::Ok;
  std::size_t count = 0;       // erroneous or ambiguous reactions
  std::size_t components = 0;  // when Ok

  std::string str() const {
    switch (kind) {
      case RunKind::Ok: return "Ok";
      case RunKind::Erroneous: return "Erroneous(" + std::to_string(count) + ")";
      case RunKind::Ambiguous: return "Ambiguous(" + std::to_string(count) + ")";
    }
    return "?";
  }
};

struct RunRecord {
  std::string model_id;  // file name
  std::string verdict;   // usable | unusable | excluded | parse-error
  std::string reason;
  std::size_t species_count = 0;
  std::size_t reaction_count = 0;
  std::array<std::optional<RunOutcome>, 3> outcomes;  // indexed like kConfigurations
  std::optional<std::size_t> component_count;         // dynamic configuration, when Ok
  std::size_t ambiguous_question_count = 0;           // dynamic configuration

  bool usable() const { return verdict == "usable"; }
};

struct BatchOptions {
  IngestOptions ingest;
  std::size_t max_passes = 10000;
  SplitPolicy split_policy = SplitPolicy::Escalate;
};

/// No resolver: ambiguities are counted, not asked. A pass-limit stop is
/// reported as Erroneous(0).
inline RunOutcome run_configuration(const Pathway& source, Configuration c, const BatchOptions& opts) {
  NormalizationOptions no;
  no.max_passes = opts.max_passes;
  no.split_policy = opts.split_policy;
  no.dynamic_correction = c == Configuration::Dynamic;
  Pathway pw = c == Configuration::Plain ? source : preprocess(source);
  auto out = normalize(pw, no);
  switch (out.status) {
    case OutcomeStatus::NormalForm: return {RunKind::Ok, 0, component_count(out.pathway, out.partition)};
    case OutcomeStatus::AmbiguitiesPending: return {RunKind::Ambiguous, out.ambiguous, 0};
    case OutcomeStatus::Erroneous: return {RunKind::Erroneous, out.erroneous, 0};
    case OutcomeStatus::PassLimitExceeded: return {RunKind::Erroneous, 0, 0};
  }
  return {};
}

inline RunRecord run_model(const std::filesystem::path& file, const BatchOptions& opts) {
  RunRecord rec;
  rec.model_id = file.filename().string();
  IngestVerdict verdict;
  try {
    verdict = ingest_file(file, opts.ingest);
  } catch (const Error& e) {
    rec.verdict = "parse-error";
    rec.reason = e.what();
    return rec;
  }
  rec.verdict = verdict_name(verdict);
  rec.reason = verdict_reason(verdict);
  const auto* usable = std::get_if<Usable>(&verdict);
  if (!usable) return rec;
  rec.species_count = usable->pathway.live_species().size();
  rec.reaction_count = usable->pathway.reactions().size();
  for (std::size_t i = 0; i < kConfigurations.size(); ++i) {
    rec.outcomes[i] = run_configuration(usable->pathway, kConfigurations[i], opts);
  }
  const auto& last = *rec.outcomes[2];
  if (last.kind == RunKind::Ok) rec.component_count = last.components;
  if (last.kind == RunKind::Ambiguous) rec.ambiguous_question_count = last.count;
  return rec;
}

inline bool is_model_file(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".xml" || ext == ".sbml" || ext == ".csv";
}

/// One record per model file (.xml, .sbml, .csv) directly inside
/// `directory`, in lexicographic filename order.
inline std::vector<RunRecord> run_corpus(const std::filesystem::path& directory, const BatchOptions& opts = {}) {
  if (!std::filesystem::is_directory(directory)) throw Error("'" + directory.string() + "' is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.is_regular_file() && is_model_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  std::vector<RunRecord> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(run_model(f, opts));
  return out;
}

struct SummaryRow {
  Configuration configuration{};
  std::size_t ok = 0;
  std::size_t erroneous = 0;
  std::size_t ambiguous = 0;

  std::size_t total() const { return ok + erroneous + ambiguous; }
};

struct Summary {
  std::array<SummaryRow, 3> rows{};
  std::size_t models = 0;
  std::size_t usable = 0;
  std::size_t unusable = 0;
  std::size_t excluded = 0;
  std::size_t parse_errors = 0;
  double mean_species = 0;
  double mean_reactions = 0;
  double mean_questions = 0;   // over models left ambiguous with dynamic correction
  double completion_rate = 0;  // Ok share of usable models with dynamic correction
};

inline Summary summarize(const std::vector<RunRecord>& records) {
  Summary s;
  for (std::size_t i = 0; i < kConfigurations.size(); ++i) s.rows[i].configuration = kConfigurations[i];
  double species = 0, reactions = 0, questions = 0;
  for (const auto& r : records) {
    ++s.models;
    if (r.verdict == "unusable") ++s.unusable;
    if (r.verdict == "excluded") ++s.excluded;
    if (r.verdict == "parse-error") ++s.parse_errors;
    if (!r.usable()) continue;
    ++s.usable;
    species += static_cast<double>(r.species_count);
    reactions += static_cast<double>(r.reaction_count);
    for (std::size_t i = 0; i < 3; ++i) {
      switch (r.outcomes[i]->kind) {
        case RunKind::Ok: ++s.rows[i].ok; break;
        case RunKind::Erroneous: ++s.rows[i].erroneous; break;
        case RunKind::Ambiguous: ++s.rows[i].ambiguous; break;
      }
    }
    questions += static_cast<double>(r.ambiguous_question_count);
  }
  if (s.usable > 0) {
    s.mean_species = species / static_cast<double>(s.usable);
    s.mean_reactions = reactions / static_cast<double>(s.usable);
    s.completion_rate = static_cast<double>(s.rows[2].ok) / static_cast<double>(s.usable);
  }
  if (s.rows[2].ambiguous > 0) s.mean_questions = questions / static_cast<double>(s.rows[2].ambiguous);
  return s;
}

inline std::string format_table(const Summary& s) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-22s %8s %10s %10s\n", "configuration", "Ok", "Erroneous", "Ambiguous");
  out << line;
  for (const auto& row : s.rows) {
    std::snprintf(line, sizeof line, "%-22s %8zu %10zu %10zu\n", to_string(row.configuration), row.ok, row.erroneous,
                  row.ambiguous);
    out << line;
  }
  out << "\nmodels: " << s.models << " (usable " << s.usable << ", unusable " << s.unusable << ", excluded "
      << s.excluded << ", parse errors " << s.parse_errors << ")\n";
  std::snprintf(line, sizeof line,
                "mean species: %.2f\nmean reactions: %.2f\nmean ambiguous questions: %.2f\n"
                "automatic completion: %.2f%%\n",
                s.mean_species, s.mean_reactions, s.mean_questions, 100.0 * s.completion_rate);
  out << line;
  return out.str();
}

/// Tab-separated, one line per model after a header line.
inline std::string format_records(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "model\tverdict\treason\tspecies\treactions\tplain\tpreprocessed\tdynamic\tcomponents\tquestions\n";
  for (const auto& r : records) {
    std::string reason = r.reason;
    std::replace(reason.begin(), reason.end(), '\t', ' ');
    std::replace(reason.begin(), reason.end(), '\n', ' ');
    out << r.model_id << '\t' << r.verdict << '\t' << (reason.empty() ? "-" : reason) << '\t' << r.species_count
        << '\t' << r.reaction_count;
    for (const auto& o : r.outcomes) out << '\t' << (o ? o->str() : "-");
    out << '\t' << (r.component_count ? std::to_string(*r.component_count) : "-") << '\t'
        << r.ambiguous_question_count << '\n';
  }
  return out.str();
}

}  // namespace pathnorm

#endif  // PATHNORM_BATCH_HPP
