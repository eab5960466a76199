#ifndef PATHNORM_INGEST_HPP
#define PATHNORM_INGEST_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pathnorm/csv.hpp"
#include "pathnorm/preprocess.hpp"
#include "pathnorm/sbml.hpp"

namespace pathnorm {

enum class ModelFormat { Sbml, Csv };

/// ".csv" is CSV; anything else is SBML.
inline ModelFormat format_of(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".csv" ? ModelFormat::Csv : ModelFormat::Sbml;
}

inline IngestVerdict ingest_text(std::string_view text, ModelFormat format, const IngestOptions& opts = {}) {
  if (format == ModelFormat::Sbml) return to_pathway(parse_sbml(text), opts);
  Pathway pw = read_csv(text);
  if (pw.reactions().empty()) return Unusable{UnusableReason::NoReactions};
  return Usable{freshen(pw, opts.fresh_species_names), {}};
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline IngestVerdict ingest_file(const std::filesystem::path& path, const IngestOptions& opts = {}) {
  return ingest_text(read_file(path), format_of(path), opts);
}

}  // namespace pathnorm

#endif  // PATHNORM_INGEST_HPP
