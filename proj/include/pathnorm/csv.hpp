#ifndef PATHNORM_CSV_HPP
#define PATHNORM_CSV_HPP

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pathnorm/error.hpp"
#include "pathnorm/pathway.hpp"

namespace pathnorm {

// Interchange format, one reaction per line:
//
//   id;reactant,reactant,...;product,product,...
//
// Either species list may be empty. Blank lines and lines whose first
// non-blank character is '#' are skipped. Names are trimmed.

namespace detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_names(std::string_view field, std::size_t line_no) {
  std::vector<std::string> out;
  if (trim(field).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = field.find(',', start);
    auto part = trim(field.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (part.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty species name");
    out.emplace_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

inline Pathway read_csv(std::string_view text) {
  Pathway pw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      auto semi = t.find(';', start);
      fields.push_back(t.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start));
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    if (fields.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 3 ';'-separated fields, found " +
                       std::to_string(fields.size()));
    }
    std::string id(detail::trim(fields[0]));
    if (id.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty reaction id");
    if (pw.find_reaction(id)) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate reaction id '" + id + "'");
    }
    pw.add_reaction(id, detail::split_names(fields[1], line_no), detail::split_names(fields[2], line_no));
  }
  return pw;
}

inline std::string write_csv(const Pathway& pw) {
  auto check = [](const std::string& name) {
    if (name.empty() || name.find_first_of(";,\n") != std::string::npos || name.front() == '#') {
      throw StructuralError("name '" + name + "' cannot be written as CSV");
    }
  };
  std::ostringstream out;
  auto side = [&](const std::vector<SpeciesId>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto& name = pw.species().name(ids[i]);
      check(name);
      out << (i ? "," : "") << name;
    }
  };
  for (const auto& r : pw.reactions()) {
    check(r.id);
    out << r.id << ';';
    side(r.reactants);
    out << ';';
    side(r.products);
    out << '\n';
  }
  return out.str();
}

}  // namespace pathnorm

#endif  // PATHNORM_CSV_HPP
