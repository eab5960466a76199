// Command-line front end: ingest, normalize, project, automaton, batch, serve.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pathnorm/pathnorm.hpp"
#include "pathnorm/service.hpp"

namespace fs = std::filesystem;
using namespace pathnorm;

namespace {

enum Exit { kOk = 0, kFailure = 1, kAmbiguous = 3, kErroneous = 4, kPassLimit = 5 };

struct RunFlags {
  std::string file;
  std::vector<std::string> fresh;
  bool no_preprocess = false;
  bool dynamic = false;
  std::string policy = "escalate";
  std::size_t max_passes = 10000;
  std::string resolutions;
  bool interactive = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("file", file, "SBML or CSV model")->required()->check(CLI::ExistingFile);
    cmd->add_option("--fresh-species", fresh, "replace every occurrence of NAME by a fresh dummy");
    cmd->add_flag("--no-preprocess", no_preprocess, "do not insert dummies for empty sides");
    cmd->add_flag("--dynamic", dynamic, "insert dummies at runtime for erroneous reactions");
    cmd->add_option("--policy", policy, "split policy when the target's component is not a singleton")
        ->check(CLI::IsMember({"escalate", "propagate"}));
    cmd->add_option("--max-passes", max_passes)->check(CLI::PositiveNumber);
    cmd->add_option("--resolutions", resolutions, "JSON array of resolutions answered in order")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--interactive", interactive, "ask each ambiguous reaction on the terminal");
  }
};

Pathway load(const RunFlags& f) {
  IngestOptions io{std::set<std::string>(f.fresh.begin(), f.fresh.end())};
  auto verdict = ingest_file(f.file, io);
  auto* usable = std::get_if<Usable>(&verdict);
  if (!usable) throw Error("model is " + verdict_name(verdict) + " (" + verdict_reason(verdict) + ")");
  return f.no_preprocess ? std::move(usable->pathway) : preprocess(std::move(usable->pathway));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = detail::trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

void print_question(const Question& q) {
  std::cout << "\nAmbiguous reaction " << q.reaction_id << " (n=" << q.n << ", m=" << q.m << ")\n"
            << "  now:   " << q.text << "\n"
            << "  input: " << q.source_text << "\n";
  for (const auto& c : q.context) {
    std::cout << "  " << c.species << " in component of " << c.representative << ":";
    for (const auto& m : c.members) std::cout << ' ' << m;
    std::cout << '\n';
  }
}

// One line: "R1,R2 ; P1,P2 [; SPECIES=SUB1,SUB2 ...]". Blank line stops.
Resolver terminal_resolver() {
  return [](const Question& q) -> std::optional<Resolution> {
    print_question(q);
    while (true) {
      std::cout << "resolution> " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line) || detail::trim(line).empty()) return std::nullopt;
      std::vector<std::string> parts;
      std::stringstream ss(line);
      std::string part;
      while (std::getline(ss, part, ';')) parts.emplace_back(detail::trim(part));
      if (parts.size() < 2) {
        std::cout << "expected: reactants ; products [; SPECIES=SUB1,SUB2 ...]\n";
        continue;
      }
      Resolution r{q.reaction_id, split_list(parts[0]), split_list(parts[1]), {}};
      bool ok = true;
      for (std::size_t i = 2; i < parts.size(); ++i) {
        auto eq = parts[i].find('=');
        if (eq == std::string::npos) {
          std::cout << "split must look like SPECIES=SUB1,SUB2\n";
          ok = false;
          break;
        }
        r.splits.push_back({std::string(detail::trim(parts[i].substr(0, eq))), split_list(parts[i].substr(eq + 1))});
      }
      if (ok) return r;
    }
  };
}

NormalizationOutcome run(const RunFlags& f) {
  NormalizationOptions opts;
  opts.dynamic_correction = f.dynamic;
  opts.max_passes = f.max_passes;
  opts.split_policy = f.policy == "propagate" ? SplitPolicy::Propagate : SplitPolicy::Escalate;
  Normalizer engine(load(f), opts);
  auto status = engine.run_phase1();
  std::vector<Resolution> script;
  if (!f.resolutions.empty()) {
    auto doc = json::parse(read_file(f.resolutions));
    if (!doc.is_array()) throw Error("--resolutions must hold a JSON array");
    for (const auto& r : doc) script.push_back(resolution_from_json(r));
  }
  std::size_t next = 0;
  Resolver ask = terminal_resolver();
  while (status == OutcomeStatus::AmbiguitiesPending) {
    auto q = engine.question();
    std::optional<Resolution> answer;
    bool scripted = next < script.size();
    if (scripted) {
      answer = script[next++];
    } else if (f.interactive) {
      answer = ask(*q);
    }
    if (!answer) break;
    try {
      status = engine.resolve(*answer);
    } catch (const ValidationError& e) {
      if (scripted) throw;
      std::cout << "rejected (" << e.field() << "): " << e.what() << '\n';
    }
  }
  return engine.outcome();
}

int exit_code(OutcomeStatus s) {
  switch (s) {
    case OutcomeStatus::NormalForm: return kOk;
    case OutcomeStatus::AmbiguitiesPending: return kAmbiguous;
    case OutcomeStatus::Erroneous: return kErroneous;
    case OutcomeStatus::PassLimitExceeded: return kPassLimit;
  }
  return kFailure;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

void report(const NormalizationOutcome& o, std::ostream& out) {
  out << "status: " << to_string(o.status);
  if (o.status == OutcomeStatus::Erroneous) out << " (" << o.erroneous << " reactions)";
  if (o.status == OutcomeStatus::AmbiguitiesPending) out << " (" << o.ambiguous << " reactions)";
  out << "\n\nreactions:\n";
  for (std::size_t i = 0; i < o.pathway.reactions().size(); ++i) {
    const auto& r = o.pathway.reactions()[i];
    out << "  " << r.id << ": " << o.pathway.reaction_text(r);
    if (i < o.statuses.size() && !std::holds_alternative<status::Resolved>(o.statuses[i])) {
      out << "   [" << status_name(o.statuses[i]) << "]";
    }
    out << '\n';
  }
  auto comps = present_components(o.pathway, o.partition);
  out << "\ncomponents (" << comps.size() << "):\n";
  for (const auto& c : comps) {
    out << "  " << o.pathway.species().name(c.front()) << ":";
    for (auto s : c) out << ' ' << o.pathway.species().name(s);
    out << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rewrite reaction pathways into normal form and identify molecular components"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "classify a model and optionally convert it to CSV");
  std::string ingest_file_arg, csv_out;
  std::vector<std::string> ingest_fresh;
  ingest->add_option("file", ingest_file_arg)->required()->check(CLI::ExistingFile);
  ingest->add_option("--fresh-species", ingest_fresh);
  ingest->add_option("--csv-out", csv_out, "write the extracted pathway as CSV ('-' for stdout)");

  auto* normalize_cmd = app.add_subcommand("normalize", "normalize a model and list its components");
  RunFlags norm_flags;
  norm_flags.attach(normalize_cmd);
  std::string log_out, norm_csv_out;
  normalize_cmd->add_option("--log", log_out, "write the event log");
  normalize_cmd->add_option("--csv-out", norm_csv_out, "write the resulting pathway as CSV");

  auto* project_cmd = app.add_subcommand("project", "project a normalized model onto some components");
  RunFlags proj_flags;
  proj_flags.attach(project_cmd);
  std::string keep;
  project_cmd->add_option("--keep", keep, "comma-separated component representatives")->required();

  auto* automaton_cmd = app.add_subcommand("automaton", "export one component as a DOT automaton");
  RunFlags auto_flags;
  auto_flags.attach(automaton_cmd);
  std::string component, dot_path;
  automaton_cmd->add_option("--component", component, "component representative")->required();
  automaton_cmd->add_option("--dot", dot_path, "output path ('-' for stdout)")->required();

  auto* batch_cmd = app.add_subcommand("batch", "run every model in a directory under three configurations");
  std::string dir, format = "table";
  std::vector<std::string> batch_fresh;
  batch_cmd->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
  batch_cmd->add_option("--fresh-species", batch_fresh);
  batch_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "records"}));
  std::string batch_policy = "escalate";
  batch_cmd->add_option("--policy", batch_policy)->check(CLI::IsMember({"escalate", "propagate"}));

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP session service");
  std::string addr, journal, static_dir;
  serve_cmd->add_option("--addr", addr, "HOST:PORT (default: $PATHNORM_ADDR or 127.0.0.1:8080)");
  serve_cmd->add_option("--journal", journal, "directory for per-session journals; sessions are recovered on start");
  serve_cmd->add_option("--static", static_dir, "directory served at /")->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      IngestOptions io{std::set<std::string>(ingest_fresh.begin(), ingest_fresh.end())};
      auto verdict = ingest_file(ingest_file_arg, io);
      // Keep stdout clean when the CSV goes there.
      std::ostream& info = csv_out == "-" ? std::cerr : std::cout;
      info << "verdict: " << verdict_name(verdict);
      if (auto reason = verdict_reason(verdict); !reason.empty()) info << " (" << reason << ")";
      info << '\n';
      if (const auto* u = std::get_if<Usable>(&verdict)) {
        info << "species: " << u->pathway.live_species().size() << "\nreactions: " << u->pathway.reactions().size()
                  << '\n';
        if (!csv_out.empty()) write_or_print(csv_out, write_csv(u->pathway));
      } else if (const auto* e = std::get_if<Excluded>(&verdict)) {
        info << "offending: " << e->detail << '\n';
      }
      return kOk;
    }
    if (*normalize_cmd) {
      auto o = run(norm_flags);
      report(o, log_out == "-" || norm_csv_out == "-" ? std::cerr : std::cout);
      if (!log_out.empty()) write_or_print(log_out, to_text(o.log));
      if (!norm_csv_out.empty()) write_or_print(norm_csv_out, write_csv(o.pathway));
      return exit_code(o.status);
    }
    if (*project_cmd) {
      auto o = run(proj_flags);
      if (o.status != OutcomeStatus::NormalForm) {
        std::cerr << "cannot project: status " << to_string(o.status) << '\n';
        return exit_code(o.status);
      }
      std::cout << write_csv(project(o.pathway, o.partition, split_list(keep)));
      return kOk;
    }
    if (*automaton_cmd) {
      auto o = run(auto_flags);
      if (o.status != OutcomeStatus::NormalForm) {
        std::cerr << "cannot build automaton: status " << to_string(o.status) << '\n';
        return exit_code(o.status);
      }
      write_or_print(dot_path, export_dot(to_automaton(o.pathway, o.partition, component)));
      return kOk;
    }
    if (*batch_cmd) {
      BatchOptions bo;
      bo.ingest.fresh_species_names = std::set<std::string>(batch_fresh.begin(), batch_fresh.end());
      bo.split_policy = batch_policy == "propagate" ? SplitPolicy::Propagate : SplitPolicy::Escalate;
      auto records = run_corpus(dir, bo);
      std::cout << (format == "records" ? format_records(records) : format_table(summarize(records)));
      for (const auto& r : records) {
        if (r.verdict == "parse-error") {
          std::cerr << r.model_id << ": " << r.reason << '\n';
        }
      }
      return summarize(records).parse_errors == 0 ? kOk : kFailure;
    }
    if (*serve_cmd) {
      auto [host, port] = listen_address(addr);
      std::optional<fs::path> journal_dir;
      if (!journal.empty()) journal_dir = fs::path(journal);
      SessionManager manager(journal_dir);
      if (auto n = manager.recover()) std::cerr << "recovered " << n << " sessions\n";
      httplib::Server server;
      register_routes(server, manager);
      if (!static_dir.empty()) server.set_mount_point("/", static_dir);
      std::cerr << "listening on " << host << ':' << port << '\n';
      if (!server.listen(host, port)) {
        std::cerr << "cannot listen on " << host << ':' << port << '\n';
        return kFailure;
      }
      return kOk;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error (" << e.field() << "): " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
