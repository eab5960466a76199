#ifndef PATHNORM_SERVICE_HPP
#define PATHNORM_SERVICE_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "pathnorm/analysis.hpp"
#include "pathnorm/csv.hpp"
#include "pathnorm/ingest.hpp"
#include "pathnorm/normalizer.hpp"
#include "pathnorm/preprocess.hpp"
#include "pathnorm/verify.hpp"

namespace pathnorm {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Documents

struct SessionOptions {
  bool preprocess = true;
  bool dynamic_correction = false;
  std::size_t max_passes = 10000;
  SplitPolicy split_policy = SplitPolicy::Escalate;
  std::set<std::string> fresh_species;
};

inline json to_json(const SessionOptions& o) {
  return {{"preprocess", o.preprocess},
          {"dynamic_correction", o.dynamic_correction},
          {"max_passes", o.max_passes},
          {"split_policy", o.split_policy == SplitPolicy::Escalate ? "escalate" : "propagate"},
          {"fresh_species", o.fresh_species}};
}

inline SessionOptions session_options_from_json(const json& j) {
  SessionOptions o;
  if (j.is_null()) return o;
  if (!j.is_object()) throw ValidationError("options", "options must be an object");
  try {
    o.preprocess = j.value("preprocess", o.preprocess);
    o.dynamic_correction = j.value("dynamic_correction", o.dynamic_correction);
    o.max_passes = j.value("max_passes", o.max_passes);
    auto policy = j.value("split_policy", std::string("escalate"));
    if (policy == "escalate") {
      o.split_policy = SplitPolicy::Escalate;
    } else if (policy == "propagate") {
      o.split_policy = SplitPolicy::Propagate;
    } else {
      throw ValidationError("options.split_policy", "split_policy must be 'escalate' or 'propagate'");
    }
    if (j.contains("fresh_species")) o.fresh_species = j.at("fresh_species").get<std::set<std::string>>();
  } catch (const json::exception& e) {
    throw ValidationError("options", e.what());
  }
  if (o.max_passes < 1) throw ValidationError("options.max_passes", "max_passes must be at least 1");
  return o;
}

inline json to_json(const Resolution& r) {
  json splits = json::array();
  for (const auto& s : r.splits) splits.push_back({{"species", s.species}, {"into", s.into}});
  return {{"reaction_id", r.reaction_id}, {"reactants", r.reactants}, {"products", r.products}, {"splits", splits}};
}

inline Resolution resolution_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("", "resolution must be an object");
  auto field = [&](const char* name) -> const json& {
    if (!j.contains(name)) throw ValidationError(name, std::string("missing field '") + name + "'");
    return j.at(name);
  };
  auto strings = [&](const json& v, const std::string& name) {
    if (!v.is_array()) throw ValidationError(name, name + " must be an array of species names");
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) throw ValidationError(name, name + " must be an array of species names");
      out.push_back(e.get<std::string>());
    }
    return out;
  };
  Resolution r;
  if (!field("reaction_id").is_string()) throw ValidationError("reaction_id", "reaction_id must be a string");
  r.reaction_id = j.at("reaction_id").get<std::string>();
  r.reactants = strings(field("reactants"), "reactants");
  r.products = strings(field("products"), "products");
  if (j.contains("splits")) {
    const auto& splits = j.at("splits");
    if (!splits.is_array()) throw ValidationError("splits", "splits must be an array");
    for (std::size_t k = 0; k < splits.size(); ++k) {
      const std::string f = "splits[" + std::to_string(k) + "]";
      const auto& s = splits[k];
      if (!s.is_object() || !s.contains("species") || !s.at("species").is_string()) {
        throw ValidationError(f + ".species", "split needs a species name");
      }
      if (!s.contains("into")) throw ValidationError(f + ".into", "split needs an 'into' list");
      r.splits.push_back({s.at("species").get<std::string>(), strings(s.at("into"), f + ".into")});
    }
  }
  return r;
}

inline json question_json(const Question& q) {
  json context = json::array();
  for (const auto& c : q.context) {
    context.push_back({{"species", c.species}, {"representative", c.representative}, {"members", c.members}});
  }
  return {{"reaction_id", q.reaction_id}, {"reactants", q.reactants}, {"products", q.products},
          {"text", q.text},               {"source_text", q.source_text}, {"n", q.n},
          {"m", q.m},                     {"context", context}};
}

inline json components_json(const Pathway& pw, const ComponentPartition& p) {
  json out = json::array();
  for (const auto& cls : present_components(pw, p)) {
    out.push_back({{"representative", pw.species().name(cls.front())}, {"members", pw.names(cls)}});
  }
  return out;
}

inline json reactions_json(const Pathway& pw, const std::vector<ReactionStatus>* statuses = nullptr) {
  json out = json::array();
  for (std::size_t i = 0; i < pw.reactions().size(); ++i) {
    const auto& r = pw.reactions()[i];
    json doc = {{"id", r.id},
                {"reactants", pw.names(r.reactants)},
                {"products", pw.names(r.products)},
                {"text", pw.reaction_text(r)},
                {"origin", to_string(r.origin)}};
    if (statuses && i < statuses->size()) doc["status"] = status_name((*statuses)[i]);
    out.push_back(std::move(doc));
  }
  return out;
}

inline json log_json(const EventLog& log) {
  json out = json::array();
  for (const auto& e : log) out.push_back(to_string(e));
  return out;
}

// ---------------------------------------------------------------------------
// Sessions

/// Signals a request that conflicts with the session state (for example a
/// resolution for a reaction that is not the pending question).
class ConflictError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Rejected model: parsed, but not usable or excluded.
class UnusableModelError : public Error {
 public:
  UnusableModelError(std::string verdict, std::string reason)
      : Error("model is " + verdict + " (" + reason + ")"), verdict_(std::move(verdict)), reason_(std::move(reason)) {}
  const std::string& verdict() const { return verdict_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string verdict_;
  std::string reason_;
};

class Session {
 public:
  Session(std::string id, std::string model, ModelFormat format, SessionOptions options)
      : id_(std::move(id)), model_(std::move(model)), format_(format), options_(std::move(options)) {
    IngestVerdict verdict = ingest_text(model_, format_, IngestOptions{options_.fresh_species});
    auto* usable = std::get_if<Usable>(&verdict);
    if (!usable) throw UnusableModelError(verdict_name(verdict), verdict_reason(verdict));
    Pathway pw = options_.preprocess ? preprocess(std::move(usable->pathway)) : std::move(usable->pathway);
    NormalizationOptions no;
    no.dynamic_correction = options_.dynamic_correction;
    no.max_passes = options_.max_passes;
    no.split_policy = options_.split_policy;
    engine_ = std::make_unique<Normalizer>(std::move(pw), no);
    engine_->run_phase1();
  }

  const std::string& id() const { return id_; }
  std::mutex& mutex() const { return mutex_; }
  const Normalizer& engine() const { return *engine_; }
  const std::string& model() const { return model_; }
  ModelFormat format() const { return format_; }
  const SessionOptions& options() const { return options_; }

  json summary() const {
    return {{"session_id", id_},
            {"status", to_string(engine_->status())},
            {"erroneous", engine_->erroneous()},
            {"ambiguous", engine_->ambiguous()},
            {"components", component_count(engine_->pathway(), engine_->partition())},
            {"questions_answered", engine_->resolutions().size()}};
  }

  json state() const {
    json doc = summary();
    doc["options"] = to_json(options_);
    doc["component_list"] = components_json(engine_->pathway(), engine_->partition());
    doc["reactions"] = reactions_json(engine_->pathway(), &engine_->statuses());
    doc["log"] = log_json(engine_->log());
    return doc;
  }

  std::optional<Question> question() const { return engine_->question(); }

  /// Conflicts (no pending question, wrong reaction) throw ConflictError;
  /// invalid content throws ValidationError. Either way the state is kept.
  void resolve(const Resolution& res) {
    auto q = engine_->question();
    if (!q) throw ConflictError(std::string("session is ") + to_string(engine_->status()) + "; nothing to resolve");
    if (res.reaction_id != q->reaction_id) {
      throw ConflictError("reaction '" + res.reaction_id + "' is not the pending question ('" + q->reaction_id + "')");
    }
    engine_->resolve(res);
  }

  void require_normal_form() const {
    if (engine_->status() != OutcomeStatus::NormalForm) {
      throw ConflictError(std::string("session is ") + to_string(engine_->status()) + ", not NormalForm");
    }
  }

  json projection(const std::vector<std::string>& keep) const {
    require_normal_form();
    Pathway projected = project(engine_->pathway(), engine_->partition(), keep);
    return {{"keep", keep}, {"reactions", reactions_json(projected)}, {"csv", write_csv(projected)}};
  }

  std::string automaton_dot(const std::string& representative) const {
    require_normal_form();
    return export_dot(to_automaton(engine_->pathway(), engine_->partition(), representative));
  }

 private:
  std::string id_;
  std::string model_;
  ModelFormat format_;
  SessionOptions options_;
  std::unique_ptr<Normalizer> engine_;
  mutable std::mutex mutex_;
};

/// In-memory session registry. Every command on one session runs under that
/// session's mutex; the registry itself is guarded separately. With a journal
/// directory, each session appends its creation and accepted resolutions to
/// "<dir>/<id>.jsonl" and recover() rebuilds sessions from those files.
class SessionManager {
 public:
  explicit SessionManager(std::optional<std::filesystem::path> journal_dir = std::nullopt)
      : journal_dir_(std::move(journal_dir)), rng_(std::random_device{}()) {
    if (journal_dir_) std::filesystem::create_directories(*journal_dir_);
  }

  std::shared_ptr<Session> create(std::string model, ModelFormat format, SessionOptions options) {
    auto session = std::make_shared<Session>(new_id(), std::move(model), format, std::move(options));
    journal(*session, {{"type", "create"},
                       {"model", session->model()},
                       {"format", session->format() == ModelFormat::Csv ? "csv" : "sbml"},
                       {"options", to_json(session->options())}});
    std::unique_lock lock(registry_mutex_);
    sessions_[session->id()] = session;
    return session;
  }

  std::shared_ptr<Session> get(const std::string& id) const {
    std::shared_lock lock(registry_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw NotFoundError("unknown session '" + id + "'");
    return it->second;
  }

  bool erase(const std::string& id) {
    std::unique_lock lock(registry_mutex_);
    return sessions_.erase(id) > 0;
  }

  std::size_t size() const {
    std::shared_lock lock(registry_mutex_);
    return sessions_.size();
  }

  /// Validates and applies under the session lock, then journals.
  json resolve(const std::string& id, const Resolution& res) {
    auto session = get(id);
    std::lock_guard lock(session->mutex());
    session->resolve(res);
    journal(*session, {{"type", "resolution"}, {"resolution", to_json(res)}});
    return session->state();
  }

  /// Rebuilds every journaled session. Returns the number recovered.
  std::size_t recover() {
    if (!journal_dir_) return 0;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(*journal_dir_)) {
      if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::size_t count = 0;
    for (const auto& f : files) {
      auto session = replay_file(f);
      std::unique_lock lock(registry_mutex_);
      sessions_[session->id()] = session;
      ++count;
    }
    return count;
  }

  /// Creates a session from the journal's create entry and re-applies its
  /// resolutions. Does not write to any journal.
  static std::shared_ptr<Session> replay_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("cannot read journal '" + file.string() + "'");
    std::shared_ptr<Session> session;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json entry;
      try {
        entry = json::parse(line);
      } catch (const json::exception& e) {
        throw Error("corrupt journal '" + file.string() + "': " + e.what());
      }
      if (entry.at("type") == "create") {
        auto format = entry.at("format") == "csv" ? ModelFormat::Csv : ModelFormat::Sbml;
        session = std::make_shared<Session>(file.stem().string(), entry.at("model").get<std::string>(), format,
                                            session_options_from_json(entry.at("options")));
      } else if (entry.at("type") == "resolution") {
        if (!session) throw Error("journal '" + file.string() + "' resolves before creating");
        session->resolve(resolution_from_json(entry.at("resolution")));
      }
    }
    if (!session) throw Error("journal '" + file.string() + "' has no create entry");
    return session;
  }

  const std::optional<std::filesystem::path>& journal_dir() const { return journal_dir_; }

 private:
  std::string new_id() {
    std::lock_guard lock(rng_mutex_);
    static const char* hex = "0123456789abcdef";
    std::string id;
    do {
      id.clear();
      auto v = rng_();
      for (int i = 0; i < 16; ++i) id += hex[(v >> (4 * i)) & 0xf];
    } while (contains(id));
    return id;
  }

  bool contains(const std::string& id) const {
    std::shared_lock lock(registry_mutex_);
    return sessions_.contains(id);
  }

  void journal(const Session& s, const json& entry) const {
    if (!journal_dir_) return;
    std::ofstream out(*journal_dir_ / (s.id() + ".jsonl"), std::ios::app);
    out << entry.dump() << '\n';
    out.flush();
  }

  std::optional<std::filesystem::path> journal_dir_;
  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// HTTP

namespace detail {

inline void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, int status, const std::string& message, const std::string& field = "") {
  json body = {{"error", message}};
  if (!field.empty()) body["field"] = field;
  send_json(res, status, body);
}

// Maps library exceptions onto status codes.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const NotFoundError& e) {
    send_error(res, 404, e.what());
  } catch (const ConflictError& e) {
    send_error(res, 409, e.what());
  } catch (const ValidationError& e) {
    send_error(res, 422, e.what(), e.field());
  } catch (const UnusableModelError& e) {
    json body = {{"error", e.what()}, {"verdict", e.verdict()}, {"reason", e.reason()}};
    send_json(res, 422, body);
  } catch (const ParseError& e) {
    send_error(res, 400, e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, std::string("malformed request body: ") + e.what());
  } catch (const Error& e) {
    send_error(res, 400, e.what());
  }
}

inline json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

/// Registers the session API on `server`:
///
///   POST   /sessions                      create (JSON, or raw CSV/SBML body)
///   GET    /sessions/:id                  state
///   DELETE /sessions/:id
///   GET    /sessions/:id/question         200 question, 204 when none
///   POST   /sessions/:id/resolution       422 invalid, 409 not pending
///   POST   /sessions/:id/projection       {"keep": [...]}
///   GET    /sessions/:id/automaton?component=REP   DOT text
inline void register_routes(httplib::Server& server, SessionManager& manager) {
  server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    detail::send_json(res, 200, {{"status", "ok"}});
  });

  server.Post("/sessions", [&manager](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      std::string model;
      ModelFormat format = ModelFormat::Sbml;
      SessionOptions options;
      const auto type = req.get_header_value("Content-Type");
      if (type.find("json") != std::string::npos) {
        json body = detail::parse_body(req);
        if (!body.is_object() || !body.contains("model") || !body.at("model").is_string()) {
          throw ValidationError("model", "request needs a 'model' string");
        }
        model = body.at("model").get<std::string>();
        auto f = body.value("format", std::string("sbml"));
        if (f != "csv" && f != "sbml") throw ValidationError("format", "format must be 'csv' or 'sbml'");
        format = f == "csv" ? ModelFormat::Csv : ModelFormat::Sbml;
        options = session_options_from_json(body.value("options", json()));
      } else {
        model = req.body;
        format = type.find("csv") != std::string::npos || req.get_param_value("format") == "csv" ? ModelFormat::Csv
                                                                                                 : ModelFormat::Sbml;
        if (req.has_param("dynamic_correction")) options.dynamic_correction = req.get_param_value("dynamic_correction") == "true";
        if (req.has_param("preprocess")) options.preprocess = req.get_param_value("preprocess") != "false";
        for (std::size_t i = 0; i < req.get_param_value_count("fresh_species"); ++i) {
          options.fresh_species.insert(req.get_param_value("fresh_species", i));
        }
      }
      auto session = manager.create(std::move(model), format, std::move(options));
      std::lock_guard lock(session->mutex());
      detail::send_json(res, 201, session->summary());
    });
  });

  server.Get(R"(/sessions/([0-9a-f]+))", [&manager](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      auto session = manager.get(req.matches[1]);
      std::lock_guard lock(session->mutex());
      detail::send_json(res, 200, session->state());
    });
  });

  server.Delete(R"(/sessions/([0-9a-f]+))", [&manager](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      if (!manager.erase(req.matches[1])) throw NotFoundError("unknown session '" + std::string(req.matches[1]) + "'");
      res.status = 204;
    });
  });

  server.Get(R"(/sessions/([0-9a-f]+)/question)", [&manager](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      auto session = manager.get(req.matches[1]);
      std::lock_guard lock(session->mutex());
      auto q = session->question();
      if (!q) {
        res.status = 204;
        return;
      }
      detail::send_json(res, 200, question_json(*q));
    });
  });

  server.Post(R"(/sessions/([0-9a-f]+)/resolution)", [&manager](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      manager.get(req.matches[1]);
      Resolution resolution = resolution_from_json(detail::parse_body(req));
      detail::send_json(res, 200, manager.resolve(req.matches[1], resolution));
    });
  });

  server.Post(R"(/sessions/([0-9a-f]+)/projection)", [&manager](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      auto session = manager.get(req.matches[1]);
      json body = detail::parse_body(req);
      if (!body.is_object() || !body.contains("keep") || !body.at("keep").is_array()) {
        throw ValidationError("keep", "request needs a 'keep' array of representatives");
      }
      std::vector<std::string> keep;
      for (const auto& k : body.at("keep")) {
        if (!k.is_string()) throw ValidationError("keep", "representatives must be strings");
        keep.push_back(k.get<std::string>());
      }
      std::lock_guard lock(session->mutex());
      detail::send_json(res, 200, session->projection(keep));
    });
  });

  server.Get(R"(/sessions/([0-9a-f]+)/automaton)", [&manager](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      auto session = manager.get(req.matches[1]);
      if (!req.has_param("component")) throw ValidationError("component", "missing 'component' query parameter");
      std::lock_guard lock(session->mutex());
      res.set_content(session->automaton_dot(req.get_param_value("component")), "text/vnd.graphviz");
    });
  });
}

/// "HOST:PORT" from the argument, else PATHNORM_ADDR, else 127.0.0.1:8080.
inline std::pair<std::string, int> listen_address(const std::string& flag) {
  std::string addr = flag;
  if (addr.empty()) {
    if (const char* env = std::getenv("PATHNORM_ADDR")) addr = env;
  }
  if (addr.empty()) addr = "127.0.0.1:8080";
  auto colon = addr.rfind(':');
  if (colon == std::string::npos) throw ValidationError("addr", "address must be HOST:PORT, got '" + addr + "'");
  int port = 0;
  try {
    port = std::stoi(addr.substr(colon + 1));
  } catch (const std::exception&) {
    throw ValidationError("addr", "bad port in '" + addr + "'");
  }
  if (port < 0 || port > 65535) throw ValidationError("addr", "bad port in '" + addr + "'");
  return {addr.substr(0, colon), port};
}

}  // namespace pathnorm

#endif  // PATHNORM_SERVICE_HPP
