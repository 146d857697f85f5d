// Command-line front end over the C interface.
//
//   wwrel [--file F]... [--engine finrel|symplin] [--json|--pretty] <command> ...
//
// Exit status: 0 ok/true, 1 false, 2 parse or usage error, 3 domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wwrel/wwrel.h"

namespace {

constexpr int kExitUsage = 2;

struct CliError {
  wwrel_status status;
  std::string message;
};

std::string json_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

class Session {
 public:
  Session() {
    if (wwrel_documents_create(&docs_) != WWREL_OK) throw CliError{WWREL_ERR_INTERNAL, wwrel_last_error()};
  }
  ~Session() { wwrel_documents_destroy(docs_); }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const wwrel_documents* docs() const { return docs_; }

  size_t load_file(const std::string& path) {
    std::string text;
    if (path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw CliError{WWREL_ERR_PARSE, "cannot read file \"" + path + "\""};
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    size_t last = 0;
    const wwrel_status status = wwrel_documents_load(docs_, text.data(), text.size(), &last);
    if (status != WWREL_OK) {
      throw CliError{status, (path == "-" ? std::string("<stdin>") : path) + ": " +
                                 wwrel_last_error()};
    }
    if (path != "-") loaded_[path] = last;
    return last;
  }

  // A loaded document name, or a file (or "-") whose last document is meant.
  size_t resolve(const std::string& ref) {
    size_t index = 0;
    if (ref != "-" && wwrel_documents_find(docs_, ref.c_str(), &index) == WWREL_OK) return index;
    if (const auto it = loaded_.find(ref); it != loaded_.end()) return it->second;
    if (ref == "-" || std::ifstream(ref).good()) return load_file(ref);
    throw CliError{WWREL_ERR_PARSE,
                   "\"" + ref + "\" is neither a loaded document name nor a readable file"};
  }

  void require_engine(size_t index, const std::optional<std::string>& engine) {
    if (!engine) return;
    wwrel_engine actual = WWREL_ENGINE_NONE;
    if (wwrel_documents_engine(docs_, index, &actual) != WWREL_OK) {
      throw CliError{WWREL_ERR_INTERNAL, wwrel_last_error()};
    }
    const wwrel_engine wanted = *engine == "finrel" ? WWREL_ENGINE_FINREL : WWREL_ENGINE_SYMPLIN;
    if (actual != WWREL_ENGINE_NONE && actual != wanted) {
      throw CliError{WWREL_ERR_PARSE, "document belongs to the " +
                                          std::string(actual == WWREL_ENGINE_FINREL ? "finrel"
                                                                                    : "symplin") +
                                          " engine, not " + *engine};
    }
  }

 private:
  wwrel_documents* docs_ = nullptr;
  std::map<std::string, size_t> loaded_;
};

int emit_verdict(wwrel_status status, wwrel_verdict* verdict, bool pretty) {
  if (status != WWREL_OK && status != WWREL_FALSE) throw CliError{status, wwrel_last_error()};
  char* text = nullptr;
  const wwrel_status shown = wwrel_verdict_json(verdict, pretty ? 1 : 0, &text);
  wwrel_verdict_destroy(verdict);
  if (shown != WWREL_OK) throw CliError{shown, wwrel_last_error()};
  std::cout << text << '\n';
  wwrel_string_free(text);
  return status == WWREL_OK ? 0 : 1;
}

int emit_error(const std::string& command, const CliError& e, bool pretty) {
  const std::string status = wwrel_status_name(e.status);
  const std::string message = json_escape(e.message);
  if (pretty) {
    std::cout << "{\n  \"command\": \"" << command << "\",\n  \"error\": {\n    \"message\": \""
              << message << "\",\n    \"status\": \"" << status << "\"\n  },\n  \"ok\": false\n}\n";
  } else {
    std::cout << "{\"command\":\"" << command << "\",\"error\":{\"message\":\"" << message
              << "\",\"status\":\"" << status << "\"},\"ok\":false}\n";
  }
  std::cerr << "wwrel: " << status << ": " << e.message << '\n';
  switch (e.status) {
    case WWREL_ERR_DOMAIN: return 3;
    case WWREL_ERR_PARSE:
    case WWREL_ERR_ARGUMENT: return kExitUsage;
    default: return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact relation calculus: compose, classify, factorize and normalize."};
  app.name("wwrel");
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::optional<std::string> engine;
  bool pretty = false;
  bool json = false;
  app.add_option("--file", files, "Load documents from a file before running (repeatable)");
  app.add_option("--engine", engine, "Require the subject to belong to this engine")
      ->check(CLI::IsMember({"finrel", "symplin"}));
  auto* json_flag = app.add_flag("--json", json, "Compact JSON output (default)");
  app.add_flag("--pretty", pretty, "Indented JSON output")->excludes(json_flag);

  std::string first, second, predicate, mode = "ww";
  std::optional<std::string> factorization;

  auto* compose = app.add_subcommand("compose", "Compose two relations or concatenate two paths");
  compose->add_option("first", first, "Left factor (document name or file)")->required();
  compose->add_option("second", second, "Right factor (document name or file)")->required();

  auto* check = app.add_subcommand("check", "Test a predicate; exit 0 if it holds, 1 if not");
  check->add_option("subject", first, "Relation (document name or file)")->required();
  check->add_option("predicate", predicate,
                    "lagrangian, surjective, cosurjective, injective, coinjective, reduction "
                    "or coreduction")
      ->required();

  auto* factorize = app.add_subcommand("factorize", "Factor a word as a reduction after a coreduction");
  factorize->add_option("subject", first, "Canonical relation or symplin path")->required();
  factorize->add_option("--mode", mode, "prop4 (single relation) or ww (whole word)")
      ->check(CLI::IsMember({"prop4", "ww"}));

  auto* normalize = app.add_subcommand("normalize", "Collapse strongly transversal junctions");
  normalize->add_option("subject", first, "Path or relation")->required();

  auto* verify = app.add_subcommand("verify", "Replay a factorization against a word");
  verify->add_option("subject", first, "Canonical relation or symplin path")->required();
  verify->add_option("factorization", factorization,
                     "Factorization document (default: factorize afresh)");

  for (auto* sub : {compose, check, factorize, normalize, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Session session;
    for (const std::string& f : files) session.load_file(f);
    const size_t subject = session.resolve(first);
    session.require_engine(subject, engine);
    wwrel_verdict* verdict = nullptr;
    wwrel_status status = WWREL_OK;

    if (command == "compose") {
      const size_t other = session.resolve(second);
      session.require_engine(other, engine);
      status = wwrel_compose(session.docs(), subject, other, &verdict);
    } else if (command == "check") {
      status = wwrel_check(session.docs(), subject, predicate.c_str(), &verdict);
    } else if (command == "factorize") {
      status = wwrel_factorize(session.docs(), subject,
                               mode == "prop4" ? WWREL_FACTOR_PROP4 : WWREL_FACTOR_WW, &verdict);
    } else if (command == "normalize") {
      status = wwrel_normalize(session.docs(), subject, &verdict);
    } else {
      const size_t fact = factorization ? session.resolve(*factorization) : WWREL_NO_DOCUMENT;
      status = wwrel_verify(session.docs(), subject, fact, &verdict);
    }
    return emit_verdict(status, verdict, pretty);
  } catch (const CliError& e) {
    return emit_error(command, e, pretty);
  }
}
