#include "wwrel/wwrel.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "wwrel/commands.hpp"
#include "wwrel/errors.hpp"

struct wwrel_documents {
  wwrel::DocumentSet set;
};

struct wwrel_verdict {
  wwrel::Verdict verdict;
};

namespace {

thread_local std::string last_error;

wwrel_status fail(wwrel_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, mapping exceptions onto status codes.
template <class F>
wwrel_status guarded(F&& body) {
  try {
    return body();
  } catch (const wwrel::ParseError& e) {
    return fail(WWREL_ERR_PARSE, e.what());
  } catch (const wwrel::DomainError& e) {
    return fail(WWREL_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(WWREL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WWREL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(WWREL_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wwrel_status check_index(const wwrel_documents* docs, size_t index) {
  if (docs == nullptr) return fail(WWREL_ERR_ARGUMENT, "null document set");
  if (index >= docs->set.size()) {
    return fail(WWREL_ERR_ARGUMENT, "document index " + std::to_string(index) +
                                        " out of range (have " +
                                        std::to_string(docs->set.size()) + ")");
  }
  return WWREL_OK;
}

template <class F>
wwrel_status run_command(wwrel_verdict** out, F&& command) {
  if (out == nullptr) return fail(WWREL_ERR_ARGUMENT, "null verdict output");
  *out = nullptr;
  return guarded([&] {
    auto* v = new wwrel_verdict{command()};
    *out = v;
    return v->verdict.ok ? WWREL_OK : WWREL_FALSE;
  });
}

}  // namespace

extern "C" {

const char* wwrel_last_error(void) { return last_error.c_str(); }

const char* wwrel_status_name(wwrel_status status) {
  switch (status) {
    case WWREL_OK: return "ok";
    case WWREL_FALSE: return "false";
    case WWREL_ERR_PARSE: return "parse error";
    case WWREL_ERR_DOMAIN: return "domain error";
    case WWREL_ERR_ARGUMENT: return "argument error";
    case WWREL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

wwrel_status wwrel_documents_create(wwrel_documents** out) {
  if (out == nullptr) return fail(WWREL_ERR_ARGUMENT, "null output");
  return guarded([&] {
    *out = new wwrel_documents();
    return WWREL_OK;
  });
}

void wwrel_documents_destroy(wwrel_documents* docs) { delete docs; }

wwrel_status wwrel_documents_load(wwrel_documents* docs, const char* text, size_t len,
                                  size_t* last) {
  if (docs == nullptr) return fail(WWREL_ERR_ARGUMENT, "null document set");
  if (text == nullptr && len != 0) return fail(WWREL_ERR_ARGUMENT, "null text");
  return guarded([&] {
    const size_t index = docs->set.load(std::string_view(text == nullptr ? "" : text, len));
    if (last != nullptr) *last = index;
    return WWREL_OK;
  });
}

size_t wwrel_documents_count(const wwrel_documents* docs) {
  return docs == nullptr ? 0 : docs->set.size();
}

wwrel_status wwrel_documents_find(const wwrel_documents* docs, const char* name,
                                  size_t* index) {
  if (docs == nullptr || name == nullptr || index == nullptr) {
    return fail(WWREL_ERR_ARGUMENT, "null argument");
  }
  const auto found = docs->set.find(name);
  if (!found) return fail(WWREL_ERR_PARSE, std::string("no document named \"") + name + "\"");
  *index = *found;
  return WWREL_OK;
}

wwrel_status wwrel_documents_engine(const wwrel_documents* docs, size_t index,
                                    wwrel_engine* engine) {
  if (const wwrel_status s = check_index(docs, index); s != WWREL_OK) return s;
  if (engine == nullptr) return fail(WWREL_ERR_ARGUMENT, "null output");
  const auto e = docs->set.at(index).engine();
  *engine = !e ? WWREL_ENGINE_NONE
               : (*e == wwrel::EngineKind::finrel ? WWREL_ENGINE_FINREL : WWREL_ENGINE_SYMPLIN);
  return WWREL_OK;
}

wwrel_status wwrel_documents_serialize(const wwrel_documents* docs, size_t index, int pretty,
                                       char** out) {
  if (const wwrel_status s = check_index(docs, index); s != WWREL_OK) return s;
  if (out == nullptr) return fail(WWREL_ERR_ARGUMENT, "null output");
  return guarded([&] {
    *out = copy_string(wwrel::serialize(docs->set.at(index), pretty != 0));
    return WWREL_OK;
  });
}

wwrel_status wwrel_compose(const wwrel_documents* docs, size_t first, size_t second,
                           wwrel_verdict** out) {
  if (const wwrel_status s = check_index(docs, first); s != WWREL_OK) return s;
  if (const wwrel_status s = check_index(docs, second); s != WWREL_OK) return s;
  return run_command(out, [&] {
    return wwrel::cmd_compose(docs->set.at(first), docs->set.at(second));
  });
}

wwrel_status wwrel_check(const wwrel_documents* docs, size_t subject, const char* predicate,
                         wwrel_verdict** out) {
  if (const wwrel_status s = check_index(docs, subject); s != WWREL_OK) return s;
  if (predicate == nullptr) return fail(WWREL_ERR_ARGUMENT, "null predicate");
  return run_command(out, [&] { return wwrel::cmd_check(docs->set.at(subject), predicate); });
}

wwrel_status wwrel_factorize(const wwrel_documents* docs, size_t subject,
                             wwrel_factor_mode mode, wwrel_verdict** out) {
  if (const wwrel_status s = check_index(docs, subject); s != WWREL_OK) return s;
  if (mode != WWREL_FACTOR_PROP4 && mode != WWREL_FACTOR_WW) {
    return fail(WWREL_ERR_ARGUMENT, "unknown factorization mode");
  }
  return run_command(out, [&] {
    return wwrel::cmd_factorize(docs->set.at(subject), mode == WWREL_FACTOR_PROP4
                                                           ? wwrel::FactorMode::prop4
                                                           : wwrel::FactorMode::ww);
  });
}

wwrel_status wwrel_normalize(const wwrel_documents* docs, size_t path, wwrel_verdict** out) {
  if (const wwrel_status s = check_index(docs, path); s != WWREL_OK) return s;
  return run_command(out, [&] { return wwrel::cmd_normalize(docs->set.at(path)); });
}

wwrel_status wwrel_verify(const wwrel_documents* docs, size_t subject, size_t factorization,
                          wwrel_verdict** out) {
  if (const wwrel_status s = check_index(docs, subject); s != WWREL_OK) return s;
  if (factorization != WWREL_NO_DOCUMENT) {
    if (const wwrel_status s = check_index(docs, factorization); s != WWREL_OK) return s;
  }
  return run_command(out, [&] {
    return wwrel::cmd_verify(docs->set.at(subject), factorization == WWREL_NO_DOCUMENT
                                                        ? nullptr
                                                        : &docs->set.at(factorization));
  });
}

int wwrel_verdict_ok(const wwrel_verdict* verdict) {
  return verdict != nullptr && verdict->verdict.ok ? 1 : 0;
}

wwrel_status wwrel_verdict_json(const wwrel_verdict* verdict, int pretty, char** out) {
  if (verdict == nullptr || out == nullptr) return fail(WWREL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(verdict->verdict.dump(pretty != 0));
    return WWREL_OK;
  });
}

void wwrel_verdict_destroy(wwrel_verdict* verdict) { delete verdict; }

void wwrel_string_free(char* s) { std::free(s); }

}  // extern "C"
