#ifndef WWREL_WWREL_H
#define WWREL_WWREL_H

/* C interface to the relation library. Handles are opaque; every call
 * returns a status, and on failure wwrel_last_error() describes it (the
 * message is per thread and valid until the next failing call). */

#include <stddef.h>

#if defined(WWREL_BUILDING)
#define WWREL_API __attribute__((visibility("default")))
#else
#define WWREL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wwrel_status {
  WWREL_OK = 0,
  WWREL_FALSE = 1,        /* the command ran and its verdict is negative */
  WWREL_ERR_PARSE = 2,    /* malformed input, schema error, unknown name */
  WWREL_ERR_DOMAIN = 3,   /* not composable, not lagrangian, bad shape */
  WWREL_ERR_ARGUMENT = 4, /* null handle, index out of range */
  WWREL_ERR_INTERNAL = 5
} wwrel_status;

typedef enum wwrel_engine {
  WWREL_ENGINE_NONE = 0,
  WWREL_ENGINE_FINREL = 1,
  WWREL_ENGINE_SYMPLIN = 2
} wwrel_engine;

typedef enum wwrel_factor_mode {
  WWREL_FACTOR_PROP4 = 0,
  WWREL_FACTOR_WW = 1
} wwrel_factor_mode;

#define WWREL_NO_DOCUMENT ((size_t)-1)

typedef struct wwrel_documents wwrel_documents;
typedef struct wwrel_verdict wwrel_verdict;

WWREL_API const char* wwrel_last_error(void);
WWREL_API const char* wwrel_status_name(wwrel_status status);

WWREL_API wwrel_status wwrel_documents_create(wwrel_documents** out);
WWREL_API void wwrel_documents_destroy(wwrel_documents* docs);

/* Appends a document or an array of documents. On success *last (if not
 * null) receives the index of the last appended document. A failed load
 * leaves the set unchanged. */
WWREL_API wwrel_status wwrel_documents_load(wwrel_documents* docs, const char* text,
                                            size_t len, size_t* last);
WWREL_API size_t wwrel_documents_count(const wwrel_documents* docs);
WWREL_API wwrel_status wwrel_documents_find(const wwrel_documents* docs, const char* name,
                                            size_t* index);
WWREL_API wwrel_status wwrel_documents_engine(const wwrel_documents* docs, size_t index,
                                              wwrel_engine* engine);
/* *out must be released with wwrel_string_free. */
WWREL_API wwrel_status wwrel_documents_serialize(const wwrel_documents* docs, size_t index,
                                                 int pretty, char** out);

/* Commands. On WWREL_OK or WWREL_FALSE *out holds the verdict. */
WWREL_API wwrel_status wwrel_compose(const wwrel_documents* docs, size_t first, size_t second,
                                     wwrel_verdict** out);
WWREL_API wwrel_status wwrel_check(const wwrel_documents* docs, size_t subject,
                                   const char* predicate, wwrel_verdict** out);
WWREL_API wwrel_status wwrel_factorize(const wwrel_documents* docs, size_t subject,
                                       wwrel_factor_mode mode, wwrel_verdict** out);
WWREL_API wwrel_status wwrel_normalize(const wwrel_documents* docs, size_t path,
                                       wwrel_verdict** out);
/* factorization may be WWREL_NO_DOCUMENT to verify a fresh factorization. */
WWREL_API wwrel_status wwrel_verify(const wwrel_documents* docs, size_t subject,
                                    size_t factorization, wwrel_verdict** out);

WWREL_API int wwrel_verdict_ok(const wwrel_verdict* verdict);
WWREL_API wwrel_status wwrel_verdict_json(const wwrel_verdict* verdict, int pretty, char** out);
WWREL_API void wwrel_verdict_destroy(wwrel_verdict* verdict);

WWREL_API void wwrel_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* WWREL_WWREL_H */
