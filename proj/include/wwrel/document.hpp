#pragma once

// JSON documents for sets, relations, spaces, canonical relations, paths and
// factorizations.
//
//   {"finset": {"name": "X", "elements": ["a", "b"]}}
//   {"finrel": {"target": <finset body | name>, "source": ..., "pairs": [["a", "1"]]}}
//   {"space":  {"blocks": [[half_dim, sign], ...]}}
//   {"canrel": {"target": <space body | name>, "source": ..., "basis": [["p/q", ...], ...]}}
//   {"path":   {"engine": "finrel" | "symplin", "word": [<document | name>, ...],
//               "object": <object body | name>}}
//   {"factorization": {"A": <canrel body>, "B": <canrel body>, "Q": <space body>,
//                      "trace": [...]}}
//
// Every body except finset may carry an optional "name"; a finset's name is
// its own. A file holds one document or an array of them, and a string in
// place of a nested document refers to a named document in the same
// DocumentSet.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wwrel/factorize.hpp"
#include "wwrel/finrel.hpp"
#include "wwrel/symplin.hpp"
#include "wwrel/wwcat.hpp"

namespace wwrel {

using Json = nlohmann::json;

enum class EngineKind { finrel, symplin };

std::string_view to_string(EngineKind e);

// A word as written in a document: identities are kept, so the raw word
// can be factorized; make_path gives the minimal form.
template <RelationEngine E>
struct WordDocument {
  std::vector<typename E::Morphism> word;
  std::optional<typename E::Object> object;

  Path<E> path() const { return make_path<E>(word, object); }
};

using PathBody = std::variant<WordDocument<FinEngine>, WordDocument<LinEngine>>;

struct FactorizationBody {
  CanRel reduction;
  CanRel coreduction;
  SymplecticSpace middle;
  std::optional<Json> trace;
};

enum class DocumentKind { finset, finrel, space, canrel, path, factorization };

std::string_view to_string(DocumentKind k);

struct Document {
  std::string name;
  std::variant<FinSet, FinRelation, SymplecticSpace, CanRel, PathBody, FactorizationBody> body;

  DocumentKind kind() const { return static_cast<DocumentKind>(body.index()); }
  // The engine a morphism or path document belongs to, if any.
  std::optional<EngineKind> engine() const;
};

class DocumentSet {
 public:
  // Parses a document or an array of documents and appends them. Returns
  // the index of the last appended document. Throws ParseError (syntax,
  // schema, unresolved names) or DomainError (mathematical invariants).
  std::size_t load(std::string_view text);

  std::size_t size() const { return docs_.size(); }
  const Document& at(std::size_t i) const { return docs_.at(i); }
  std::optional<std::size_t> find(const std::string& name) const;

 private:
  friend class DocumentReader;

  std::vector<Document> docs_;
  std::map<std::string, std::size_t> names_;
};

// Parses text holding exactly one document.
Document parse_document(std::string_view text);

Json to_json(const Document& doc);
Json to_json(const FinSet& x);
Json to_json(const FinRelation& f);
Json to_json(const SymplecticSpace& s);
Json to_json(const CanRel& f);
Json to_json(const PathBody& p);
Json to_json(const Factorization& f);
Json trace_to_json(const std::vector<TraceStep>& trace);
Json to_json(const VerificationReport& r);
Json to_json(const RelationProfile& p);
Json to_json(const JunctionCheck& j);

template <RelationEngine E>
Json path_json(const Path<E>& p) {
  WordDocument<E> doc{p.word(), p.target()};
  if (!p.is_identity()) doc.object.reset();
  return to_json(PathBody(doc));
}

std::string serialize(const Document& doc, bool pretty = false);

Json rational_matrix_json(const Matrix& m);

}  // namespace wwrel
