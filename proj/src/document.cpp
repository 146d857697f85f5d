#include "wwrel/document.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>
#include <utility>

#include "wwrel/errors.hpp"

namespace wwrel {

namespace {

constexpr std::array<std::string_view, 6> kKindNames = {
    "finset", "finrel", "space", "canrel", "path", "factorization"};

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    // Keep only the library's description, after its own location prefix.
    std::string what = e.what();
    if (const auto cut = what.find(": "); cut != std::string::npos) what.erase(0, cut + 2);
    throw ParseError("malformed JSON at " + line_column(text, byte) + ": " + what);
  }
}

// The single kind key of a document object, or nullopt when j is not a
// document wrapper.
std::optional<DocumentKind> wrapper_kind(const Json& j) {
  if (!j.is_object() || j.size() != 1) return std::nullopt;
  for (std::size_t k = 0; k < kKindNames.size(); ++k) {
    if (j.contains(std::string(kKindNames[k]))) return static_cast<DocumentKind>(k);
  }
  return std::nullopt;
}

const Json& field(const Json& body, const char* key, const std::string& where) {
  auto it = body.find(key);
  if (it == body.end()) schema_error(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string name_of(const Json& body, DocumentKind kind, const std::string& where) {
  auto it = body.find("name");
  if (it == body.end()) return {};
  if (!it->is_string()) schema_error(where + ".name", "expected a string");
  (void)kind;
  return it->get<std::string>();
}

void check_keys(const Json& body, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = body.begin(); it != body.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* a) { return it.key() == a; })) {
      schema_error(where, "unknown field \"" + it.key() + "\"");
    }
  }
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      schema_error(where, e.what());
    }
  }
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<std::uint64_t>())));
    return Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
  }
  schema_error(where, "expected a rational string \"p/q\"");
}

std::size_t count_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                 j.get<std::int64_t>() < 0)) {
    schema_error(where, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Json finset_body_json(const FinSet& x) {
  return Json{{"name", x.name()}, {"elements", x.elements()}};
}

Json space_body_json(const SymplecticSpace& s) {
  Json blocks = Json::array();
  for (const SymplecticBlock& b : s.blocks()) blocks.push_back(Json::array({b.half_dim, b.sign}));
  return Json{{"blocks", std::move(blocks)}};
}

Json canrel_body_json(const CanRel& f) {
  return Json{{"target", space_body_json(f.target())},
              {"source", space_body_json(f.source())},
              {"basis", rational_matrix_json(f.graph().basis())}};
}

Json finrel_body_json(const FinRelation& f) {
  std::map<std::string, std::size_t> x_pos;
  std::map<std::string, std::size_t> y_pos;
  for (std::size_t i = 0; i < f.target().size(); ++i) x_pos[f.target().elements()[i]] = i;
  for (std::size_t i = 0; i < f.source().size(); ++i) y_pos[f.source().elements()[i]] = i;
  std::vector<LabelPair> pairs(f.pairs().begin(), f.pairs().end());
  std::sort(pairs.begin(), pairs.end(), [&](const LabelPair& a, const LabelPair& b) {
    return std::pair(x_pos[a.first], y_pos[a.second]) <
           std::pair(x_pos[b.first], y_pos[b.second]);
  });
  Json out_pairs = Json::array();
  for (const auto& [x, y] : pairs) out_pairs.push_back(Json::array({x, y}));
  return Json{{"target", finset_body_json(f.target())},
              {"source", finset_body_json(f.source())},
              {"pairs", std::move(out_pairs)}};
}

}  // namespace

// Parses documents out of one text, resolving names against the set and
// against named documents later in the same text.
class DocumentReader {
 public:
  DocumentReader(DocumentSet& set, const Json& root) : set_(set) {
    if (root.is_array()) {
      for (const Json& item : root) entries_.push_back(&item);
    } else {
      entries_.push_back(&root);
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const std::string where = "document " + std::to_string(i);
      const auto kind = wrapper_kind(*entries_[i]);
      if (!kind) {
        schema_error(where, "expected an object with exactly one of the keys finset, "
                            "finrel, space, canrel, path, factorization");
      }
      const Json& body = entries_[i]->at(std::string(to_string(*kind)));
      if (!body.is_object()) schema_error(where, "document body must be an object");
      const std::string name = name_of(body, *kind, where);
      if (!name.empty()) {
        if (pending_.count(name) != 0) schema_error(where, "duplicate name \"" + name + "\"");
        pending_[name] = i;
      }
    }
  }

  std::size_t run() {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      Document doc = entry(i);
      if (!doc.name.empty()) {
        if (set_.names_.count(doc.name) != 0) {
          schema_error("document " + std::to_string(i),
                       "name \"" + doc.name + "\" is already defined");
        }
        set_.names_[doc.name] = set_.docs_.size();
      }
      set_.docs_.push_back(std::move(doc));
    }
    return set_.docs_.size() - 1;
  }

 private:
  Document entry(std::size_t i) {
    if (auto it = parsed_.find(i); it != parsed_.end()) return it->second;
    if (!in_progress_.insert(i).second) {
      schema_error("document " + std::to_string(i), "circular name reference");
    }
    Document doc = read_document(*entries_[i], "document " + std::to_string(i));
    in_progress_.erase(i);
    parsed_[i] = doc;
    return doc;
  }

  Document resolve(const std::string& name, const std::string& where) {
    if (auto it = pending_.find(name); it != pending_.end()) return entry(it->second);
    if (auto it = set_.names_.find(name); it != set_.names_.end()) return set_.docs_[it->second];
    schema_error(where, "unresolved name \"" + name + "\"");
  }

  // A nested value of the given kind: a name, a full document, or a body.
  Document nested(const Json& j, DocumentKind kind, const std::string& where,
                  bool allow_body) {
    Document doc;
    if (j.is_string()) {
      doc = resolve(j.get<std::string>(), where);
    } else if (wrapper_kind(j)) {
      doc = read_document(j, where);
    } else if (allow_body && j.is_object()) {
      doc = read_body(kind, j, where);
    } else {
      schema_error(where, "expected a " + std::string(to_string(kind)) + " or a name");
    }
    if (doc.kind() != kind) {
      schema_error(where, "expected a " + std::string(to_string(kind)) + ", found a " +
                              std::string(to_string(doc.kind())));
    }
    return doc;
  }

  Document read_document(const Json& j, const std::string& where) {
    const auto kind = wrapper_kind(j);
    if (!kind) schema_error(where, "not a document");
    const std::string key(to_string(*kind));
    return read_body(*kind, j.at(key), where + "." + key);
  }

  Document read_body(DocumentKind kind, const Json& body, const std::string& where) {
    if (!body.is_object()) schema_error(where, "expected an object");
    Document doc;
    doc.name = name_of(body, kind, where);
    switch (kind) {
      case DocumentKind::finset:
        doc.body = read_finset(body, where);
        break;
      case DocumentKind::finrel:
        doc.body = read_finrel(body, where);
        break;
      case DocumentKind::space:
        doc.body = read_space(body, where);
        break;
      case DocumentKind::canrel:
        doc.body = read_canrel(body, where);
        break;
      case DocumentKind::path:
        doc.body = read_path(body, where);
        break;
      case DocumentKind::factorization:
        doc.body = read_factorization(body, where);
        break;
    }
    return doc;
  }

  FinSet read_finset(const Json& body, const std::string& where) {
    check_keys(body, {"name", "elements"}, where);
    const Json& elements = field(body, "elements", where);
    if (!elements.is_array()) schema_error(where + ".elements", "expected an array");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (!elements[i].is_string()) {
        schema_error(where + ".elements[" + std::to_string(i) + "]", "expected a string");
      }
      labels.push_back(elements[i].get<std::string>());
    }
    return FinSet(name_of(body, DocumentKind::finset, where), std::move(labels));
  }

  FinRelation read_finrel(const Json& body, const std::string& where) {
    check_keys(body, {"name", "target", "source", "pairs"}, where);
    FinSet target = std::get<FinSet>(
        nested(field(body, "target", where), DocumentKind::finset, where + ".target", true).body);
    FinSet source = std::get<FinSet>(
        nested(field(body, "source", where), DocumentKind::finset, where + ".source", true).body);
    const Json& pairs = field(body, "pairs", where);
    if (!pairs.is_array()) schema_error(where + ".pairs", "expected an array");
    std::set<LabelPair> out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Json& p = pairs[i];
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
        schema_error(where + ".pairs[" + std::to_string(i) + "]",
                     "expected a pair of labels [x, y]");
      }
      if (!out.emplace(p[0].get<std::string>(), p[1].get<std::string>()).second) {
        throw DomainError(where + ".pairs[" + std::to_string(i) + "]: duplicate pair");
      }
    }
    return FinRelation(std::move(target), std::move(source), std::move(out));
  }

  SymplecticSpace read_space(const Json& body, const std::string& where) {
    check_keys(body, {"name", "blocks"}, where);
    const Json& blocks = field(body, "blocks", where);
    if (!blocks.is_array()) schema_error(where + ".blocks", "expected an array");
    std::vector<SymplecticBlock> out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const std::string at = where + ".blocks[" + std::to_string(i) + "]";
      const Json& b = blocks[i];
      if (!b.is_array() || b.size() != 2) schema_error(at, "expected [half_dim, sign]");
      const std::size_t half = count_from_json(b[0], at + "[0]");
      if (!b[1].is_number_integer() || (b[1].get<std::int64_t>() != 1 &&
                                        b[1].get<std::int64_t>() != -1)) {
        schema_error(at + "[1]", "sign must be 1 or -1");
      }
      out.push_back({half, static_cast<int>(b[1].get<std::int64_t>())});
    }
    return SymplecticSpace(std::move(out));
  }

  SymplecticSpace space_ref(const Json& j, const std::string& where) {
    return std::get<SymplecticSpace>(nested(j, DocumentKind::space, where, true).body);
  }

  CanRel read_canrel(const Json& body, const std::string& where) {
    check_keys(body, {"name", "target", "source", "basis"}, where);
    SymplecticSpace target = space_ref(field(body, "target", where), where + ".target");
    SymplecticSpace source = space_ref(field(body, "source", where), where + ".source");
    const std::size_t cols = target.dim() + source.dim();
    const Json& basis = field(body, "basis", where);
    if (!basis.is_array()) schema_error(where + ".basis", "expected an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const std::string at = where + ".basis[" + std::to_string(r) + "]";
      if (!basis[r].is_array()) schema_error(at, "expected an array");
      if (basis[r].size() != cols) {
        schema_error(at, "row has " + std::to_string(basis[r].size()) +
                             " entries, target ⊕ source has dimension " + std::to_string(cols));
      }
      std::vector<Rational> row;
      for (std::size_t c = 0; c < cols; ++c) {
        row.push_back(rational_from_json(basis[r][c], at + "[" + std::to_string(c) + "]"));
      }
      rows.push_back(std::move(row));
    }
    try {
      return CanRel(std::move(target), std::move(source),
                    Subspace::span(Matrix::from_dense(cols, rows)));
    } catch (const DomainError& e) {
      throw DomainError(where + ": " + e.what());
    }
  }

  template <RelationEngine E>
  WordDocument<E> read_word(const Json& body, const std::string& where, DocumentKind morphism,
                            DocumentKind object) {
    using Morphism = typename E::Morphism;
    using Object = typename E::Object;
    WordDocument<E> out;
    const Json& word = field(body, "word", where);
    for (std::size_t i = 0; i < word.size(); ++i) {
      const std::string at = where + ".word[" + std::to_string(i) + "]";
      out.word.push_back(std::get<Morphism>(nested(word[i], morphism, at, false).body));
    }
    if (auto it = body.find("object"); it != body.end()) {
      out.object = std::get<Object>(nested(*it, object, where + ".object", true).body);
    }
    if (out.word.empty() && !out.object) {
      schema_error(where, "an empty word needs an \"object\"");
    }
    try {
      out.path();
    } catch (const CompositionError& e) {
      throw CompositionError(e.index(), where + ".word: " + e.what());
    }
    return out;
  }

  PathBody read_path(const Json& body, const std::string& where) {
    check_keys(body, {"name", "engine", "word", "object"}, where);
    const Json& word = field(body, "word", where);
    if (!word.is_array()) schema_error(where + ".word", "expected an array");
    std::optional<EngineKind> engine;
    if (auto it = body.find("engine"); it != body.end()) {
      if (*it == "finrel") {
        engine = EngineKind::finrel;
      } else if (*it == "symplin") {
        engine = EngineKind::symplin;
      } else {
        schema_error(where + ".engine", "expected \"finrel\" or \"symplin\"");
      }
    } else if (!word.empty()) {
      const Json& first = word.front();
      Document probe = first.is_string() ? resolve(first.get<std::string>(), where + ".word[0]")
                                         : read_document(first, where + ".word[0]");
      if (probe.kind() == DocumentKind::finrel) engine = EngineKind::finrel;
      if (probe.kind() == DocumentKind::canrel) engine = EngineKind::symplin;
    }
    if (!engine) schema_error(where, "cannot determine the engine; add \"engine\"");
    if (*engine == EngineKind::finrel) {
      return read_word<FinEngine>(body, where, DocumentKind::finrel, DocumentKind::finset);
    }
    return read_word<LinEngine>(body, where, DocumentKind::canrel, DocumentKind::space);
  }

  FactorizationBody read_factorization(const Json& body, const std::string& where) {
    check_keys(body, {"name", "A", "B", "Q", "trace"}, where);
    FactorizationBody out;
    out.reduction = std::get<CanRel>(
        nested(field(body, "A", where), DocumentKind::canrel, where + ".A", true).body);
    out.coreduction = std::get<CanRel>(
        nested(field(body, "B", where), DocumentKind::canrel, where + ".B", true).body);
    out.middle = space_ref(field(body, "Q", where), where + ".Q");
    if (auto it = body.find("trace"); it != body.end()) {
      if (!it->is_array()) schema_error(where + ".trace", "expected an array");
      out.trace = *it;
    }
    return out;
  }

  DocumentSet& set_;
  std::vector<const Json*> entries_;
  std::map<std::string, std::size_t> pending_;
  std::map<std::size_t, Document> parsed_;
  std::set<std::size_t> in_progress_;
};

std::string_view to_string(EngineKind e) {
  return e == EngineKind::finrel ? "finrel" : "symplin";
}

std::string_view to_string(DocumentKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<EngineKind> Document::engine() const {
  switch (kind()) {
    case DocumentKind::finset:
    case DocumentKind::finrel:
      return EngineKind::finrel;
    case DocumentKind::space:
    case DocumentKind::canrel:
    case DocumentKind::factorization:
      return EngineKind::symplin;
    case DocumentKind::path:
      return std::get<PathBody>(body).index() == 0 ? EngineKind::finrel : EngineKind::symplin;
  }
  return std::nullopt;
}

std::size_t DocumentSet::load(std::string_view text) {
  const Json root = parse_json(text);
  if (root.is_array() && root.empty()) throw ParseError("no documents in input");
  DocumentSet staged = *this;
  DocumentReader reader(staged, root);
  const std::size_t last = reader.run();
  *this = std::move(staged);
  return last;
}

std::optional<std::size_t> DocumentSet::find(const std::string& name) const {
  if (auto it = names_.find(name); it != names_.end()) return it->second;
  return std::nullopt;
}

Document parse_document(std::string_view text) {
  const Json root = parse_json(text);
  if (root.is_array()) throw ParseError("expected a single document, found an array");
  DocumentSet set;
  set.load(text);
  return set.at(0);
}

Json rational_matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_rational(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const FinSet& x) { return Json{{"finset", finset_body_json(x)}}; }
Json to_json(const FinRelation& f) { return Json{{"finrel", finrel_body_json(f)}}; }
Json to_json(const SymplecticSpace& s) { return Json{{"space", space_body_json(s)}}; }
Json to_json(const CanRel& f) { return Json{{"canrel", canrel_body_json(f)}}; }

Json to_json(const PathBody& p) {
  Json body;
  std::visit(
      [&body](const auto& w) {
        using W = std::decay_t<decltype(w)>;
        Json word = Json::array();
        for (const auto& f : w.word) word.push_back(to_json(f));
        if constexpr (std::is_same_v<W, WordDocument<FinEngine>>) {
          body["engine"] = "finrel";
          if (w.object) body["object"] = finset_body_json(*w.object);
        } else {
          body["engine"] = "symplin";
          if (w.object) body["object"] = space_body_json(*w.object);
        }
        body["word"] = std::move(word);
      },
      p);
  return Json{{"path", std::move(body)}};
}

Json to_json(const JunctionCheck& j) {
  return Json{{"transversal", j.transversal},
              {"monic", j.monic},
              {"strongly_transversal", j.strongly_transversal},
              {"transversality_defect", j.transversality_defect},
              {"monicity_defect", j.monicity_defect}};
}

Json to_json(const RelationProfile& p) {
  return Json{{"surjective", p.surjective}, {"cosurjective", p.cosurjective},
              {"injective", p.injective},   {"coinjective", p.coinjective},
              {"reduction", p.reduction},   {"coreduction", p.coreduction}};
}

Json trace_to_json(const std::vector<TraceStep>& trace) {
  Json out = Json::array();
  for (const TraceStep& s : trace) {
    out.push_back(Json{{"move", to_string(s.move)},
                       {"stage", to_string(s.stage)},
                       {"level", s.level},
                       {"index", s.index},
                       {"defects", Json::array({s.check.transversality_defect,
                                                s.check.monicity_defect})}});
  }
  return out;
}

Json to_json(const Factorization& f) {
  return Json{{"factorization",
               {{"A", canrel_body_json(f.reduction)},
                {"B", canrel_body_json(f.coreduction)},
                {"Q", space_body_json(f.middle)},
                {"trace", trace_to_json(f.trace)}}}};
}

Json to_json(const VerificationReport& r) {
  Json steps = Json::array();
  for (const StepReport& s : r.steps) {
    Json step{{"position", s.position},
              {"move", to_string(s.move)},
              {"stage", to_string(s.stage)},
              {"level", s.level},
              {"index", s.index},
              {"defects", Json::array({s.observed.transversality_defect,
                                       s.observed.monicity_defect})},
              {"ok", s.ok}};
    if (!s.detail.empty()) step["detail"] = s.detail;
    steps.push_back(std::move(step));
  }
  return Json{{"ok", r.ok},
              {"expansions", r.expansions},
              {"collapses", r.collapses},
              {"reduction", r.reduction},
              {"coreduction", r.coreduction},
              {"middle_consistent", r.middle_consistent},
              {"factors_traced", r.factors_traced},
              {"composite_matches", r.composite_matches},
              {"steps", std::move(steps)}};
}

Json to_json(const Document& doc) {
  Json out = std::visit(
      [](const auto& body) -> Json {
        using B = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<B, FactorizationBody>) {
          Json j{{"factorization",
                  {{"A", canrel_body_json(body.reduction)},
                   {"B", canrel_body_json(body.coreduction)},
                   {"Q", space_body_json(body.middle)}}}};
          if (body.trace) j["factorization"]["trace"] = *body.trace;
          return j;
        } else {
          return to_json(body);
        }
      },
      doc.body);
  if (!doc.name.empty() && doc.kind() != DocumentKind::finset) {
    out.begin().value()["name"] = doc.name;
  }
  return out;
}

std::string serialize(const Document& doc, bool pretty) {
  return pretty ? to_json(doc).dump(2) : to_json(doc).dump();
}

}  // namespace wwrel
