#include "wwrel/commands.hpp"

#include <array>
#include <utility>

#include "wwrel/errors.hpp"

namespace wwrel {

namespace {

constexpr std::array<std::string_view, 7> kPredicates = {
    "lagrangian", "surjective", "cosurjective", "injective",
    "coinjective", "reduction", "coreduction"};

bool predicate_value(const RelationProfile& p, std::string_view name) {
  if (name == "surjective") return p.surjective;
  if (name == "cosurjective") return p.cosurjective;
  if (name == "injective") return p.injective;
  if (name == "coinjective") return p.coinjective;
  if (name == "reduction") return p.reduction;
  return p.coreduction;
}

[[noreturn]] void wrong_kinds(std::string_view command, const Document& doc) {
  throw ParseError(std::string(command) + ": cannot take a " +
                   std::string(to_string(doc.kind())) + " document");
}

// The raw word behind a canrel or symplin path document.
std::vector<CanRel> linear_word(std::string_view command, const Document& doc) {
  if (const auto* f = std::get_if<CanRel>(&doc.body)) return {*f};
  if (const auto* p = std::get_if<PathBody>(&doc.body)) {
    if (const auto* w = std::get_if<WordDocument<LinEngine>>(p)) return w->word;
    throw ParseError(std::string(command) + ": needs the symplin engine");
  }
  wrong_kinds(command, doc);
}

Json step_log_json(const std::vector<CollapseRecord>& log) {
  Json out = Json::array();
  for (const CollapseRecord& r : log) {
    out.push_back(Json{{"index", r.index},
                       {"defects", Json::array({r.check.transversality_defect,
                                                r.check.monicity_defect})}});
  }
  return out;
}

template <RelationEngine E>
Verdict normalize_path(const Path<E>& input) {
  std::vector<CollapseRecord> log;
  const Path<E> output = normalize(input, &log);
  const auto before = functor_c(input);
  const auto after = functor_c(output);
  Verdict v;
  v.command = "normalize";
  v.ok = before == after;
  v.details = Json{{"engine", E::name},
                   {"input", path_json(input)},
                   {"input_length", input.length()},
                   {"normal_form", path_json(output)},
                   {"output_length", output.length()},
                   {"log", step_log_json(log)},
                   {"composite_input", to_json(before)},
                   {"composite_output", to_json(after)},
                   {"composites_equal", before == after}};
  return v;
}

template <RelationEngine E>
Path<E> as_path(const Document& doc) {
  using Morphism = typename E::Morphism;
  if (const auto* f = std::get_if<Morphism>(&doc.body)) return embed_s<E>(*f);
  return std::get<WordDocument<E>>(std::get<PathBody>(doc.body)).path();
}

std::size_t expected_middle(const std::vector<CanRel>& word, FactorMode mode) {
  if (mode == FactorMode::prop4) {
    return word.front().target().dim() + 2 * word.front().source().dim();
  }
  std::vector<std::size_t> dims{word.front().target().dim()};
  for (const CanRel& f : word) dims.push_back(f.source().dim());
  return apex_dimension(dims);
}

}  // namespace

Json Verdict::to_json() const {
  return Json{{"ok", ok}, {"command", command}, {"details", details}};
}

std::string Verdict::dump(bool pretty) const {
  return pretty ? to_json().dump(2) : to_json().dump();
}

Verdict cmd_compose(const Document& first, const Document& second) {
  Verdict v;
  v.command = "compose";
  v.ok = true;
  if (first.kind() == DocumentKind::finrel && second.kind() == DocumentKind::finrel) {
    const auto& f = std::get<FinRelation>(first.body);
    const auto& g = std::get<FinRelation>(second.body);
    const auto junction = FinEngine::inspect(f, g);
    v.details = Json{{"engine", "finrel"},
                     {"composite", to_json(junction.composite)},
                     {"junction", to_json(junction.check)}};
    return v;
  }
  if (first.kind() == DocumentKind::canrel && second.kind() == DocumentKind::canrel) {
    const PairAnalysis a =
        analyze_pair(std::get<CanRel>(first.body), std::get<CanRel>(second.body));
    Json analysis = to_json(a.junction());
    analysis["fiber_product_dim"] = a.fiber_product.dim();
    v.details = Json{{"engine", "symplin"},
                     {"composite", to_json(a.composite)},
                     {"analysis", std::move(analysis)}};
    return v;
  }
  if (first.kind() == DocumentKind::path && second.kind() == DocumentKind::path &&
      first.engine() == second.engine()) {
    if (first.engine() == EngineKind::finrel) {
      const auto p = compose_paths(as_path<FinEngine>(first), as_path<FinEngine>(second));
      v.details = Json{{"engine", "finrel"}, {"path", path_json(p)}};
    } else {
      const auto p = compose_paths(as_path<LinEngine>(first), as_path<LinEngine>(second));
      v.details = Json{{"engine", "symplin"}, {"path", path_json(p)}};
    }
    return v;
  }
  throw ParseError("compose: cannot compose a " + std::string(to_string(first.kind())) +
                   " with a " + std::string(to_string(second.kind())));
}

Verdict cmd_check(const Document& subject, std::string_view predicate) {
  bool known = false;
  for (std::string_view p : kPredicates) known = known || p == predicate;
  if (!known) throw ParseError("check: unknown predicate \"" + std::string(predicate) + "\"");

  Verdict v;
  v.command = "check";
  if (const auto* f = std::get_if<FinRelation>(&subject.body)) {
    if (predicate == "lagrangian") {
      throw ParseError("check: predicate \"lagrangian\" does not apply to finite relations");
    }
    const RelationProfile profile = classify_fin(*f);
    v.ok = predicate_value(profile, predicate);
    v.details = Json{{"engine", "finrel"},
                     {"predicate", predicate},
                     {"value", v.ok},
                     {"profile", to_json(profile)}};
    return v;
  }
  if (const auto* f = std::get_if<CanRel>(&subject.body)) {
    const RelationProfile profile = classify_lin(*f);
    const bool lagrangian =
        is_lagrangian(product_space(f->target(), dual_space(f->source())), f->graph());
    v.ok = predicate == "lagrangian" ? lagrangian : predicate_value(profile, predicate);
    v.details = Json{{"engine", "symplin"},
                     {"predicate", predicate},
                     {"value", v.ok},
                     {"lagrangian", lagrangian},
                     {"profile", to_json(profile)}};
    return v;
  }
  wrong_kinds("check", subject);
}

Verdict cmd_factorize(const Document& subject, FactorMode mode) {
  const std::vector<CanRel> word = linear_word("factorize", subject);
  if (word.empty()) throw DomainError("factorize: the word must have length at least 1");
  if (mode == FactorMode::prop4 && word.size() != 1) {
    throw DomainError("factorize: prop4 mode takes a single relation, the word has length " +
                      std::to_string(word.size()));
  }
  const Factorization fact =
      mode == FactorMode::prop4 ? factorize_prop4(word.front()) : factorize_ww(word);
  const VerificationReport report = verify_two_term(word, fact);
  const std::size_t expected = expected_middle(word, mode);

  Verdict v;
  v.command = "factorize";
  v.ok = report.ok && fact.middle.dim() == expected;
  v.details = Json{{"engine", "symplin"},
                   {"mode", mode == FactorMode::prop4 ? "prop4" : "ww"},
                   {"word_length", word.size()},
                   {"factorization", to_json(fact).at("factorization")},
                   {"dimensions", {{"middle", fact.middle.dim()}, {"expected", expected}}},
                   {"verification", to_json(report)}};
  return v;
}

Verdict cmd_normalize(const Document& path) {
  switch (path.kind()) {
    case DocumentKind::finrel:
    case DocumentKind::canrel:
    case DocumentKind::path:
      break;
    default:
      wrong_kinds("normalize", path);
  }
  if (path.engine() == EngineKind::finrel) return normalize_path(as_path<FinEngine>(path));
  return normalize_path(as_path<LinEngine>(path));
}

Verdict cmd_verify(const Document& subject, const Document* factorization) {
  const std::vector<CanRel> word = linear_word("verify", subject);
  if (word.empty()) throw DomainError("verify: the word must have length at least 1");
  Factorization fresh = factorize_ww(word);

  Verdict v;
  v.command = "verify";
  Json trace_matches = nullptr;
  Factorization checked = fresh;
  if (factorization != nullptr) {
    const auto* body = std::get_if<FactorizationBody>(&factorization->body);
    if (body == nullptr) wrong_kinds("verify", *factorization);
    checked.reduction = body->reduction;
    checked.coreduction = body->coreduction;
    checked.middle = body->middle;
    if (body->trace) trace_matches = *body->trace == trace_to_json(fresh.trace);
  }
  const VerificationReport report = verify_two_term(word, checked);
  v.ok = report.ok && trace_matches != false;
  v.details = Json{{"engine", "symplin"},
                   {"source", factorization != nullptr ? "document" : "recomputed"},
                   {"word_length", word.size()},
                   {"trace_matches", trace_matches},
                   {"verification", to_json(report)}};
  return v;
}

}  // namespace wwrel
