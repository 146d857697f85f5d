#pragma once

// Batch commands over loaded documents. Each returns a Verdict whose
// details serialize with sorted keys, so output is byte-stable.

#include <cstddef>
#include <string>
#include <string_view>

#include "wwrel/document.hpp"

namespace wwrel {

struct Verdict {
  bool ok = false;
  std::string command;
  Json details;

  Json to_json() const;
  std::string dump(bool pretty) const;
};

enum class FactorMode { prop4, ww };

// Morphisms (finrel/canrel) compose; two paths concatenate. Throws
// DomainError when not composable.
Verdict cmd_compose(const Document& first, const Document& second);

// predicate: lagrangian, surjective, cosurjective, injective, coinjective,
// reduction, coreduction. Throws ParseError on an unknown or inapplicable
// predicate.
Verdict cmd_check(const Document& subject, std::string_view predicate);

// subject: a canrel or a symplin path. prop4 needs a word of length 1.
Verdict cmd_factorize(const Document& subject, FactorMode mode);

Verdict cmd_normalize(const Document& path);

// Replays a factorization against a word. With no factorization document
// the word is factorized first and the fresh result is verified.
Verdict cmd_verify(const Document& subject, const Document* factorization);

}  // namespace wwrel
