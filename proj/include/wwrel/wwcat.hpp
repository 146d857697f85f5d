#pragma once

// Paths of composable relations and the quotient that collapses strongly
// transversal adjacent pairs. Everything here is generic over a relation
// engine; FinEngine and LinEngine instantiate it for finite relations and
// linear canonical relations.
//
// Paths are kept in minimal form: the word never contains an identity, and
// the empty word is the identity path on its (declared) object.

#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wwrel/errors.hpp"
#include "wwrel/finrel.hpp"
#include "wwrel/profile.hpp"
#include "wwrel/symplin.hpp"

namespace wwrel {

template <class Morphism>
struct Junction {
  JunctionCheck check;
  Morphism composite;
};

template <class E>
concept RelationEngine = requires(const typename E::Object& x,
                                  const typename E::Morphism& f) {
  { E::name } -> std::convertible_to<std::string_view>;
  { E::target(f) } -> std::convertible_to<typename E::Object>;
  { E::source(f) } -> std::convertible_to<typename E::Object>;
  { E::identity(x) } -> std::same_as<typename E::Morphism>;
  { E::is_identity(f) } -> std::same_as<bool>;
  { E::compose(f, f) } -> std::same_as<typename E::Morphism>;
  { E::inspect(f, f) } -> std::same_as<Junction<typename E::Morphism>>;
  { E::classify(f) } -> std::same_as<RelationProfile>;
  { E::transpose(f) } -> std::same_as<typename E::Morphism>;
  { x == x } -> std::same_as<bool>;
  { f == f } -> std::same_as<bool>;
};

struct FinEngine {
  using Object = FinSet;
  using Morphism = FinRelation;
  static constexpr std::string_view name = "finrel";

  static const FinSet& target(const FinRelation& f) { return f.target(); }
  static const FinSet& source(const FinRelation& f) { return f.source(); }
  static FinRelation identity(const FinSet& x) { return identity_fin(x); }
  static bool is_identity(const FinRelation& f) { return is_identity_fin(f); }
  static FinRelation compose(const FinRelation& f, const FinRelation& g) {
    return compose_fin(f, g);
  }
  static Junction<FinRelation> inspect(const FinRelation& f, const FinRelation& g) {
    return {junction_fin(f, g), compose_fin(f, g)};
  }
  static RelationProfile classify(const FinRelation& f) { return classify_fin(f); }
  static FinRelation transpose(const FinRelation& f) { return transpose_fin(f); }
};

struct LinEngine {
  using Object = SymplecticSpace;
  using Morphism = CanRel;
  static constexpr std::string_view name = "symplin";

  static const SymplecticSpace& target(const CanRel& f) { return f.target(); }
  static const SymplecticSpace& source(const CanRel& f) { return f.source(); }
  static CanRel identity(const SymplecticSpace& x) { return identity_rel(x); }
  static bool is_identity(const CanRel& f) { return is_identity_rel(f); }
  static CanRel compose(const CanRel& f, const CanRel& g) { return compose_lin(f, g); }
  static Junction<CanRel> inspect(const CanRel& f, const CanRel& g) {
    PairAnalysis a = analyze_pair(f, g);
    return {a.junction(), std::move(a.composite)};
  }
  static RelationProfile classify(const CanRel& f) { return classify_lin(f); }
  static CanRel transpose(const CanRel& f) { return transpose_lin(f); }
};

static_assert(RelationEngine<FinEngine>);
static_assert(RelationEngine<LinEngine>);

// Raised when adjacent entries of a word do not compose; index is the
// position of the entry whose target fails to match.
class CompositionError : public DomainError {
 public:
  CompositionError(std::size_t index, const std::string& what)
      : DomainError(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Raised by collapse_at when the pair at index is not strongly transversal.
class CollapseRefused : public DomainError {
 public:
  CollapseRefused(std::size_t index, JunctionCheck evidence)
      : DomainError("pair at index " + std::to_string(index) +
                    " is not strongly transversal (transversality defect " +
                    std::to_string(evidence.transversality_defect) +
                    ", monicity defect " + std::to_string(evidence.monicity_defect) + ")"),
        index_(index),
        evidence_(evidence) {}
  std::size_t index() const { return index_; }
  const JunctionCheck& evidence() const { return evidence_; }

 private:
  std::size_t index_;
  JunctionCheck evidence_;
};

template <RelationEngine E>
class Path {
 public:
  using Object = typename E::Object;
  using Morphism = typename E::Morphism;

  // The identity path on x.
  explicit Path(Object x) : target_(x), source_(std::move(x)) {}

  const Object& target() const { return target_; }
  const Object& source() const { return source_; }
  const std::vector<Morphism>& word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  bool is_identity() const { return word_.empty(); }

  friend bool operator==(const Path&, const Path&) = default;

  // Builds a path in minimal form. `declared` is used as the object of the
  // identity path when the word is empty. Throws CompositionError on a
  // non-composable adjacency, DomainError on an empty word with no object.
  static Path make(std::vector<Morphism> word, std::optional<Object> declared = {}) {
    for (std::size_t i = 1; i < word.size(); ++i) {
      if (!(E::source(word[i - 1]) == E::target(word[i]))) {
        throw CompositionError(i, "entry " + std::to_string(i) +
                                      " is not composable with entry " +
                                      std::to_string(i - 1));
      }
    }
    if (word.empty()) {
      if (!declared) throw DomainError("an empty word needs a declared object");
      return Path(std::move(*declared));
    }
    Path p(E::target(word.front()));
    p.source_ = E::source(word.back());
    for (Morphism& f : word) {
      if (!E::is_identity(f)) p.word_.push_back(std::move(f));
    }
    return p;
  }

 private:
  template <RelationEngine F>
  friend Path<F> compose_paths(const Path<F>&, const Path<F>&);
  template <RelationEngine F>
  friend Path<F> transpose_path(const Path<F>&);
  template <RelationEngine F>
  friend Path<F> collapse_at(const Path<F>&, std::size_t);

  Object target_;
  Object source_;
  std::vector<Morphism> word_;
};

template <RelationEngine E>
Path<E> make_path(std::vector<typename E::Morphism> word,
                  std::optional<typename E::Object> declared = {}) {
  return Path<E>::make(std::move(word), std::move(declared));
}

template <RelationEngine E>
Path<E> compose_paths(const Path<E>& p, const Path<E>& q) {
  if (!(p.source() == q.target())) {
    throw CompositionError(p.length(), "source of the first path does not match "
                                       "target of the second");
  }
  Path<E> out(p.target());
  out.source_ = q.source();
  out.word_ = p.word();
  out.word_.insert(out.word_.end(), q.word().begin(), q.word().end());
  return out;
}

template <RelationEngine E>
Path<E> transpose_path(const Path<E>& p) {
  Path<E> out(p.source());
  out.source_ = p.target();
  out.word_.reserve(p.length());
  for (auto it = p.word().rbegin(); it != p.word().rend(); ++it) {
    out.word_.push_back(E::transpose(*it));
  }
  return out;
}

template <RelationEngine E>
JunctionCheck junction_at(const Path<E>& p, std::size_t i) {
  if (i + 1 >= p.length()) {
    throw DomainError("no adjacent pair at index " + std::to_string(i) +
                      " in a word of length " + std::to_string(p.length()));
  }
  return E::inspect(p.word()[i], p.word()[i + 1]).check;
}

// Replaces entries i, i+1 (0-based) by their composite. Throws
// CollapseRefused carrying the defects when the pair is not strongly
// transversal.
template <RelationEngine E>
Path<E> collapse_at(const Path<E>& p, std::size_t i) {
  if (i + 1 >= p.length()) {
    throw DomainError("no adjacent pair at index " + std::to_string(i) +
                      " in a word of length " + std::to_string(p.length()));
  }
  auto j = E::inspect(p.word()[i], p.word()[i + 1]);
  if (!j.check.strongly_transversal) throw CollapseRefused(i, j.check);
  Path<E> out = p;
  out.word_.erase(out.word_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  if (E::is_identity(j.composite)) {
    out.word_.erase(out.word_.begin() + static_cast<std::ptrdiff_t>(i));
  } else {
    out.word_[i] = std::move(j.composite);
  }
  return out;
}

struct CollapseRecord {
  std::size_t index;
  JunctionCheck check;
};

// Leftmost-first greedy collapsing until no adjacent pair is strongly
// transversal. Equal normal forms imply equal morphisms of the quotient;
// the converse is not claimed.
template <RelationEngine E>
Path<E> normalize(const Path<E>& p, std::vector<CollapseRecord>* log = nullptr) {
  Path<E> current = p;
  std::size_t i = 0;
  while (i + 1 < current.length()) {
    const JunctionCheck check = junction_at(current, i);
    if (!check.strongly_transversal) {
      ++i;
      continue;
    }
    if (log != nullptr) log->push_back({i, check});
    current = collapse_at(current, i);
    i = i == 0 ? 0 : i - 1;
  }
  return current;
}

// Total composite of the word; the identity for the empty word.
template <RelationEngine E>
typename E::Morphism functor_c(const Path<E>& p) {
  if (p.is_identity()) return E::identity(p.target());
  typename E::Morphism acc = p.word().front();
  for (std::size_t i = 1; i < p.length(); ++i) acc = E::compose(acc, p.word()[i]);
  return acc;
}

template <RelationEngine E>
Path<E> embed_s(const typename E::Morphism& f) {
  return make_path<E>({f}, E::target(f));
}

template <RelationEngine E>
typename E::Morphism fold_word(const std::vector<typename E::Morphism>& word) {
  if (word.empty()) throw DomainError("cannot fold an empty word");
  typename E::Morphism acc = word.front();
  for (std::size_t i = 1; i < word.size(); ++i) acc = E::compose(acc, word[i]);
  return acc;
}

}  // namespace wwrel
