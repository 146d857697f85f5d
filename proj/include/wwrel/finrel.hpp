#pragma once

// The category of finite sets and relations. A relation X <- Y is a set of
// pairs (x, y); composition, transpose, images and the four predicates are
// computed directly from their set-theoretic definitions.

#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wwrel/profile.hpp"

namespace wwrel {

class FinSet {
 public:
  FinSet() = default;
  // Throws DomainError on duplicate labels.
  FinSet(std::string name, std::vector<std::string> elements);

  // The one-point set.
  static FinSet point();

  const std::string& name() const { return name_; }
  const std::vector<std::string>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(const std::string& label) const { return labels_.count(label) != 0; }
  const std::set<std::string>& labels() const { return labels_; }

  // Sets compare by their labels; name and listing order are presentation.
  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::string name_;
  std::vector<std::string> elements_;
  std::set<std::string> labels_;
};

using LabelPair = std::pair<std::string, std::string>;
using LabelTriple = std::tuple<std::string, std::string, std::string>;

class FinRelation {
 public:
  FinRelation() = default;
  // Throws DomainError if a pair mentions a label outside target/source.
  FinRelation(FinSet target, FinSet source, std::set<LabelPair> pairs);

  const FinSet& target() const { return target_; }
  const FinSet& source() const { return source_; }
  const std::set<LabelPair>& pairs() const { return pairs_; }
  bool contains(const std::string& x, const std::string& y) const {
    return pairs_.count({x, y}) != 0;
  }

  friend bool operator==(const FinRelation&, const FinRelation&) = default;

 private:
  FinSet target_;
  FinSet source_;
  std::set<LabelPair> pairs_;
};

FinRelation identity_fin(const FinSet& x);
bool is_identity_fin(const FinRelation& f);

// X <- Z from X <- Y and Y <- Z. Throws DomainError when f.source != g.target.
FinRelation compose_fin(const FinRelation& f, const FinRelation& g);
FinRelation transpose_fin(const FinRelation& f);

// {x | (x, y) in f for some y in t}. Throws DomainError on unknown labels.
std::set<std::string> image_of(const FinRelation& f, const std::set<std::string>& t);
std::set<std::string> range_of(const FinRelation& f);
std::set<std::string> domain_of(const FinRelation& f);

RelationProfile classify_fin(const FinRelation& f);

std::set<LabelTriple> fiber_product_fin(const FinRelation& f, const FinRelation& g);

// True iff every (x, z) of the composite has exactly one middle witness.
bool monic_pair_fin(const FinRelation& f, const FinRelation& g);

// Finite relations have no transversality content; the junction is
// collapsible exactly when the pair is monic. The monicity defect counts
// surplus witnesses: |f x_Y g| - |f o g|.
JunctionCheck junction_fin(const FinRelation& f, const FinRelation& g);

}  // namespace wwrel
