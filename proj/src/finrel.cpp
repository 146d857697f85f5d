#include "wwrel/finrel.hpp"

#include <map>

#include "wwrel/errors.hpp"

namespace wwrel {

namespace {

void require_composable(const FinRelation& f, const FinRelation& g) {
  if (!(f.source() == g.target())) {
    throw DomainError("source of the first relation (" + f.source().name() +
                      ") does not match target of the second (" +
                      g.target().name() + ")");
  }
}

}  // namespace

FinSet::FinSet(std::string name, std::vector<std::string> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
  for (const std::string& e : elements_) {
    if (!labels_.insert(e).second) {
      throw DomainError("duplicate label \"" + e + "\" in set " + name_);
    }
  }
}

FinSet FinSet::point() { return FinSet("1", {"*"}); }

FinRelation::FinRelation(FinSet target, FinSet source, std::set<LabelPair> pairs)
    : target_(std::move(target)), source_(std::move(source)), pairs_(std::move(pairs)) {
  for (const auto& [x, y] : pairs_) {
    if (!target_.contains(x)) {
      throw DomainError("pair (" + x + ", " + y + "): \"" + x +
                        "\" is not an element of the target");
    }
    if (!source_.contains(y)) {
      throw DomainError("pair (" + x + ", " + y + "): \"" + y +
                        "\" is not an element of the source");
    }
  }
}

FinRelation identity_fin(const FinSet& x) {
  std::set<LabelPair> pairs;
  for (const std::string& e : x.elements()) pairs.emplace(e, e);
  return FinRelation(x, x, std::move(pairs));
}

bool is_identity_fin(const FinRelation& f) {
  if (!(f.target() == f.source())) return false;
  if (f.pairs().size() != f.target().size()) return false;
  for (const auto& [x, y] : f.pairs()) {
    if (x != y) return false;
  }
  return true;
}

FinRelation compose_fin(const FinRelation& f, const FinRelation& g) {
  require_composable(f, g);
  std::multimap<std::string, std::string> g_by_middle(g.pairs().begin(),
                                                      g.pairs().end());
  std::set<LabelPair> out;
  for (const auto& [x, y] : f.pairs()) {
    auto [lo, hi] = g_by_middle.equal_range(y);
    for (auto it = lo; it != hi; ++it) out.emplace(x, it->second);
  }
  return FinRelation(f.target(), g.source(), std::move(out));
}

FinRelation transpose_fin(const FinRelation& f) {
  std::set<LabelPair> out;
  for (const auto& [x, y] : f.pairs()) out.emplace(y, x);
  return FinRelation(f.source(), f.target(), std::move(out));
}

std::set<std::string> image_of(const FinRelation& f, const std::set<std::string>& t) {
  for (const std::string& y : t) {
    if (!f.source().contains(y)) {
      throw DomainError("\"" + y + "\" is not an element of the source");
    }
  }
  std::set<std::string> out;
  for (const auto& [x, y] : f.pairs()) {
    if (t.count(y) != 0) out.insert(x);
  }
  return out;
}

std::set<std::string> range_of(const FinRelation& f) {
  return image_of(f, f.source().labels());
}

std::set<std::string> domain_of(const FinRelation& f) {
  return image_of(transpose_fin(f), f.target().labels());
}

RelationProfile classify_fin(const FinRelation& f) {
  std::map<std::string, int> per_x;
  std::map<std::string, int> per_y;
  for (const auto& [x, y] : f.pairs()) {
    ++per_x[x];
    ++per_y[y];
  }
  auto at_most_one = [](const std::map<std::string, int>& counts) {
    for (const auto& [label, n] : counts) {
      if (n > 1) return false;
    }
    return true;
  };
  return RelationProfile::from_predicates(
      range_of(f) == f.target().labels(), domain_of(f) == f.source().labels(),
      at_most_one(per_x), at_most_one(per_y));
}

std::set<LabelTriple> fiber_product_fin(const FinRelation& f, const FinRelation& g) {
  require_composable(f, g);
  std::multimap<std::string, std::string> g_by_middle(g.pairs().begin(),
                                                      g.pairs().end());
  std::set<LabelTriple> out;
  for (const auto& [x, y] : f.pairs()) {
    auto [lo, hi] = g_by_middle.equal_range(y);
    for (auto it = lo; it != hi; ++it) out.emplace(x, y, it->second);
  }
  return out;
}

bool monic_pair_fin(const FinRelation& f, const FinRelation& g) {
  return junction_fin(f, g).monic;
}

JunctionCheck junction_fin(const FinRelation& f, const FinRelation& g) {
  const auto triples = fiber_product_fin(f, g);
  std::set<LabelPair> projected;
  for (const auto& [x, y, z] : triples) projected.emplace(x, z);
  JunctionCheck out;
  out.transversal = true;
  out.monicity_defect = triples.size() - projected.size();
  out.monic = out.monicity_defect == 0;
  out.strongly_transversal = out.monic;
  return out;
}

}  // namespace wwrel
