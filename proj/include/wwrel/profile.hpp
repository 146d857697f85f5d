#pragma once

#include <cstddef>

namespace wwrel {

// The four relation predicates plus the two derived classes.
// reduction = surjective && coinjective; coreduction = injective && cosurjective.
struct RelationProfile {
  bool surjective = false;
  bool cosurjective = false;
  bool injective = false;
  bool coinjective = false;
  bool reduction = false;
  bool coreduction = false;

  static RelationProfile from_predicates(bool surjective, bool cosurjective,
                                         bool injective, bool coinjective) {
    return {surjective,  cosurjective,
            injective,   coinjective,
            surjective && coinjective,
            injective && cosurjective};
  }

  friend bool operator==(const RelationProfile&, const RelationProfile&) = default;
};

// Evidence produced when deciding whether an adjacent pair may be collapsed.
struct JunctionCheck {
  bool transversal = false;
  bool monic = false;
  bool strongly_transversal = false;
  std::size_t transversality_defect = 0;
  std::size_t monicity_defect = 0;
};

}  // namespace wwrel
