#pragma once

// Linear symplectic category over the rationals.
//
// A SymplecticSpace is a list of signed standard blocks. Block (n, s)
// contributes coordinates q_1..q_n, p_1..p_n with form s * [[0, I], [-I, 0]].
// A canonical relation X <- Y is a lagrangian subspace of X ⊕ Y for the
// form ω_X ⊕ (-ω_Y), coordinates ordered target first.

#include <cstddef>
#include <vector>

#include "wwrel/linalg.hpp"
#include "wwrel/profile.hpp"

namespace wwrel {

struct SymplecticBlock {
  std::size_t half_dim = 0;
  int sign = 1;

  friend bool operator==(const SymplecticBlock&, const SymplecticBlock&) = default;
};

class SymplecticSpace {
 public:
  // The point (dimension 0).
  SymplecticSpace() = default;
  // Throws DomainError unless every sign is +1 or -1.
  explicit SymplecticSpace(std::vector<SymplecticBlock> blocks);

  static SymplecticSpace standard(std::size_t half_dim, int sign = 1) {
    return SymplecticSpace({{half_dim, sign}});
  }

  const std::vector<SymplecticBlock>& blocks() const { return blocks_; }
  std::size_t dim() const;
  bool is_point() const { return dim() == 0; }

  friend bool operator==(const SymplecticSpace&, const SymplecticSpace&) = default;

 private:
  std::vector<SymplecticBlock> blocks_;
};

Matrix form_matrix(const SymplecticSpace& s);
SymplecticSpace dual_space(const SymplecticSpace& s);
SymplecticSpace product_space(const SymplecticSpace& a, const SymplecticSpace& b);

// Total: odd or mismatched-dimension inputs report false through the
// dimension test, except that sub.ambient_dim != dim(s) throws DomainError.
bool is_lagrangian(const SymplecticSpace& s, const Subspace& sub);

class CanRel {
 public:
  CanRel() = default;
  // Throws DomainError naming the failed check when graph is not lagrangian
  // in target ⊕ dual(source).
  CanRel(SymplecticSpace target, SymplecticSpace source, Subspace graph);

  const SymplecticSpace& target() const { return target_; }
  const SymplecticSpace& source() const { return source_; }
  const Subspace& graph() const { return graph_; }

  friend bool operator==(const CanRel&, const CanRel&) = default;

 private:
  SymplecticSpace target_;
  SymplecticSpace source_;
  Subspace graph_;
};

CanRel identity_rel(const SymplecticSpace& x);
bool is_identity_rel(const CanRel& f);

// Graph {(m v, v)}; throws DomainError if m has the wrong shape or is not
// symplectic.
CanRel graph_of_map(const Matrix& m, const SymplecticSpace& target,
                    const SymplecticSpace& source);

// The diagonal of Y × dual(Y), as a relation 1 <- dual(Y) × Y.
CanRel epsilon_rel(const SymplecticSpace& y);

// The relation itself regarded as a lagrangian of X × dual(Y), i.e. a
// morphism X × dual(Y) <- 1.
CanRel graph_as_state(const CanRel& f);

CanRel compose_lin(const CanRel& f, const CanRel& g);
CanRel transpose_lin(const CanRel& f);
CanRel product_rel(const CanRel& f, const CanRel& g);

RelationProfile classify_lin(const CanRel& f);

struct PairAnalysis {
  bool transversal = false;
  bool monic = false;
  bool strongly_transversal = false;
  std::size_t transversality_defect = 0;
  std::size_t monicity_defect = 0;
  // Inside X ⊕ Y ⊕ Y ⊕ Z.
  Subspace fiber_product;
  CanRel composite;

  JunctionCheck junction() const {
    return {transversal, monic, strongly_transversal, transversality_defect,
            monicity_defect};
  }
};

// Throws DomainError when f.source != g.target.
PairAnalysis analyze_pair(const CanRel& f, const CanRel& g);

}  // namespace wwrel
