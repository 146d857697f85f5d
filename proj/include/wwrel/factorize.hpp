#pragma once

// Two-term factorization of composable words of linear canonical relations
// into a reduction followed by a coreduction.
//
// A single relation X <- Y factors through X × dual(Y) × Y as
//   (1_X × ε_Y) ∘ (γ_f × 1_Y).
// A word f_1..f_r is handled by factoring every entry, composing each
// coreduction with the following reduction to get a word of length r-1 one
// level down, and repeating until one middle space is left. The reductions
// met on the left edge compose to A, the coreductions on the right edge to B.
// Every composition is checked for strong transversality and recorded.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wwrel/errors.hpp"
#include "wwrel/profile.hpp"
#include "wwrel/symplin.hpp"

namespace wwrel {

enum class Move { expand, collapse };

// expand: a relation was replaced by its reduction/coreduction pair.
// row: a coreduction was composed with the next reduction.
// reduction_side / coreduction_side: accumulation of A and B.
enum class Stage { expand, row, reduction_side, coreduction_side };

std::string_view to_string(Move m);
std::string_view to_string(Stage s);

struct TraceStep {
  Move move = Move::expand;
  Stage stage = Stage::expand;
  std::size_t level = 0;
  std::size_t index = 0;
  JunctionCheck check;
  CanRel left;
  CanRel right;
  // For an expansion, the relation that was factored; for a collapse, the
  // composite that replaced the pair.
  CanRel result;
};

struct Factorization {
  CanRel reduction;    // A : X_0 <- Q
  CanRel coreduction;  // B : Q <- X_r
  SymplecticSpace middle;
  std::vector<TraceStep> trace;
};

// Raised if a composition the construction relies on is not strongly
// transversal, or a factor fails to recompose. Either would indicate a bug.
class FactorizationError : public DomainError {
 public:
  FactorizationError(TraceStep step, const std::string& what)
      : DomainError(what), step_(std::move(step)) {}
  const TraceStep& step() const { return step_; }

 private:
  TraceStep step_;
};

Factorization factorize_prop4(const CanRel& f);

// Throws DomainError on an empty word, CompositionError on a
// non-composable adjacency.
Factorization factorize_ww(const std::vector<CanRel>& word);

// Dimension of the apex for a chain of spaces of the given dimensions,
// by iterating d'_i = d_{i-1} + 2 d_i until one entry remains.
std::size_t apex_dimension(std::vector<std::size_t> dims);

struct StepReport {
  std::size_t position = 0;
  Move move = Move::expand;
  Stage stage = Stage::expand;
  std::size_t level = 0;
  std::size_t index = 0;
  JunctionCheck observed;
  bool ok = false;
  std::string detail;
};

struct VerificationReport {
  bool ok = false;
  std::vector<StepReport> steps;
  std::size_t expansions = 0;
  std::size_t collapses = 0;
  bool reduction = false;
  bool coreduction = false;
  bool middle_consistent = false;
  // A and B are the results of the traced edge accumulations.
  bool factors_traced = false;
  bool composite_matches = false;
};

// Replays the trace: every recorded pair is re-analyzed and must be
// strongly transversal with the recorded defects and composite; expansions
// at level 0 must factor the word's entries and deeper expansions must
// factor the previous level's row collapses. Finally A must be a
// reduction, B a coreduction, and A ∘ B the composite of the word.
VerificationReport verify_two_term(const std::vector<CanRel>& word,
                                   const Factorization& fact);

}  // namespace wwrel
