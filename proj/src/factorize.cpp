#include "wwrel/factorize.hpp"

#include <map>
#include <utility>

#include "wwrel/wwcat.hpp"

namespace wwrel {

namespace {

TraceStep make_step(Move move, Stage stage, std::size_t level, std::size_t index,
                    CanRel left, CanRel right) {
  TraceStep step;
  step.move = move;
  step.stage = stage;
  step.level = level;
  step.index = index;
  step.left = std::move(left);
  step.right = std::move(right);
  return step;
}

std::string locate(const TraceStep& s) {
  return std::string(to_string(s.move)) + "/" + std::string(to_string(s.stage)) +
         " at level " + std::to_string(s.level) + ", index " + std::to_string(s.index);
}

class Builder {
 public:
  // Factors one relation and records the expansion.
  Factorization expand(const CanRel& f, std::size_t level, std::size_t index) {
    const CanRel a = product_rel(identity_rel(f.target()), epsilon_rel(f.source()));
    const CanRel b = product_rel(graph_as_state(f), identity_rel(f.source()));
    TraceStep step = make_step(Move::expand, Stage::expand, level, index, a, b);
    PairAnalysis analysis = analyze_pair(a, b);
    step.check = analysis.junction();
    step.result = f;
    if (!analysis.strongly_transversal) {
      throw FactorizationError(step, "factor pair is not strongly transversal (" +
                                         locate(step) + ")");
    }
    if (!(analysis.composite == f)) {
      throw FactorizationError(step, "factors do not recompose (" + locate(step) + ")");
    }
    trace.push_back(step);
    return {a, b, a.source(), {}};
  }

  CanRel collapse(const CanRel& left, const CanRel& right, Stage stage,
                  std::size_t level, std::size_t index) {
    TraceStep step = make_step(Move::collapse, stage, level, index, left, right);
    PairAnalysis analysis = analyze_pair(left, right);
    step.check = analysis.junction();
    if (!analysis.strongly_transversal) {
      throw FactorizationError(step, "collapse is not strongly transversal (" +
                                         locate(step) + ")");
    }
    step.result = analysis.composite;
    trace.push_back(std::move(step));
    return std::move(analysis.composite);
  }

  std::vector<TraceStep> trace;
};

}  // namespace

std::string_view to_string(Move m) {
  switch (m) {
    case Move::expand:
      return "expand";
    case Move::collapse:
      return "collapse";
  }
  return "?";
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::expand:
      return "expand";
    case Stage::row:
      return "row";
    case Stage::reduction_side:
      return "reduction_side";
    case Stage::coreduction_side:
      return "coreduction_side";
  }
  return "?";
}

Factorization factorize_prop4(const CanRel& f) {
  Builder builder;
  Factorization out = builder.expand(f, 0, 0);
  out.trace = std::move(builder.trace);
  return out;
}

Factorization factorize_ww(const std::vector<CanRel>& word) {
  if (word.empty()) throw DomainError("cannot factorize an empty word");
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (!(word[i - 1].source() == word[i].target())) {
      throw CompositionError(i, "entry " + std::to_string(i) +
                                    " is not composable with entry " + std::to_string(i - 1));
    }
  }

  Builder builder;
  std::vector<CanRel> reductions;
  std::vector<CanRel> coreductions;
  std::vector<CanRel> current = word;
  SymplecticSpace apex;
  for (std::size_t level = 0;; ++level) {
    std::vector<Factorization> factors;
    factors.reserve(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
      factors.push_back(builder.expand(current[i], level, i));
    }
    reductions.push_back(factors.front().reduction);
    coreductions.push_back(factors.back().coreduction);
    if (current.size() == 1) {
      apex = factors.front().middle;
      break;
    }
    std::vector<CanRel> next;
    next.reserve(current.size() - 1);
    for (std::size_t i = 0; i + 1 < current.size(); ++i) {
      next.push_back(builder.collapse(factors[i].coreduction, factors[i + 1].reduction,
                                      Stage::row, level, i));
    }
    current = std::move(next);
  }

  CanRel a = reductions.front();
  for (std::size_t k = 1; k < reductions.size(); ++k) {
    a = builder.collapse(a, reductions[k], Stage::reduction_side, k, 0);
  }
  CanRel b = coreductions.back();
  for (std::size_t k = coreductions.size() - 1; k-- > 0;) {
    b = builder.collapse(b, coreductions[k], Stage::coreduction_side, k, 0);
  }
  return {std::move(a), std::move(b), std::move(apex), std::move(builder.trace)};
}

std::size_t apex_dimension(std::vector<std::size_t> dims) {
  if (dims.size() < 2) throw DomainError("a chain needs at least two spaces");
  while (dims.size() > 1) {
    std::vector<std::size_t> next(dims.size() - 1);
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) next[i] = dims[i] + 2 * dims[i + 1];
    dims = std::move(next);
  }
  return dims.front();
}

VerificationReport verify_two_term(const std::vector<CanRel>& word,
                                   const Factorization& fact) {
  VerificationReport report;
  std::map<std::pair<std::size_t, std::size_t>, const TraceStep*> expansions;
  std::map<std::pair<std::size_t, std::size_t>, const TraceStep*> rows;
  const TraceStep* last_reduction = nullptr;
  const TraceStep* last_coreduction = nullptr;

  for (std::size_t pos = 0; pos < fact.trace.size(); ++pos) {
    const TraceStep& step = fact.trace[pos];
    StepReport r;
    r.position = pos;
    r.move = step.move;
    r.stage = step.stage;
    r.level = step.level;
    r.index = step.index;
    r.ok = true;
    auto fail = [&r](std::string why) {
      if (r.ok) r.detail = std::move(why);
      r.ok = false;
    };

    try {
      PairAnalysis analysis = analyze_pair(step.left, step.right);
      r.observed = analysis.junction();
      if (!analysis.strongly_transversal) fail("pair is not strongly transversal");
      if (r.observed.transversality_defect != step.check.transversality_defect ||
          r.observed.monicity_defect != step.check.monicity_defect) {
        fail("recorded defects differ from the replay");
      }
      if (!(analysis.composite == step.result)) fail("composite differs from the record");
    } catch (const DomainError& e) {
      fail(e.what());
    }

    if (step.move == Move::expand) {
      ++report.expansions;
      if (!classify_lin(step.left).reduction) fail("left factor is not a reduction");
      if (!classify_lin(step.right).coreduction) fail("right factor is not a coreduction");
      if (step.level == 0) {
        if (step.index >= word.size() || !(word[step.index] == step.result)) {
          fail("expansion does not factor the word entry");
        }
      } else {
        auto it = rows.find({step.level - 1, step.index});
        if (it == rows.end() || !(it->second->result == step.result)) {
          fail("expansion does not factor the previous row");
        }
      }
      expansions[{step.level, step.index}] = &step;
    } else {
      ++report.collapses;
      switch (step.stage) {
        case Stage::row: {
          auto l = expansions.find({step.level, step.index});
          auto rr = expansions.find({step.level, step.index + 1});
          if (l == expansions.end() || rr == expansions.end() ||
              !(l->second->right == step.left) || !(rr->second->left == step.right)) {
            fail("row collapse does not join adjacent factors");
          }
          rows[{step.level, step.index}] = &step;
          break;
        }
        case Stage::reduction_side:
          last_reduction = &step;
          break;
        case Stage::coreduction_side:
          last_coreduction = &step;
          break;
        case Stage::expand:
          fail("collapse recorded with the expand stage");
          break;
      }
    }
    report.steps.push_back(std::move(r));
  }

  const RelationProfile pa = classify_lin(fact.reduction);
  const RelationProfile pb = classify_lin(fact.coreduction);
  report.reduction = pa.reduction;
  report.coreduction = pb.coreduction;
  report.middle_consistent = fact.reduction.source() == fact.middle &&
                             fact.coreduction.target() == fact.middle;

  // The accumulated edges must be the factors handed back.
  auto edge = [&](const TraceStep* last, bool left_edge) -> const CanRel* {
    if (last != nullptr) return &last->result;
    auto it = left_edge ? expansions.find({0, 0})
                        : expansions.find({0, word.empty() ? 0 : word.size() - 1});
    if (it == expansions.end()) return nullptr;
    return left_edge ? &it->second->left : &it->second->right;
  };
  const CanRel* traced_a = edge(last_reduction, true);
  const CanRel* traced_b = edge(last_coreduction, false);
  report.factors_traced = traced_a != nullptr && traced_b != nullptr &&
                           *traced_a == fact.reduction && *traced_b == fact.coreduction;

  try {
    report.composite_matches = report.middle_consistent && !word.empty() &&
                               compose_lin(fact.reduction, fact.coreduction) ==
                                   fold_word<LinEngine>(word);
  } catch (const DomainError&) {
    report.composite_matches = false;
  }

  bool steps_ok = true;
  for (const StepReport& s : report.steps) steps_ok = steps_ok && s.ok;
  report.ok = steps_ok && report.factors_traced && report.reduction && report.coreduction &&
              report.middle_consistent && report.composite_matches;
  return report;
}

}  // namespace wwrel
