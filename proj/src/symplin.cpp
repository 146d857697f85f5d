#include "wwrel/symplin.hpp"

#include <numeric>
#include <string>

#include "wwrel/errors.hpp"

namespace wwrel {

namespace {

std::vector<std::size_t> iota_indices(std::size_t from, std::size_t count) {
  std::vector<std::size_t> out(count);
  std::iota(out.begin(), out.end(), from);
  return out;
}

std::string describe(const SymplecticSpace& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.blocks().size(); ++i) {
    if (i > 0) out += ",";
    out += "(" + std::to_string(s.blocks()[i].half_dim) + "," +
           (s.blocks()[i].sign > 0 ? "+1" : "-1") + ")";
  }
  return out + "]";
}

// Empty string when graph is lagrangian for form, otherwise the failed check.
std::string lagrangian_failure(const Matrix& form, const Subspace& graph) {
  const std::size_t n = form.cols();
  if (n % 2 != 0) return "ambient dimension " + std::to_string(n) + " is odd";
  if (graph.dim() * 2 != n) {
    return "dimension " + std::to_string(graph.dim()) +
           " is not half the ambient dimension " + std::to_string(n);
  }
  const Matrix& basis = graph.basis();
  const Matrix twisted = multiply(basis, form);
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    for (std::size_t j = i + 1; j < basis.rows(); ++j) {
      if (sgn(dot(twisted.row(i), basis.row(j))) != 0) {
        return "not isotropic: basis rows " + std::to_string(i) + " and " +
               std::to_string(j) + " pair nontrivially";
      }
    }
  }
  return {};
}

Matrix diagonal_rows(std::size_t d) {
  std::vector<SparseRow> rows(d);
  for (std::size_t j = 0; j < d; ++j) rows[j] = {{j, Rational(1)}, {d + j, Rational(1)}};
  return Matrix::from_rows(2 * d, std::move(rows));
}

void require_composable(const CanRel& f, const CanRel& g) {
  if (!(f.source() == g.target())) {
    throw DomainError("source " + describe(f.source()) +
                      " of the first relation does not match target " +
                      describe(g.target()) + " of the second");
  }
}

}  // namespace

SymplecticSpace::SymplecticSpace(std::vector<SymplecticBlock> blocks)
    : blocks_(std::move(blocks)) {
  for (const SymplecticBlock& b : blocks_) {
    if (b.sign != 1 && b.sign != -1) {
      throw DomainError("block sign must be +1 or -1, got " + std::to_string(b.sign));
    }
  }
}

std::size_t SymplecticSpace::dim() const {
  std::size_t d = 0;
  for (const SymplecticBlock& b : blocks_) d += 2 * b.half_dim;
  return d;
}

Matrix form_matrix(const SymplecticSpace& s) {
  std::vector<SparseRow> rows(s.dim());
  std::size_t offset = 0;
  for (const SymplecticBlock& b : s.blocks()) {
    const Rational sign(b.sign);
    for (std::size_t k = 0; k < b.half_dim; ++k) {
      rows[offset + k].push_back({offset + b.half_dim + k, sign});
      rows[offset + b.half_dim + k].push_back({offset + k, -sign});
    }
    offset += 2 * b.half_dim;
  }
  return Matrix::from_rows(s.dim(), std::move(rows));
}

SymplecticSpace dual_space(const SymplecticSpace& s) {
  std::vector<SymplecticBlock> blocks = s.blocks();
  for (SymplecticBlock& b : blocks) b.sign = -b.sign;
  return SymplecticSpace(std::move(blocks));
}

SymplecticSpace product_space(const SymplecticSpace& a, const SymplecticSpace& b) {
  std::vector<SymplecticBlock> blocks = a.blocks();
  blocks.insert(blocks.end(), b.blocks().begin(), b.blocks().end());
  return SymplecticSpace(std::move(blocks));
}

bool is_lagrangian(const SymplecticSpace& s, const Subspace& sub) {
  if (sub.ambient_dim() != s.dim()) {
    throw DomainError("subspace lives in dimension " +
                      std::to_string(sub.ambient_dim()) + " but the space has dimension " +
                      std::to_string(s.dim()));
  }
  return lagrangian_failure(form_matrix(s), sub).empty();
}

CanRel::CanRel(SymplecticSpace target, SymplecticSpace source, Subspace graph)
    : target_(std::move(target)), source_(std::move(source)), graph_(std::move(graph)) {
  const std::size_t ambient = target_.dim() + source_.dim();
  if (graph_.ambient_dim() != ambient) {
    throw DomainError("graph lives in dimension " + std::to_string(graph_.ambient_dim()) +
                      " but target ⊕ source has dimension " + std::to_string(ambient));
  }
  const std::string failure =
      lagrangian_failure(form_matrix(product_space(target_, dual_space(source_))), graph_);
  if (!failure.empty()) throw DomainError("graph is not lagrangian: " + failure);
}

CanRel identity_rel(const SymplecticSpace& x) {
  return CanRel(x, x, Subspace::span(diagonal_rows(x.dim())));
}

bool is_identity_rel(const CanRel& f) {
  return f.target() == f.source() &&
         f.graph().basis() == diagonal_rows(f.target().dim());
}

CanRel graph_of_map(const Matrix& m, const SymplecticSpace& target,
                    const SymplecticSpace& source) {
  const std::size_t t = target.dim();
  const std::size_t s = source.dim();
  if (m.rows() != t || m.cols() != s) {
    throw DomainError("map of shape " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + " cannot go to dimension " +
                      std::to_string(t) + " from dimension " + std::to_string(s));
  }
  const Matrix columns = transpose(m);
  std::vector<SparseRow> rows(s);
  for (std::size_t j = 0; j < s; ++j) {
    rows[j] = columns.row(j);
    rows[j].push_back({t + j, Rational(1)});
  }
  return CanRel(target, source, Subspace::span(Matrix::from_rows(t + s, std::move(rows))));
}

CanRel epsilon_rel(const SymplecticSpace& y) {
  return CanRel(SymplecticSpace(), product_space(dual_space(y), y),
                Subspace::span(diagonal_rows(y.dim())));
}

CanRel graph_as_state(const CanRel& f) {
  return CanRel(product_space(f.target(), dual_space(f.source())), SymplecticSpace(),
                f.graph());
}

PairAnalysis analyze_pair(const CanRel& f, const CanRel& g) {
  require_composable(f, g);
  const std::size_t a = f.target().dim();
  const std::size_t b = f.source().dim();
  const std::size_t c = g.source().dim();
  const std::size_t n = a + 2 * b + c;

  const auto f_index = iota_indices(0, a + b);
  const auto g_index = iota_indices(a + b, b + c);
  const Subspace fg = Subspace::span(vstack(remap_columns(f.graph().basis(), n, f_index),
                                            remap_columns(g.graph().basis(), n, g_index)));

  // X ⊕ Δ_Y ⊕ Z
  std::vector<SparseRow> rows;
  rows.reserve(a + b + c);
  for (std::size_t i = 0; i < a; ++i) rows.push_back({{i, Rational(1)}});
  for (std::size_t j = 0; j < b; ++j) {
    rows.push_back({{a + j, Rational(1)}, {a + b + j, Rational(1)}});
  }
  for (std::size_t k = 0; k < c; ++k) rows.push_back({{a + 2 * b + k, Rational(1)}});
  const Subspace diagonal = Subspace::span(Matrix::from_rows(n, std::move(rows)));

  PairAnalysis out;
  out.fiber_product = intersect(fg, diagonal);
  out.transversality_defect = n - sum(fg, diagonal).dim();

  std::vector<std::size_t> outer = iota_indices(0, a);
  const auto z_cols = iota_indices(a + 2 * b, c);
  outer.insert(outer.end(), z_cols.begin(), z_cols.end());
  Subspace composite = Subspace::span(select_columns(out.fiber_product.basis(), outer));
  out.monicity_defect = out.fiber_product.dim() - composite.dim();

  out.transversal = out.transversality_defect == 0;
  out.monic = out.monicity_defect == 0;
  out.strongly_transversal = out.transversal && out.monic;
  out.composite = CanRel(f.target(), g.source(), std::move(composite));
  return out;
}

CanRel compose_lin(const CanRel& f, const CanRel& g) {
  return analyze_pair(f, g).composite;
}

CanRel transpose_lin(const CanRel& f) {
  const std::size_t t = f.target().dim();
  const std::size_t s = f.source().dim();
  std::vector<std::size_t> index = iota_indices(s, t);
  const auto back = iota_indices(0, s);
  index.insert(index.end(), back.begin(), back.end());
  return CanRel(f.source(), f.target(),
                Subspace::span(remap_columns(f.graph().basis(), t + s, index)));
}

CanRel product_rel(const CanRel& f, const CanRel& g) {
  const std::size_t t1 = f.target().dim();
  const std::size_t s1 = f.source().dim();
  const std::size_t t2 = g.target().dim();
  const std::size_t s2 = g.source().dim();
  const std::size_t n = t1 + t2 + s1 + s2;

  std::vector<std::size_t> f_index = iota_indices(0, t1);
  const auto f_src = iota_indices(t1 + t2, s1);
  f_index.insert(f_index.end(), f_src.begin(), f_src.end());

  std::vector<std::size_t> g_index = iota_indices(t1, t2);
  const auto g_src = iota_indices(t1 + t2 + s1, s2);
  g_index.insert(g_index.end(), g_src.begin(), g_src.end());

  return CanRel(product_space(f.target(), g.target()),
                product_space(f.source(), g.source()),
                Subspace::span(vstack(remap_columns(f.graph().basis(), n, f_index),
                                      remap_columns(g.graph().basis(), n, g_index))));
}

RelationProfile classify_lin(const CanRel& f) {
  const std::size_t t = f.target().dim();
  const std::size_t s = f.source().dim();
  const std::size_t k = f.graph().dim();
  const std::size_t target_rank = rank(select_columns(f.graph().basis(), iota_indices(0, t)));
  const std::size_t source_rank = rank(select_columns(f.graph().basis(), iota_indices(t, s)));
  // graph ∩ (target ⊕ 0) is the kernel of the source projection, and
  // graph ∩ (0 ⊕ source) the kernel of the target projection.
  return RelationProfile::from_predicates(target_rank == t, source_rank == s,
                                          target_rank == k, source_rank == k);
}

}  // namespace wwrel
