#include <doctest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "wwrel/errors.hpp"
#include "wwrel/symplin.hpp"

using namespace wwrel;
using namespace wwrel::testing;

namespace {

const SymplecticSpace kPoint;
const SymplecticSpace kPlane = SymplecticSpace::standard(1);

Matrix dense(std::size_t cols, std::vector<std::vector<Rational>> rows) {
  return Matrix::from_dense(cols, rows);
}

Subspace span(std::size_t cols, std::vector<std::vector<Rational>> rows) {
  return Subspace::span(dense(cols, std::move(rows)));
}

// The form written out block by block, independently of form_matrix.
Dense oracle_form(const SymplecticSpace& s) {
  const std::size_t n = s.dim();
  Dense out(n, std::vector<Rational>(n));
  std::size_t offset = 0;
  for (const SymplecticBlock& b : s.blocks()) {
    for (std::size_t i = 0; i < b.half_dim; ++i) {
      out[offset + i][offset + b.half_dim + i] = b.sign;
      out[offset + b.half_dim + i][offset + i] = -b.sign;
    }
    offset += 2 * b.half_dim;
  }
  return out;
}

// B Ω Bᵀ = 0 and dim = n / 2, computed densely.
bool oracle_lagrangian(const SymplecticSpace& s, const Subspace& sub) {
  const std::size_t n = s.dim();
  if (2 * sub.dim() != n) return false;
  const Dense b = dense_of(sub.basis());
  const Dense bo = dense_multiply(b, oracle_form(s), n);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      Rational acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += bo[i][k] * b[j][k];
      if (acc != 0) return false;
    }
  }
  return true;
}

bool oracle_relation_lagrangian(const CanRel& f) {
  return oracle_lagrangian(product_space(f.target(), dual_space(f.source())), f.graph());
}

// {(x, z) | (x, y) in f and (y, z) in g for some y}, by solving for the
// coefficient vectors directly.
Subspace oracle_compose(const CanRel& f, const CanRel& g) {
  const std::size_t dx = f.target().dim();
  const std::size_t dy = f.source().dim();
  const std::size_t dz = g.source().dim();
  const Dense fb = dense_of(f.graph().basis());
  const Dense gb = dense_of(g.graph().basis());
  const std::size_t unknowns = fb.size() + gb.size();
  Dense eq(dy, std::vector<Rational>(unknowns));
  for (std::size_t y = 0; y < dy; ++y) {
    for (std::size_t i = 0; i < fb.size(); ++i) eq[y][i] = fb[i][dx + y];
    for (std::size_t j = 0; j < gb.size(); ++j) eq[y][fb.size() + j] = -gb[j][y];
  }
  Dense out;
  for (const auto& c : dense_nullspace(eq, unknowns)) {
    std::vector<Rational> v(dx + dz);
    for (std::size_t i = 0; i < fb.size(); ++i) {
      for (std::size_t x = 0; x < dx; ++x) v[x] += c[i] * fb[i][x];
    }
    for (std::size_t j = 0; j < gb.size(); ++j) {
      for (std::size_t z = 0; z < dz; ++z) v[dx + z] += c[fb.size() + j] * gb[j][dy + z];
    }
    out.push_back(std::move(v));
  }
  return Subspace::span(Matrix::from_dense(dx + dz, out));
}

// The graph of a map written out as rows (m v, v) for unit vectors v.
Subspace oracle_graph(const Matrix& m) {
  Dense rows;
  const Dense dm = dense_of(m);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<Rational> v(m.rows() + m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = dm[i][j];
    v[m.rows() + j] = 1;
    rows.push_back(std::move(v));
  }
  return Subspace::span(Matrix::from_dense(m.rows() + m.cols(), rows));
}

SymplecticSpace random_space(Generator& gen, std::size_t max_half) {
  return SymplecticSpace::standard(gen.uniform(0, max_half), gen.coin() ? 1 : -1);
}

}  // namespace

TEST_CASE("form matrices") {
  CHECK(form_matrix(kPoint).rows() == 0);
  CHECK(form_matrix(kPlane) == dense(2, {{0, 1}, {-1, 0}}));
  const SymplecticSpace mixed({{1, 1}, {1, -1}});
  CHECK(form_matrix(mixed) ==
        dense(4, {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}));
  Generator gen(30);
  for (int trial = 0; trial < 50; ++trial) {
    const SymplecticSpace s = gen.space(2);
    REQUIRE(dense_of(form_matrix(s)) == oracle_form(s));
    REQUIRE(rank(form_matrix(s)) == s.dim());
  }
  CHECK_THROWS_AS(SymplecticSpace({{1, 2}}), DomainError);
}

TEST_CASE("dual and product spaces") {
  CHECK(dual_space(kPoint) == kPoint);
  CHECK(dual_space(kPlane) == SymplecticSpace::standard(1, -1));
  CHECK(dual_space(dual_space(SymplecticSpace({{1, 1}, {2, -1}}))) ==
        SymplecticSpace({{1, 1}, {2, -1}}));
  CHECK(product_space(kPlane, kPoint) == kPlane);
  CHECK(product_space(kPoint, kPlane) == kPlane);
  const SymplecticSpace p = product_space(kPlane, dual_space(kPlane));
  CHECK(p == SymplecticSpace({{1, 1}, {1, -1}}));
  CHECK(p.dim() == 4);
}

TEST_CASE("lagrangian test on examples") {
  const SymplecticSpace yy = product_space(kPlane, dual_space(kPlane));
  CHECK(is_lagrangian(yy, span(4, {{1, 0, 1, 0}, {0, 1, 0, 1}})));
  const SymplecticSpace four = SymplecticSpace({{1, 1}, {1, 1}});
  CHECK_FALSE(is_lagrangian(four, span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})));
  CHECK(is_lagrangian(yy, span(4, {{1, 0, 1, 0}, {1, 1, 0, 1}})));
  CHECK_FALSE(is_lagrangian(kPlane, Subspace::full(2)));
  CHECK_THROWS_AS(is_lagrangian(kPlane, Subspace::full(3)), DomainError);
  CHECK_THROWS_AS(CanRel(kPlane, kPlane, span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}})), DomainError);
}

TEST_CASE("graphs of maps") {
  CHECK(graph_of_map(Matrix::identity(2), kPlane, kPlane) == identity_rel(kPlane));
  const CanRel shear = graph_of_map(dense(2, {{1, 1}, {0, 1}}), kPlane, kPlane);
  CHECK(oracle_relation_lagrangian(shear));
  const CanRel rotation = graph_of_map(dense(2, {{0, -1}, {1, 0}}), kPlane, kPlane);
  CHECK(oracle_relation_lagrangian(rotation));
  CHECK_NOTHROW(graph_of_map(dense(2, {{2, 0}, {0, Rational(1, 2)}}), kPlane, kPlane));
  CHECK_THROWS_AS(graph_of_map(dense(2, {{2, 0}, {0, 1}}), kPlane, kPlane), DomainError);
  CHECK_THROWS_AS(graph_of_map(Matrix::identity(3), kPlane, kPlane), DomainError);
}

TEST_CASE("epsilon relations") {
  const CanRel e0 = epsilon_rel(kPoint);
  CHECK(e0.target().is_point());
  CHECK(e0.source().is_point());
  CHECK(e0.graph().dim() == 0);

  const CanRel e = epsilon_rel(kPlane);
  CHECK(e.target().is_point());
  CHECK(e.source() == product_space(dual_space(kPlane), kPlane));
  CHECK(e.graph() == span(4, {{1, 0, 1, 0}, {0, 1, 0, 1}}));
  CHECK(oracle_relation_lagrangian(e));
  CHECK(classify_lin(e).reduction);
  CHECK_FALSE(classify_lin(e).coreduction);
  CHECK(classify_lin(transpose_lin(e)).coreduction);

  Generator gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    const CanRel er = epsilon_rel(gen.space(2));
    REQUIRE(oracle_relation_lagrangian(er));
    REQUIRE(classify_lin(er).reduction);
  }
}

TEST_CASE("composition examples") {
  const CanRel shear = graph_of_map(dense(2, {{1, 1}, {0, 1}}), kPlane, kPlane);
  CHECK(compose_lin(shear, identity_rel(kPlane)) == shear);
  CHECK(compose_lin(identity_rel(kPlane), shear) == shear);

  const Matrix a = dense(2, {{1, 1}, {0, 1}});
  const Matrix b = dense(2, {{1, 0}, {Rational(-1, 2), 1}});
  CHECK(compose_lin(graph_of_map(a, kPlane, kPlane), graph_of_map(b, kPlane, kPlane)) ==
        graph_of_map(multiply(a, b), kPlane, kPlane));

  // A lagrangian line L as 1 <- Y, composed with its transpose Y <- 1.
  const CanRel line(kPoint, kPlane, span(2, {{1, 0}}));
  const CanRel back = transpose_lin(line);
  const CanRel zero = compose_lin(line, back);
  CHECK(zero.target().is_point());
  CHECK(zero.source().is_point());
  CHECK(zero.graph().dim() == 0);
  CHECK_THROWS_AS(compose_lin(line, line), DomainError);
}

TEST_CASE("transposes") {
  CHECK(transpose_lin(identity_rel(kPlane)) == identity_rel(kPlane));
  Generator gen(32);
  for (int trial = 0; trial < 50; ++trial) {
    const CanRel f = gen.canrel(gen.space(2), gen.space(2));
    REQUIRE(transpose_lin(transpose_lin(f)) == f);
    REQUIRE(oracle_relation_lagrangian(transpose_lin(f)));
  }
}

TEST_CASE("products of relations") {
  Generator gen(33);
  const CanRel f = gen.canrel(kPlane, SymplecticSpace({{1, -1}, {1, 1}}));
  CHECK(product_rel(f, identity_rel(kPoint)) == f);
  const SymplecticSpace x = SymplecticSpace::standard(2, -1);
  CHECK(product_rel(identity_rel(x), identity_rel(kPlane)) ==
        identity_rel(product_space(x, kPlane)));

  // 1_X × ε_Y for X = Y = the plane: {(x | x, y, y)} written out by hand.
  const CanRel left = product_rel(identity_rel(kPlane), epsilon_rel(kPlane));
  CHECK(left.target() == kPlane);
  CHECK(left.source() == SymplecticSpace({{1, 1}, {1, -1}, {1, 1}}));
  CHECK(left.graph() == span(8, {{1, 0, 1, 0, 0, 0, 0, 0},
                                 {0, 1, 0, 1, 0, 0, 0, 0},
                                 {0, 0, 0, 0, 1, 0, 1, 0},
                                 {0, 0, 0, 0, 0, 1, 0, 1}}));
}

TEST_CASE("classification examples") {
  CHECK(classify_lin(identity_rel(kPlane)) == RelationProfile::from_predicates(true, true, true, true));
  // L ⊕ M for lagrangian lines in the target and in the source.
  const CanRel lm(kPlane, kPlane, span(4, {{1, 0, 0, 0}, {0, 0, 0, 1}}));
  const RelationProfile p = classify_lin(lm);
  CHECK_FALSE(p.surjective);
  CHECK_FALSE(p.cosurjective);
  CHECK_FALSE(p.injective);
  CHECK_FALSE(p.coinjective);
}

TEST_CASE("pair analysis examples") {
  Generator gen(34);
  const CanRel f = gen.canrel(kPlane, SymplecticSpace::standard(2));
  const PairAnalysis with_id = analyze_pair(f, identity_rel(f.source()));
  CHECK(with_id.strongly_transversal);
  CHECK(with_id.transversality_defect == 0);
  CHECK(with_id.monicity_defect == 0);
  CHECK(with_id.composite == f);

  const CanRel line(kPoint, kPlane, span(2, {{1, 0}}));
  const PairAnalysis bad = analyze_pair(line, transpose_lin(line));
  CHECK_FALSE(bad.transversal);
  CHECK_FALSE(bad.monic);
  CHECK(bad.transversality_defect == 1);
  CHECK(bad.monicity_defect == 1);
  CHECK(bad.fiber_product.ambient_dim() == 4);
  CHECK_THROWS_AS(analyze_pair(line, line), DomainError);
}

TEST_CASE("property: composites agree with the coefficient-solving oracle") {
  Generator gen(35);
  for (int trial = 0; trial < 300; ++trial) {
    const auto word = gen.word(2, 2, 0.5);
    const PairAnalysis a = analyze_pair(word[0], word[1]);
    REQUIRE(a.composite.graph() == oracle_compose(word[0], word[1]));
    REQUIRE(a.composite == compose_lin(word[0], word[1]));
    REQUIRE(a.strongly_transversal == (a.transversal && a.monic));
    REQUIRE(a.transversal == (a.transversality_defect == 0));
    REQUIRE(a.monic == (a.monicity_defect == 0));
  }
}

TEST_CASE("property: composition of lagrangian relations stays lagrangian") {
  Generator gen(36);
  std::size_t degenerate = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const SymplecticSpace x = random_space(gen, 4);
    const SymplecticSpace y = random_space(gen, 4);
    const SymplecticSpace z = random_space(gen, 4);
    const CanRel f = gen.canrel(x, y, 0.6);
    const CanRel g = gen.canrel(y, z, 0.6);
    const PairAnalysis a = analyze_pair(f, g);
    if (!a.strongly_transversal) ++degenerate;
    REQUIRE(oracle_lagrangian(product_space(x, dual_space(z)), oracle_compose(f, g)));
  }
  CHECK(degenerate > 0);
}

TEST_CASE("property: transversality and monicity defects coincide") {
  Generator gen(37);
  std::size_t nonzero = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto word = gen.word(2, 2, 0.6);
    const PairAnalysis a = analyze_pair(word[0], word[1]);
    REQUIRE(a.transversality_defect == a.monicity_defect);
    if (a.monic) REQUIRE(a.transversal);
    if (a.monicity_defect > 0) ++nonzero;
  }
  CHECK(nonzero > 0);
}

TEST_CASE("property: surjective iff coinjective, injective iff cosurjective") {
  Generator gen(38);
  std::size_t not_surjective = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const CanRel f = gen.canrel(gen.space(2), gen.space(2), 0.6);
    const RelationProfile p = classify_lin(f);
    REQUIRE(p.surjective == p.coinjective);
    REQUIRE(p.injective == p.cosurjective);
    if (!p.surjective) ++not_surjective;
  }
  CHECK(not_surjective > 0);
}

TEST_CASE("property: decorated junctions are strongly transversal") {
  Generator gen(39);
  std::size_t decorated = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto word = gen.word(2, 2, 0.5);
    // Force a decoration half the time: an epsilon is a reduction, its
    // transpose a coreduction.
    if (gen.coin()) {
      const SymplecticSpace y = gen.space(1);
      word[1] = epsilon_rel(y);
      word[0] = gen.canrel(gen.space(2), kPoint);
    }
    const RelationProfile pf = classify_lin(word[0]);
    const RelationProfile pg = classify_lin(word[1]);
    if (pf.coreduction || pg.reduction) {
      ++decorated;
      REQUIRE(analyze_pair(word[0], word[1]).strongly_transversal);
    }
  }
  CHECK(decorated > 50);
}

TEST_CASE("property: transpose is contravariant") {
  Generator gen(40);
  for (int trial = 0; trial < 200; ++trial) {
    const auto word = gen.word(2, 2, 0.5);
    REQUIRE(transpose_lin(compose_lin(word[0], word[1])) ==
            compose_lin(transpose_lin(word[1]), transpose_lin(word[0])));
    REQUIRE(classify_lin(word[0]).reduction == classify_lin(transpose_lin(word[0])).coreduction);
  }
}

TEST_CASE("property: graphs of symplectic maps compose functorially") {
  Generator gen(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = trial % 2 == 0 ? 1 : 2;
    const SymplecticSpace s = SymplecticSpace::standard(n, gen.coin() ? 1 : -1);
    const Matrix a = gen.symplectic_matrix(n);
    const Matrix b = gen.symplectic_matrix(n);
    const CanRel ga = graph_of_map(a, s, s);
    REQUIRE(ga.graph() == oracle_graph(a));
    REQUIRE(compose_lin(ga, graph_of_map(b, s, s)) == graph_of_map(multiply(a, b), s, s));
  }
}
