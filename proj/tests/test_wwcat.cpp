#include <doctest.h>

#include "support/generators.hpp"
#include "wwrel/wwcat.hpp"

using namespace wwrel;
using namespace wwrel::testing;

namespace {

const SymplecticSpace kPoint;
const SymplecticSpace kPlane = SymplecticSpace::standard(1);

using FinPath = Path<FinEngine>;
using LinPath = Path<LinEngine>;

CanRel shear(Rational s) {
  return graph_of_map(Matrix::from_dense(2, {{1, s}, {0, 1}}), kPlane, kPlane);
}

// A lagrangian line as 1 <- plane and its transpose; the pair has defect 1.
CanRel line_out() { return CanRel(kPoint, kPlane, Subspace::span(Matrix::from_dense(2, {{1, 0}}))); }

}  // namespace

TEST_CASE("make_path strips identities and validates adjacency") {
  const FinSet x("X", {"a", "b"});
  const FinSet y("Y", {"1"});
  const FinSet z("Z", {"p", "q"});
  Generator gen(50);
  const FinRelation f = gen.finrel(x, y, 0.6);
  const FinRelation g = gen.finrel(y, z, 0.6);

  const FinPath idx = make_path<FinEngine>({identity_fin(x)}, x);
  CHECK(idx.is_identity());
  CHECK(idx.target() == x);
  CHECK(idx.source() == x);

  const FinPath p = make_path<FinEngine>(
      {identity_fin(x), f, identity_fin(y), identity_fin(y), g, identity_fin(z)});
  CHECK(p.word() == std::vector<FinRelation>{f, g});
  CHECK(p.target() == x);
  CHECK(p.source() == z);

  try {
    make_path<FinEngine>({f, f});
    FAIL("expected a composition error");
  } catch (const CompositionError& e) {
    CHECK(e.index() == 1);
  }
  CHECK_THROWS_AS(make_path<FinEngine>({}), DomainError);
}

TEST_CASE("property: minimal form is idempotent under identity insertion") {
  Generator gen(51);
  for (int trial = 0; trial < 100; ++trial) {
    const auto word = gen.word(gen.uniform(1, 4), 1);
    const LinPath p = make_path<LinEngine>(word);
    REQUIRE(make_path<LinEngine>(p.word(), p.target()) == p);
    std::vector<CanRel> padded;
    for (const CanRel& f : word) {
      if (gen.coin()) padded.push_back(identity_rel(f.target()));
      padded.push_back(f);
    }
    padded.push_back(identity_rel(word.back().source()));
    REQUIRE(make_path<LinEngine>(padded) == p);
  }
}

TEST_CASE("path composition is concatenation, associative and unital") {
  Generator gen(52);
  std::vector<FinSet> sets;
  for (int i = 0; i < 4; ++i) sets.push_back(gen.finset("s" + std::to_string(i), 2));
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t la = gen.uniform(0, 3);
    const std::size_t lb = gen.uniform(0, 3);
    const std::size_t lc = gen.uniform(0, 3);
    auto word = [&](std::size_t len) {
      std::vector<FinRelation> w;
      for (std::size_t i = 0; i < len; ++i) w.push_back(gen.finrel(sets[i % 2], sets[(i + 1) % 2], 0.5));
      return w;
    };
    // All three paths run between sets[0] and itself or sets[1]; pad to
    // make them composable.
    auto path = [&](std::size_t len) {
      auto w = word(len);
      if (len % 2 == 1) w.push_back(gen.finrel(sets[1], sets[0], 0.5));
      return make_path<FinEngine>(w, sets[0]);
    };
    const FinPath a = path(la);
    const FinPath b = path(lb);
    const FinPath c = path(lc);
    REQUIRE(compose_paths(compose_paths(a, b), c) == compose_paths(a, compose_paths(b, c)));
    const FinPath unit(sets[0]);
    REQUIRE(compose_paths(a, unit) == a);
    REQUIRE(compose_paths(unit, a) == a);
    REQUIRE(compose_paths(a, b).length() == a.length() + b.length());
    REQUIRE(functor_c(compose_paths(a, b)) == FinEngine::compose(functor_c(a), functor_c(b)));
  }
}

TEST_CASE("path transpose") {
  const LinPath empty(kPlane);
  CHECK(transpose_path(empty) == empty);
  const CanRel f = shear(1);
  const CanRel g = shear(Rational(1, 3));
  const LinPath p = make_path<LinEngine>({f, g});
  CHECK(transpose_path(p).word() == std::vector<CanRel>{transpose_lin(g), transpose_lin(f)});
  CHECK(transpose_path(transpose_path(p)) == p);

  // A chain of reductions S_i <- S_i × dual(W) × W; its transpose is a
  // chain of coreductions.
  Generator gen(53);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CanRel> reductions;
    SymplecticSpace s = gen.space(1);
    for (int i = 0; i < 3; ++i) {
      const SymplecticSpace w = gen.space(1);
      reductions.push_back(product_rel(identity_rel(s), epsilon_rel(w)));
      s = product_space(s, product_space(dual_space(w), w));
    }
    const LinPath q = make_path<LinEngine>(reductions);
    for (const CanRel& r : q.word()) REQUIRE(classify_lin(r).reduction);
    const LinPath t = transpose_path(q);
    for (const CanRel& c : t.word()) REQUIRE(classify_lin(c).coreduction);
  }
}

TEST_CASE("collapse_at") {
  const CanRel f = shear(2);
  LinPath p = make_path<LinEngine>({f});
  CHECK(p.length() == 1);

  // A coreduction followed by anything collapses.
  const CanRel co = transpose_lin(epsilon_rel(kPlane));
  Generator gen(54);
  const CanRel after = gen.canrel(co.source(), kPlane);
  const LinPath q = make_path<LinEngine>({co, after});
  CHECK(collapse_at(q, 0).length() <= 1);
  CHECK(functor_c(collapse_at(q, 0)) == compose_lin(co, after));

  const LinPath bad = make_path<LinEngine>({line_out(), transpose_lin(line_out())});
  try {
    collapse_at(bad, 0);
    FAIL("expected a refusal");
  } catch (const CollapseRefused& e) {
    CHECK(e.index() == 0);
    CHECK(e.evidence().transversality_defect == 1);
    CHECK(e.evidence().monicity_defect == 1);
  }
  CHECK_THROWS_AS(collapse_at(bad, 1), DomainError);
}

TEST_CASE("normalize examples") {
  const CanRel f = shear(1);
  const CanRel g = shear(Rational(-1, 2));
  const LinPath p = make_path<LinEngine>({f, identity_rel(kPlane), g});
  std::vector<CollapseRecord> log;
  const LinPath n = normalize(p, &log);
  CHECK(n.length() == 1);
  CHECK(n.word().front() == compose_lin(f, g));
  CHECK(log.size() == 1);

  Generator gen(55);
  std::vector<CanRel> word;
  Matrix product = Matrix::identity(4);
  const SymplecticSpace s = SymplecticSpace::standard(2);
  for (int i = 0; i < 4; ++i) {
    const Matrix m = gen.symplectic_matrix(2);
    product = multiply(product, m);
    word.push_back(graph_of_map(m, s, s));
  }
  const LinPath long_path = make_path<LinEngine>(word);
  const LinPath collapsed = normalize(long_path);
  CHECK(collapsed.length() <= 1);
  CHECK(functor_c(collapsed) == graph_of_map(product, s, s));

  const LinPath bad = make_path<LinEngine>({line_out(), transpose_lin(line_out())});
  log.clear();
  CHECK(normalize(bad, &log) == bad);
  CHECK(log.empty());
}

TEST_CASE("functor_c and embed_s") {
  CHECK(functor_c(LinPath(kPlane)) == identity_rel(kPlane));
  const CanRel f = shear(3);
  const CanRel g = shear(-1);
  CHECK(functor_c(make_path<LinEngine>({f, g})) == compose_lin(f, g));
  CHECK(embed_s<LinEngine>(identity_rel(kPlane)).is_identity());
  CHECK(embed_s<LinEngine>(f).word() == std::vector<CanRel>{f});

  Generator gen(56);
  for (int trial = 0; trial < 50; ++trial) {
    const CanRel h = gen.canrel(gen.space(2), gen.space(2));
    REQUIRE(functor_c(embed_s<LinEngine>(h)) == h);
    const FinRelation r = gen.finrel(gen.finset("a", 2), gen.finset("b", 3));
    REQUIRE(functor_c(embed_s<FinEngine>(r)) == r);
  }
}

TEST_CASE("property: every legal collapse preserves the composite") {
  Generator gen(57);
  std::size_t legal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const LinPath p = make_path<LinEngine>(gen.word(gen.uniform(2, 4), 2, 0.6));
    for (std::size_t i = 0; i + 1 < p.length(); ++i) {
      if (!junction_at(p, i).strongly_transversal) continue;
      ++legal;
      REQUIRE(functor_c(collapse_at(p, i)) == functor_c(p));
    }
    const FinSet x = gen.finset("x", 2);
    const FinSet y = gen.finset("y", 3);
    const FinPath q = make_path<FinEngine>({gen.finrel(x, y), gen.finrel(y, x), gen.finrel(x, y)});
    for (std::size_t i = 0; i + 1 < q.length(); ++i) {
      if (!junction_at(q, i).strongly_transversal) continue;
      REQUIRE(functor_c(collapse_at(q, i)) == functor_c(q));
    }
  }
  CHECK(legal > 0);
}
