#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chevexp/splitting.hpp"

using namespace chevexp;

namespace {

Vec<Rat> rand_elem(const ChevalleyAlgebra& alg, std::mt19937_64& gen, long bound = 4) {
  Vec<Rat> v = zero_vec<Rat>(alg.dim());
  for (int i = 0; i < alg.dim(); ++i)
    v(i) = Rat(static_cast<long>(gen() % (2 * bound + 1)) - bound);
  return v;
}

MatQ rand_mat(int n, std::mt19937_64& gen, long bound = 4) {
  MatQ m = zeros<Rat>(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = Rat(static_cast<long>(gen() % (2 * bound + 1)) - bound);
  return m;
}

}  // namespace

TEST_CASE("sl2 gram matrix in the (h, e, f) order") {
  SplittingPtr s = build_splitting(build_algebra("A1"));
  const MatZ& g = s->gram();
  CHECK(g(0, 0) == Int(2));
  CHECK(g(1, 2) == Int(1));
  CHECK(g(2, 1) == Int(1));
  CHECK(g(0, 1) == Int(0));
  CHECK(g(0, 2) == Int(0));
  CHECK(g(1, 1) == Int(0));
  CHECK(s->gram_det() == Int(-2));
}

TEST_CASE("gram is symmetric and pairs only opposite roots") {
  for (auto label : {"A2", "B2", "C3", "G2"}) {
    SplittingPtr s = build_splitting(build_algebra(label));
    const ChevalleyAlgebra& alg = s->algebra();
    const MatZ& g = s->gram();
    for (int i = 0; i < alg.dim(); ++i)
      for (int j = 0; j < alg.dim(); ++j) {
        CHECK(g(i, j) == g(j, i));
        if (!alg.is_h_index(i) && !alg.is_h_index(j) && i != j &&
            alg.root_of_index(i) == alg.root_of_index(j))
          CHECK(!g(i, j).is_zero());
      }
  }
}

TEST_CASE("nondegeneracy mod p matches the distinguished-representation conditions") {
  // natural reps: A_n needs p not dividing n+1; B, C, D need p != 2;
  // adjoint exceptional types need p good. Checked in both directions.
  auto nd = [](const char* label, long p) {
    return build_splitting(build_algebra(label))->nondegenerate_mod(p);
  };
  CHECK(nd("A1", 3));
  CHECK(!nd("A1", 2));
  CHECK(nd("A3", 3));
  CHECK(!nd("A3", 2));
  CHECK(nd("A4", 2));
  CHECK(!nd("A4", 5));
  CHECK(nd("B2", 3));
  CHECK(!nd("B2", 2));
  CHECK(nd("B3", 5));
  CHECK(nd("C3", 3));
  CHECK(!nd("C3", 2));
  CHECK(nd("D4", 3));
  CHECK(!nd("D4", 2));
  CHECK(nd("G2", 5));
  CHECK(nd("G2", 7));
  CHECK(!nd("G2", 2));
  CHECK(!nd("G2", 3));
  CHECK(nd("F4", 5));
  CHECK(!nd("F4", 3));
  CHECK(nd("E6", 5));
  CHECK(!nd("E6", 3));
}

TEST_CASE("G2 adjoint gram determinant has prime support in {2,3}") {
  SplittingPtr s = build_splitting(build_algebra("G2"));
  Int d = s->gram_det();
  Int unit;
  d.remove_factor(2, unit);
  long v3 = unit.remove_factor(3, unit);
  (void)v3;
  CHECK((unit == Int(1) || unit == Int(-1)));
}

TEST_CASE("project_g kills the identity and fixes the image") {
  std::mt19937_64 gen(71);
  Ring<Rat> ring = rat_ring();
  for (auto label : {"A1", "A2", "B2", "C3", "G2"}) {
    SplittingPtr s = build_splitting(build_algebra(label));
    const ChevalleyAlgebra& alg = s->algebra();
    CHECK(is_zero_vec(s->project_g(identity<Rat>(alg.rep_dim()), ring)));
    for (int t = 0; t < 8; ++t) {
      Vec<Rat> x = rand_elem(alg, gen);
      CHECK(vecs_equal(s->project_g(alg.rep(x), ring), x));
      // decomposition M = rep(project_g M) + project_m M, exactly
      MatQ m = rand_mat(alg.rep_dim(), gen);
      MatQ back = Mat<Rat>(alg.rep(s->project_g(m, ring)) + s->project_m(m, ring));
      CHECK(mats_equal(back, m));
      // complement is trace-orthogonal to the algebra
      MatQ pm = s->project_m(m, ring);
      Vec<Rat> tr = s->project_g(pm, ring);
      CHECK(is_zero_vec(tr));
    }
  }
}

TEST_CASE("sl2: project of diag(1,0) splits into H/2 plus I/2") {
  SplittingPtr s = build_splitting(build_algebra("A1"));
  Ring<Rat> ring = rat_ring();
  MatQ m = zeros<Rat>(2, 2);
  m(0, 0) = Rat(1);
  Vec<Rat> g = s->project_g(m, ring);
  CHECK(g(0) == Rat(1, 2));  // h coefficient
  CHECK(g(1).is_zero());
  CHECK(g(2).is_zero());
  MatQ pm = s->project_m(m, ring);
  CHECK(pm(0, 0) == Rat(1, 2));
  CHECK(pm(1, 1) == Rat(1, 2));
  CHECK(pm(0, 1).is_zero());
}

TEST_CASE("type A rule: rep(project_g(M)) = M - (tr M / n) I") {
  std::mt19937_64 gen(73);
  Ring<Rat> ring = rat_ring();
  for (auto label : {"A1", "A2", "A3"}) {
    SplittingPtr s = build_splitting(build_algebra(label));
    const ChevalleyAlgebra& alg = s->algebra();
    int n = alg.rep_dim();
    for (int t = 0; t < 6; ++t) {
      MatQ m = rand_mat(n, gen);
      Rat tr(0);
      for (int i = 0; i < n; ++i) tr += m(i, i);
      MatQ expected = m;
      for (int i = 0; i < n; ++i) expected(i, i) -= tr / Rat(static_cast<long>(n));
      CHECK(mats_equal(Mat<Rat>(alg.rep(s->project_g(m, ring))), expected));
    }
  }
}

TEST_CASE("types B, C, D: projection keeps odd powers and kills even powers") {
  std::mt19937_64 gen(79);
  Ring<Rat> ring = rat_ring();
  for (auto label : {"B2", "C3", "D4"}) {
    SplittingPtr s = build_splitting(build_algebra(label));
    const ChevalleyAlgebra& alg = s->algebra();
    for (int t = 0; t < 5; ++t) {
      Vec<Rat> x = rand_elem(alg, gen, 3);
      MatQ m = alg.rep(x);
      MatQ pw = m;
      for (int i = 2; i <= 4; ++i) {
        pw = Mat<Rat>(pw * m);  // m^i
        MatQ proj = alg.rep(s->project_g(pw, ring));
        if (i % 2 == 1) {
          CHECK(mats_equal(proj, pw));
        } else {
          CHECK(is_zero_mat(proj));
        }
      }
    }
  }
}

TEST_CASE("equivariance of project_g under root-group conjugation over F_q") {
  std::mt19937_64 gen(83);
  for (auto [label, p, k] : {std::tuple<const char*, long, int>{"B2", 3, 1},
                             {"A2", 5, 1},
                             {"G2", 5, 1},
                             {"B2", 3, 2}}) {
    SplittingPtr s = build_splitting(build_algebra(label));
    const ChevalleyAlgebra& alg = s->algebra();
    FqFieldPtr F = FqField::get(p, k);
    Ring<Fq> ring = fq_ring(F);
    for (int t = 0; t < 6; ++t) {
      // random product of root group elements
      Mat<Fq> g = identity<Fq>(alg.rep_dim());
      for (int step = 0; step < 6; ++step) {
        int a = static_cast<int>(gen() % alg.num_positive());
        bool neg = gen() % 2;
        Fq tv = Fq::from_index(F, static_cast<std::int64_t>(gen() % F->q()));
        int idx = neg ? alg.index_neg(a) : alg.index_pos(a);
        g = Mat<Fq>(g * alg.root_group_element(idx, tv, ring));
      }
      auto ginv = inverse(g);
      REQUIRE(ginv.has_value());
      Mat<Fq> m = zeros<Fq>(alg.rep_dim(), alg.rep_dim());
      for (int j = 0; j < alg.rep_dim(); ++j)
        for (int i = 0; i < alg.rep_dim(); ++i)
          m(i, j) = Fq::from_index(F, static_cast<std::int64_t>(gen() % F->q()));
      // project_g(g M g^-1) = Ad(g) project_g(M)
      Vec<Fq> lhs = s->project_g(Mat<Fq>(g * m * *ginv), ring);
      Vec<Fq> rhs = alg.rep_preimage(Mat<Fq>(g * alg.rep(s->project_g(m, ring)) * *ginv), ring)
                        .value();
      CHECK(vecs_equal(lhs, rhs));
    }
  }
}

TEST_CASE("unipotent projection: identity to zero, I+E to E in sl2") {
  SplittingPtr s = build_splitting(build_algebra("A1"));
  Ring<Rat> ring = rat_ring();
  CHECK(is_zero_vec(s->unipotent_to_nilpotent(identity<Rat>(2), ring)));
  MatQ g = identity<Rat>(2);
  g(0, 1) = Rat(1);
  Vec<Rat> x = s->unipotent_to_nilpotent(g, ring);
  CHECK(x(0).is_zero());
  CHECK(x(1) == Rat(1));
  CHECK(x(2).is_zero());
  CHECK_THROWS(s->unipotent_to_nilpotent(Mat<Rat>(identity<Rat>(2) * Rat(2)), ring));
}

TEST_CASE("triangular inverse: zero to identity, E12 in sl3, round trips") {
  Ring<Rat> ring = rat_ring();
  SplittingPtr s = build_splitting(build_algebra("A2"));
  const ChevalleyAlgebra& alg = s->algebra();

  Vec<Rat> zero = zero_element(alg, ring);
  CHECK(mats_equal(s->inverse_on_unipotent_radical(zero, ring), identity<Rat>(3)));

  // x = E12 alone: u = I + E12
  Vec<Rat> x = zero_element(alg, ring);
  int a12 = alg.root_system().simple_root_index(0);
  x(alg.index_pos(a12)) = Rat(1);
  MatQ u = s->inverse_on_unipotent_radical(x, ring);
  MatQ expect = identity<Rat>(3);
  expect += alg.rep(x);
  CHECK(mats_equal(u, expect));

  std::mt19937_64 gen(89);
  for (int t = 0; t < 6; ++t) {
    Vec<Rat> y = zero_element(alg, ring);
    for (int a = 0; a < alg.num_positive(); ++a)
      y(alg.index_pos(a)) = Rat(static_cast<long>(gen() % 9) - 4);
    MatQ uu = s->inverse_on_unipotent_radical(y, ring);
    CHECK(vecs_equal(s->unipotent_to_nilpotent(uu, ring), y));
  }
}

TEST_CASE("triangular inverse stays p-integral on p-integral input (G2, p = 5)") {
  Ring<Rat> ring = rat_ring();
  SplittingPtr s = build_splitting(build_algebra("G2"));
  const ChevalleyAlgebra& alg = s->algebra();
  Vec<Rat> x = zero_element(alg, ring);
  for (int a = 0; a < alg.num_positive(); ++a)
    if (alg.root_system().height(a) == 1) x(alg.index_pos(a)) = Rat(1);
  MatQ u = s->inverse_on_unipotent_radical(x, ring);
  auto cert = certify_p_integral(std::vector<Rat>(u.data(), u.data() + u.size()), 5);
  CHECK(cert.ok);
  CHECK(vecs_equal(s->unipotent_to_nilpotent(u, ring), x));
}

TEST_CASE("splitting unavailable at violating primes") {
  SplittingPtr s = build_splitting(build_algebra("A1"));
  Ring<Fq> ring = fq_ring(FqField::get(2, 1));
  CHECK_THROWS_AS(s->project_g(identity<Fq>(2), ring), SplittingUnavailable);
}
