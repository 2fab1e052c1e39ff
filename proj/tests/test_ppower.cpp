#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chevexp/ppower.hpp"

using namespace chevexp;

namespace {

Vec<Rat> rand_elem(const ChevalleyAlgebra& alg, std::mt19937_64& gen, long bound = 3) {
  Vec<Rat> v = zero_vec<Rat>(alg.dim());
  for (int i = 0; i < alg.dim(); ++i)
    v(i) = Rat(static_cast<long>(gen() % (2 * bound + 1)) - bound);
  return v;
}

Vec<Rat> rand_positive(const ChevalleyAlgebra& alg, std::mt19937_64& gen, long modulus) {
  Vec<Rat> v = zero_vec<Rat>(alg.dim());
  for (int a = 0; a < alg.num_positive(); ++a)
    v(alg.index_pos(a)) = Rat(static_cast<long>(gen() % modulus));
  return v;
}

Vec<Rat> regular_np(const ChevalleyAlgebra& alg) {
  Vec<Rat> v = zero_vec<Rat>(alg.dim());
  for (int a = 0; a < alg.num_positive(); ++a)
    if (alg.root_system().height(a) == 1) v(alg.index_pos(a)) = Rat(1);
  return v;
}

}  // namespace

TEST_CASE("bracket is the antisymmetrization of the two-slot product") {
  std::mt19937_64 gen(3);
  Ring<Rat> ring = rat_ring();
  for (auto label : {"A2", "B2", "G2"}) {
    SplittingPtr s = build_splitting(build_algebra(label));
    const ChevalleyAlgebra& alg = s->algebra();
    for (int t = 0; t < 6; ++t) {
      Vec<Rat> x = rand_elem(alg, gen), y = rand_elem(alg, gen);
      Vec<Rat> m_xy = m_multi<Rat>(*s, {x, y}, ring);
      Vec<Rat> m_yx = m_multi<Rat>(*s, {y, x}, ring);
      CHECK(vecs_equal(Vec<Rat>(m_xy - m_yx), alg.bracket(x, y)));
      CHECK(vecs_equal(m_multi<Rat>(*s, {x}, ring), x));
    }
  }
}

TEST_CASE("the two-slot product is not associative: a concrete sl3 witness") {
  SplittingPtr s = build_splitting(build_algebra("A2"));
  const ChevalleyAlgebra& alg = s->algebra();
  Ring<Rat> ring = rat_ring();
  Vec<Rat> h0 = zero_vec<Rat>(alg.dim());
  h0(alg.index_h(0)) = Rat(1);
  Vec<Rat> e0 = zero_vec<Rat>(alg.dim());
  e0(alg.index_pos(0)) = Rat(1);
  Vec<Rat> f0 = zero_vec<Rat>(alg.dim());
  f0(alg.index_neg(0)) = Rat(1);
  Vec<Rat> left = m_multi<Rat>(*s, {m_multi<Rat>(*s, {h0, h0}, ring), e0}, ring);
  Vec<Rat> right = m_multi<Rat>(*s, {h0, m_multi<Rat>(*s, {h0, e0}, ring)}, ring);
  CHECK(!vecs_equal(left, right));
}

TEST_CASE("sl2 squares: m^2(E) = 0 and m^2(H) = 0") {
  SplittingPtr s = build_splitting(build_algebra("A1"));
  const ChevalleyAlgebra& alg = s->algebra();
  Ring<Rat> ring = rat_ring();
  Vec<Rat> e = zero_vec<Rat>(alg.dim());
  e(alg.index_pos(0)) = Rat(1);
  CHECK(is_zero_vec(m_power(*s, e, 2, ring)));
  Vec<Rat> h = zero_vec<Rat>(alg.dim());
  h(alg.index_h(0)) = Rat(1);
  // H^2 = I projects to zero
  CHECK(is_zero_vec(m_power(*s, h, 2, ring)));
}

TEST_CASE("sp4 at p = 3: even powers vanish, odd powers are matrix powers") {
  SplittingPtr s = build_splitting(build_algebra("C2"));
  const ChevalleyAlgebra& alg = s->algebra();
  Ring<Rat> ring = rat_ring();
  std::mt19937_64 gen(11);
  for (int t = 0; t < 8; ++t) {
    Vec<Rat> x = rand_positive(alg, gen, 3);
    CHECK(is_zero_vec(m_power(*s, x, 2, ring)));
    Vec<Rat> cube = m_power(*s, x, 3, ring);
    CHECK(mats_equal(alg.rep(cube), qmat_pow(alg.rep(x), 3)));
  }
}

TEST_CASE("homogeneity: m^i(r x) = r^i m^i(x)") {
  std::mt19937_64 gen(13);
  Ring<Rat> ring = rat_ring();
  for (auto label : {"A2", "G2"}) {
    SplittingPtr s = build_splitting(build_algebra(label));
    const ChevalleyAlgebra& alg = s->algebra();
    for (int t = 0; t < 5; ++t) {
      Vec<Rat> x = rand_elem(alg, gen);
      Rat r(static_cast<long>(gen() % 7) - 3, static_cast<long>(gen() % 4) + 1);
      for (unsigned long i = 2; i <= 4; ++i) {
        Rat ri(1);
        for (unsigned long j = 0; j < i; ++j) ri *= r;
        CHECK(vecs_equal(m_power(*s, Vec<Rat>(x * r), i, ring),
                         Vec<Rat>(m_power(*s, x, i, ring) * ri)));
      }
    }
  }
}

TEST_CASE("weight shift: homogeneous weight z maps to weight z*i") {
  SplittingPtr s = build_splitting(build_algebra("G2"));
  const ChevalleyAlgebra& alg = s->algebra();
  Ring<Rat> ring = rat_ring();
  // x homogeneous of weight 2 under the 2 rho-vee grading
  Vec<Rat> x = regular_np(alg);
  for (unsigned long i = 2; i <= 5; ++i) {
    Vec<Rat> y = m_power(*s, x, i, ring);
    for (int idx = 0; idx < alg.dim(); ++idx)
      if (!y(idx).is_zero()) CHECK(alg.weight_2rho(idx) == static_cast<int>(2 * i));
  }
}

TEST_CASE("mod-p agreement: ad(m^p(x)) = ad(x)^p over F_{p^k}") {
  for (auto [label, p, k] : {std::tuple<const char*, long, int>{"B2", 3, 1},
                             {"A2", 5, 1},
                             {"G2", 5, 1},
                             {"B2", 3, 2}}) {
    SplittingPtr s = build_splitting(build_algebra(label));
    const ChevalleyAlgebra& alg = s->algebra();
    FqFieldPtr F = FqField::get(p, k);
    Ring<Fq> ring = fq_ring(F);
    std::mt19937_64 gen(17);
    for (int t = 0; t < 5; ++t) {
      Vec<Fq> x(alg.dim());
      for (int i = 0; i < alg.dim(); ++i)
        x(i) = Fq::from_index(F, static_cast<std::int64_t>(gen() % F->q()));
      Vec<Fq> y = m_power_mod_p(*s, x, static_cast<unsigned long>(p), ring);
      CHECK(vecs_equal(y, alg.p_power(x, ring)));
      CHECK(mats_equal(Mat<Fq>(alg.ad_matrix(y)), mat_pow(Mat<Fq>(alg.ad_matrix(x)), p)));
    }
  }
}

TEST_CASE("equivariance: m^i(g x g^-1) = g m^i(x) g^-1 over F_q") {
  SplittingPtr s = build_splitting(build_algebra("B2"));
  const ChevalleyAlgebra& alg = s->algebra();
  FqFieldPtr F = FqField::get(5, 1);
  Ring<Fq> ring = fq_ring(F);
  std::mt19937_64 gen(19);
  for (int t = 0; t < 5; ++t) {
    Vec<Fq> x(alg.dim());
    for (int i = 0; i < alg.dim(); ++i)
      x(i) = Fq::from_index(F, static_cast<std::int64_t>(gen() % 5));
    Mat<Fq> g = identity<Fq>(alg.rep_dim());
    for (int step = 0; step < 5; ++step) {
      int a = static_cast<int>(gen() % alg.num_positive());
      int idx = (gen() % 2) ? alg.index_pos(a) : alg.index_neg(a);
      g = Mat<Fq>(g * alg.root_group_element(idx, Fq::from_index(F, gen() % 5), ring));
    }
    Mat<Fq> gi = inverse(g).value();
    Vec<Fq> gx = alg.rep_preimage(Mat<Fq>(g * alg.rep(x) * gi), ring).value();
    for (unsigned long i = 2; i <= 3; ++i) {
      Vec<Fq> lhs = m_power_mod_p(*s, gx, i, ring);
      Vec<Fq> rhs =
          alg.rep_preimage(Mat<Fq>(g * alg.rep(m_power_mod_p(*s, x, i, ring)) * gi), ring)
              .value();
      CHECK(vecs_equal(lhs, rhs));
    }
  }
}

TEST_CASE("vanishing scan: G2 regular at p in {5, 7}") {
  SplittingPtr s = build_splitting(build_algebra("G2"));
  const ChevalleyAlgebra& alg = s->algebra();
  Vec<Rat> x = regular_np(alg);

  // p = 7 >= h = 6: dead in one step
  PowerMapResult r7 = theorem_a_scan(*s, 7, x);
  CHECK(r7.vanishing_index == 1);

  // p = 5 < 6 <= 25: the first iterate is the weight-10 line, the second dies
  PowerMapResult r5 = theorem_a_scan(*s, 5, x);
  CHECK(r5.vanishing_index == 2);
  const Vec<Rat>& mid = r5.iterations[1];
  CHECK(!is_zero_vec(mid));
  for (int idx = 0; idx < alg.dim(); ++idx)
    if (!mid(idx).is_zero()) CHECK(alg.weight_2rho(idx) == 10);
}

TEST_CASE("vanishing scan rejects bad input and certifies iterates") {
  SplittingPtr s = build_splitting(build_algebra("B2"));
  const ChevalleyAlgebra& alg = s->algebra();
  Vec<Rat> bad = zero_vec<Rat>(alg.dim());
  bad(alg.index_h(0)) = Rat(1);
  CHECK_THROWS_AS(theorem_a_scan(*s, 3, bad), std::invalid_argument);

  Vec<Rat> frac = zero_vec<Rat>(alg.dim());
  frac(alg.index_pos(0)) = Rat(1, 3);
  CHECK_THROWS_AS(theorem_a_scan(*s, 3, frac), std::invalid_argument);

  std::mt19937_64 gen(23);
  for (int t = 0; t < 10; ++t) {
    Vec<Rat> x = rand_positive(alg, gen, 3);
    PowerMapResult r = theorem_a_scan(*s, 3, x);
    CHECK(r.certificate.ok);
    CHECK(r.vanishing_index.has_value());
    CHECK(*r.vanishing_index <= vanishing_bound(3, coxeter_number(alg.root_system())));
  }
}
