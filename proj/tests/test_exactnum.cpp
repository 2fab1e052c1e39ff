#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chevexp/eigen_support.hpp"
#include "chevexp/finite_field.hpp"
#include "chevexp/linalg.hpp"
#include "chevexp/rational.hpp"
#include "chevexp/unramified.hpp"

using namespace chevexp;

TEST_CASE("rational arithmetic is exact and canonical") {
  Rat a(4, 6);
  CHECK(a.num() == Int(2));
  CHECK(a.den() == Int(3));
  CHECK(a + Rat(1, 3) == Rat(1));
  CHECK(Rat(1, 2) * Rat(2, 3) == Rat(1, 3));
  CHECK((Rat(7, 5) / Rat(7, 5)) == Rat(1));
  CHECK_THROWS(Rat(1, 0));
  CHECK(Rat::from_string("-3/9") == Rat(-1, 3));
}

TEST_CASE("vp computes p-adic valuations") {
  CHECK(vp(Rat(4, 6), 2).value == 1);
  CHECK(vp(Rat(1, 9), 3).value == -2);
  CHECK(vp(Rat(0), 5).is_infinite);
  CHECK(vp(Rat(50), 5).value == 2);
  CHECK_THROWS_AS(vp(Rat(1), 4), std::invalid_argument);
}

TEST_CASE("vp is additive on products and ultrametric on sums") {
  std::mt19937_64 gen(12345);
  auto random_rat = [&] {
    long n = static_cast<long>(gen() % 2001) - 1000;
    long d = static_cast<long>(gen() % 999) + 1;
    return Rat(n, d);
  };
  for (long p : {2L, 3L, 7L}) {
    for (int trial = 0; trial < 300; ++trial) {
      Rat x = random_rat(), y = random_rat();
      if (x.is_zero() || y.is_zero()) continue;
      CHECK(vp(x * y, p).value == vp(x, p).value + vp(y, p).value);
      Valuation vs = vp(x + y, p);
      long lo = std::min(vp(x, p).value, vp(y, p).value);
      CHECK(vs.at_least(lo));
      if (vp(x, p).value != vp(y, p).value) {
        REQUIRE(!vs.is_infinite);
        CHECK(vs.value == lo);
      }
    }
  }
}

TEST_CASE("certify_p_integral reports the first offender") {
  std::vector<Rat> ok = {Rat(3), Rat(5, 7), Rat(0)};
  CHECK(certify_p_integral(ok, 3).ok);

  std::vector<Rat> bad = {Rat(1, 3), Rat(5)};
  auto cert = certify_p_integral(bad, 3);
  CHECK(!cert.ok);
  CHECK(cert.witness_index == 0);
  CHECK(cert.witness_valuation == -1);
}

TEST_CASE("prime field axioms hold on random triples") {
  std::mt19937_64 gen(7);
  for (long p : {2L, 3L, 5L, 13L}) {
    for (int trial = 0; trial < 200; ++trial) {
      Fp a(static_cast<std::int64_t>(gen() % p), p);
      Fp b(static_cast<std::int64_t>(gen() % p), p);
      Fp c(static_cast<std::int64_t>(gen() % p), p);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + (-a) == Fp(0, p));
      if (!a.is_zero()) CHECK(a * a.inverse() == Fp(1, p));
    }
  }
}

TEST_CASE("field_tower picks the smallest irreducible modulus") {
  auto t22 = field_tower(2, 2);
  CHECK(t22.residue_field->modulus() == std::vector<std::int64_t>{1, 1});  // t^2 + t + 1

  auto t21 = field_tower(7, 1);
  CHECK(t21.residue_field->modulus() == std::vector<std::int64_t>{0});  // t

  auto t32 = field_tower(3, 2);
  CHECK(t32.residue_field->modulus() == std::vector<std::int64_t>{1, 0});  // t^2 + 1

  CHECK_THROWS(field_tower(5, 9));
  CHECK_THROWS(field_tower(6, 2));
}

TEST_CASE("extension field arithmetic: associativity and inverses, F4 and F9") {
  for (auto [p, k] : {std::pair<long, int>{2, 2}, {3, 2}, {2, 3}, {5, 2}}) {
    FqFieldPtr F = FqField::get(p, k);
    for (std::int64_t i = 0; i < F->q(); ++i) {
      Fq x = Fq::from_index(F, i);
      if (!x.is_zero()) CHECK(x * x.inverse() == Fq(F, 1));
      CHECK(x.index() == i);
    }
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 200; ++trial) {
      Fq a = Fq::from_index(F, static_cast<std::int64_t>(gen() % F->q()));
      Fq b = Fq::from_index(F, static_cast<std::int64_t>(gen() % F->q()));
      Fq c = Fq::from_index(F, static_cast<std::int64_t>(gen() % F->q()));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("frobenius and its inverse") {
  FqFieldPtr F = FqField::get(2, 4);
  for (std::int64_t i = 0; i < F->q(); ++i) {
    Fq x = Fq::from_index(F, i);
    CHECK(x.frobenius_inverse().frobenius() == x);
    CHECK(x.frobenius() == x * x);
  }
}

TEST_CASE("reduce(lift(x)) = x exhaustively over F4 and F9") {
  for (auto [p, k] : {std::pair<long, int>{2, 2}, {3, 2}}) {
    FqFieldPtr F = FqField::get(p, k);
    for (std::int64_t i = 0; i < F->q(); ++i) {
      Fq x = Fq::from_index(F, i);
      Unram u = lift_to_unramified(x);
      CHECK(reduce_mod_p(u) == x);
      CHECK(vp(u, p).at_least(0));
    }
  }
}

TEST_CASE("unramified valuation agrees with the norm oracle") {
  // v(x) = v_p(Norm(x)) / k, with the norm computed as the determinant of
  // the multiplication-by-x matrix in the power basis: an independent route.
  std::mt19937_64 gen(2024);
  for (auto [p, k] : {std::pair<long, int>{2, 2}, {3, 2}, {5, 3}}) {
    UnramFieldPtr F = UnramField::get(p, k);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<Rat> c(k);
      bool all_zero = true;
      for (int i = 0; i < k; ++i) {
        long n = static_cast<long>(gen() % 41) - 20;
        long d = static_cast<long>(gen() % 12) + 1;
        c[i] = Rat(n, d);
        all_zero = all_zero && c[i].is_zero();
      }
      if (all_zero) continue;
      Unram x(F, c);

      MatQ mult = zeros<Rat>(k, k);
      for (int j = 0; j < k; ++j) {
        std::vector<Rat> basis(k, Rat(0));
        basis[j] = Rat(1);
        Unram xj = x * Unram(F, basis);
        for (int i = 0; i < k; ++i) mult(i, j) = xj.coefficient(i);
      }
      // determinant via exact elimination: product of pivots
      RowEchelon<Rat> ech = row_echelon(mult);
      REQUIRE(ech.rank == k);
      Rat det(1);
      {
        MatQ m = mult;
        for (int col = 0; col < k; ++col) {
          int piv = -1;
          for (int row = col; row < k; ++row)
            if (!m(row, col).is_zero()) {
              piv = row;
              break;
            }
          REQUIRE(piv >= 0);
          if (piv != col) {
            m.row(piv).swap(m.row(col));
            det = -det;
          }
          det *= m(col, col);
          for (int row = col + 1; row < k; ++row) {
            Rat f = m(row, col) / m(col, col);
            for (int cc = col; cc < k; ++cc) m(row, cc) -= f * m(col, cc);
          }
        }
      }
      long vnorm = vp(det, p).value;
      CHECK(vnorm % k == 0);
      CHECK(vp(x, p).value == vnorm / k);
    }
  }
}

TEST_CASE("unramified field inverse round trip") {
  UnramFieldPtr F = UnramField::get(3, 2);
  Unram x(F, {Rat(2, 5), Rat(7)});
  Unram y = x.inverse();
  CHECK(x * y == Unram(F, Rat(1)));
}

TEST_CASE("exact linear algebra over Q: kernel, solve, inverse") {
  MatQ a = zeros<Rat>(3, 3);
  a(0, 0) = Rat(1);
  a(0, 1) = Rat(2);
  a(0, 2) = Rat(3);
  a(1, 0) = Rat(2);
  a(1, 1) = Rat(4);
  a(1, 2) = Rat(6);
  a(2, 0) = Rat(1);
  a(2, 1) = Rat(0);
  a(2, 2) = Rat(1);
  CHECK(rank(a) == 2);
  MatQ k = kernel_basis(a);
  REQUIRE(k.cols() == 1);
  CHECK(is_zero_vec(Vec<Rat>(a * k.col(0))));

  Vec<Rat> b = zero_vec<Rat>(3);
  b(0) = Rat(6);
  b(1) = Rat(12);
  b(2) = Rat(2);
  auto x = solve_linear(a, b);
  REQUIRE(x.has_value());
  CHECK(vecs_equal(Vec<Rat>(a * *x), b));

  MatZ g = zeros<Int>(2, 2);
  g(0, 0) = Int(2);
  g(1, 1) = Int(0);
  g(0, 1) = Int(0);
  g(1, 0) = Int(0);
  CHECK(det_integer(g) == Int(0));
  g(1, 1) = Int(3);
  CHECK(det_integer(g) == Int(6));
}

TEST_CASE("integer matrix power matches rational path") {
  MatQ a = zeros<Rat>(3, 3);
  a(0, 1) = Rat(1, 2);
  a(1, 2) = Rat(3);
  a(0, 0) = Rat(2);
  MatQ a5 = qmat_pow(a, 5);
  MatQ chk = identity<Rat>(3);
  for (int i = 0; i < 5; ++i) chk = Mat<Rat>(chk * a);
  CHECK(mats_equal(a5, chk));
}

TEST_CASE("exp of a nilpotent matrix terminates exactly") {
  MatQ m = zeros<Rat>(4, 4);
  m(0, 1) = Rat(1);
  m(1, 2) = Rat(1);
  m(2, 3) = Rat(1);
  MatQ e = exp_nilpotent(m);
  CHECK(e(0, 3) == Rat(1, 6));
  CHECK(e(0, 0) == Rat(1));
  CHECK(is_nilpotent(m));
  CHECK(!is_nilpotent(Mat<Rat>(identity<Rat>(4))));
}
