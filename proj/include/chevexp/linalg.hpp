#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "chevexp/eigen_support.hpp"

namespace chevexp {

/// Exact Gaussian elimination over a field scalar (Rat, Fp, Fq, Unram).
/// Pivots are the first nonzero entries; there is no rounding anywhere, so
/// magnitude-based pivoting has no role.
template <class S>
struct RowEchelon {
  Mat<S> reduced;               // reduced row echelon form
  std::vector<int> pivot_cols;  // one per nonzero row
  int rank = 0;
};

template <class S>
RowEchelon<S> row_echelon(Mat<S> a) {
  RowEchelon<S> out;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    S inv = S(1) / a(r, c);
    for (Eigen::Index j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      S f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
    out.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  out.rank = static_cast<int>(r);
  out.reduced = std::move(a);
  return out;
}

template <class S>
int rank(const Mat<S>& a) {
  return row_echelon(a).rank;
}

/// Columns form a basis of the null space of a.
template <class S>
Mat<S> kernel_basis(const Mat<S>& a) {
  RowEchelon<S> e = row_echelon(a);
  const Eigen::Index cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivot_cols) is_pivot[c] = true;
  Mat<S> k = zeros<S>(cols, cols - e.rank);
  Eigen::Index kc = 0;
  for (Eigen::Index free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    k(free_col, kc) = S(1);
    for (int row = 0; row < e.rank; ++row)
      k(e.pivot_cols[row], kc) = -e.reduced(row, free_col);
    ++kc;
  }
  return k;
}

/// Solves a x = b exactly; nullopt when inconsistent. When the system is
/// underdetermined the free coordinates are set to zero.
template <class S>
std::optional<Vec<S>> solve_linear(const Mat<S>& a, const Vec<S>& b) {
  Mat<S> aug = zeros<S>(a.rows(), a.cols() + 1);
  aug.block(0, 0, a.rows(), a.cols()) = a;
  aug.col(a.cols()) = b;
  RowEchelon<S> e = row_echelon(std::move(aug));
  for (int row = 0; row < e.rank; ++row)
    if (e.pivot_cols[row] == static_cast<int>(a.cols())) return std::nullopt;
  Vec<S> x = zero_vec<S>(a.cols());
  for (int row = 0; row < e.rank; ++row) x(e.pivot_cols[row]) = e.reduced(row, a.cols());
  return x;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: square matrix required");
  const Eigen::Index n = a.rows();
  Mat<S> aug = zeros<S>(n, 2 * n);
  aug.block(0, 0, n, n) = a;
  for (Eigen::Index i = 0; i < n; ++i) aug(i, n + i) = S(1);
  RowEchelon<S> e = row_echelon(std::move(aug));
  if (e.rank != n) return std::nullopt;
  for (int row = 0; row < e.rank; ++row)
    if (e.pivot_cols[row] != row) return std::nullopt;
  return Mat<S>(e.reduced.block(0, n, n, n));
}

/// Exact determinant of an integer matrix (Bareiss fraction-free scheme).
Int det_integer(const MatZ& a);

/// Integer matrix product through mpz_addmul; the hot path of every power
/// computation.
MatZ imat_mul(const MatZ& a, const MatZ& b);
MatZ imat_pow(const MatZ& a, unsigned long e);

/// A rational matrix as integer_part / denominator, so powers run on mpz.
struct ScaledIntMat {
  MatZ num;
  Int den;
};
ScaledIntMat to_scaled(const MatQ& a);
MatQ from_scaled(const ScaledIntMat& a);
MatQ qmat_pow(const MatQ& a, unsigned long e);

/// sum_j coeffs[j] m^j for nilpotent m over Q, with the powers computed on a
/// cleared-denominator integer matrix.
MatQ poly_eval_nilpotent_q(const std::vector<Rat>& coeffs, const MatQ& m);
/// exp of a nilpotent rational matrix through the same integer fast path.
MatQ exp_nilpotent_q(const MatQ& m);

template <class S>
Mat<S> mat_pow(const Mat<S>& a, unsigned long e) {
  Mat<S> r = identity<S>(a.rows());
  Mat<S> base = a;
  while (e) {
    if (e & 1) r = Mat<S>(r * base);
    base = Mat<S>(base * base);
    e >>= 1;
  }
  return r;
}

inline MatQ mat_pow(const MatQ& a, unsigned long e) { return qmat_pow(a, e); }

/// Checks m^d = 0 for d = next power of two >= rows, which decides
/// nilpotency exactly.
template <class S>
bool is_nilpotent(const Mat<S>& m) {
  Mat<S> acc = m;
  Eigen::Index covered = 1;
  while (covered < m.rows()) {
    if (is_zero_mat(acc)) return true;
    acc = Mat<S>(acc * acc);
    covered *= 2;
  }
  return is_zero_mat(acc);
}

/// exp of a nilpotent matrix: finite sum of m^j / j!, stopping exactly when
/// the power vanishes. Characteristic-zero scalars only.
template <class S>
Mat<S> exp_nilpotent(const Mat<S>& m) {
  const Eigen::Index n = m.rows();
  Mat<S> sum = identity<S>(n);
  Mat<S> term = identity<S>(n);
  for (Eigen::Index j = 1; j <= n; ++j) {
    term = Mat<S>(term * m);
    bool zero = is_zero_mat(term);
    if (zero) return sum;
    S inv_j = S(1) / S(static_cast<long>(j));
    term = Mat<S>(term * inv_j);
    sum += term;
  }
  throw std::invalid_argument("exp_nilpotent: matrix is not nilpotent");
}

/// Evaluates sum_j c_j m^j for nilpotent m, stopping when the power dies.
template <class S>
Mat<S> poly_eval_nilpotent(const std::vector<S>& coeffs, const Mat<S>& m) {
  const Eigen::Index n = m.rows();
  Mat<S> sum = zeros<S>(n, n);
  Mat<S> power = identity<S>(n);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) {
      power = Mat<S>(power * m);
      if (is_zero_mat(power)) break;
    }
    if (!coeffs[j].is_zero()) sum += Mat<S>(power * coeffs[j]);
  }
  return sum;
}

}  // namespace chevexp
