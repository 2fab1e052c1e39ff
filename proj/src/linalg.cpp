#include "chevexp/linalg.hpp"

namespace chevexp {

Int det_integer(const MatZ& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det_integer: square matrix required");
  const Eigen::Index n = a.rows();
  if (n == 0) return Int(1);
  MatZ m = a;
  Int prev(1);
  int sign = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k).is_zero()) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (!m(i, k).is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return Int(0);
      m.row(piv).swap(m.row(k));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = Int::div_exact(t, prev);
      }
      m(i, k) = Int(0);
    }
    prev = m(k, k);
  }
  Int d = m(n - 1, n - 1);
  return sign < 0 ? -d : d;
}

MatZ imat_mul(const MatZ& a, const MatZ& b) {
  const Eigen::Index n = a.rows(), k = a.cols(), m = b.cols();
  if (k != b.rows()) throw std::invalid_argument("imat_mul: shape mismatch");
  MatZ r = zeros<Int>(n, m);
  // i-k-j order so the inner loop walks a column-major row of b contiguously
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index kk = 0; kk < k; ++kk) {
      const Int& aik = a(i, kk);
      if (aik.is_zero()) continue;
      for (Eigen::Index j = 0; j < m; ++j) {
        const Int& bkj = b(kk, j);
        if (!bkj.is_zero()) r(i, j).addmul(aik, bkj);
      }
    }
  return r;
}

MatZ imat_pow(const MatZ& a, unsigned long e) {
  MatZ r = identity<Int>(a.rows());
  MatZ base = a;
  while (e) {
    if (e & 1) r = imat_mul(r, base);
    if (e >>= 1) base = imat_mul(base, base);
  }
  return r;
}

ScaledIntMat to_scaled(const MatQ& a) {
  Int den(1);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) den = Int::lcm(den, a(i, j).den());
  MatZ num = zeros<Int>(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      num(i, j) = a(i, j).num() * Int::div_exact(den, a(i, j).den());
  return {std::move(num), den};
}

MatQ from_scaled(const ScaledIntMat& a) {
  MatQ r = zeros<Rat>(a.num.rows(), a.num.cols());
  for (Eigen::Index j = 0; j < a.num.cols(); ++j)
    for (Eigen::Index i = 0; i < a.num.rows(); ++i) r(i, j) = Rat(a.num(i, j), a.den);
  return r;
}

MatQ qmat_pow(const MatQ& a, unsigned long e) {
  ScaledIntMat s = to_scaled(a);
  ScaledIntMat powered{imat_pow(s.num, e), Int::pow(s.den, e)};
  return from_scaled(powered);
}

namespace {

bool imat_zero(const MatZ& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

}  // namespace

MatQ poly_eval_nilpotent_q(const std::vector<Rat>& coeffs, const MatQ& m) {
  const Eigen::Index n = m.rows();
  ScaledIntMat s = to_scaled(m);
  MatQ sum = zeros<Rat>(n, n);
  MatZ power = identity<Int>(n);
  Int denpow(1);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) {
      power = imat_mul(power, s.num);
      denpow *= s.den;
      if (imat_zero(power)) break;
    }
    if (coeffs[j].is_zero()) continue;
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r)
        if (!power(r, c).is_zero()) sum(r, c) += coeffs[j] * Rat(power(r, c), denpow);
  }
  return sum;
}

MatQ exp_nilpotent_q(const MatQ& m) {
  const Eigen::Index n = m.rows();
  std::vector<Rat> coeffs;
  coeffs.reserve(n + 1);
  Int fact(1);
  for (Eigen::Index j = 0; j <= n; ++j) {
    if (j > 0) fact *= Int(static_cast<long>(j));
    coeffs.push_back(Rat(Int(1), fact));
  }
  return poly_eval_nilpotent_q(coeffs, m);
}

}  // namespace chevexp
