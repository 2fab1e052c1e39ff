#pragma once

#include <Eigen/Core>

#include "chevexp/finite_field.hpp"
#include "chevexp/rational.hpp"
#include "chevexp/unramified.hpp"

namespace Eigen {

#define CHEVEXP_NUMTRAITS(S)                                   \
  template <>                                                  \
  struct NumTraits<chevexp::S> {                               \
    typedef chevexp::S Real;                                   \
    typedef chevexp::S NonInteger;                             \
    typedef chevexp::S Nested;                                 \
    typedef chevexp::S Literal;                                \
    enum {                                                     \
      IsComplex = 0,                                           \
      IsInteger = 0,                                           \
      IsSigned = 1,                                            \
      RequireInitialization = 1,                               \
      ReadCost = 8,                                            \
      AddCost = 80,                                            \
      MulCost = 80                                             \
    };                                                         \
    static inline Real epsilon() { return chevexp::S(0); }     \
    static inline Real dummy_precision() { return chevexp::S(0); } \
    static inline int digits10() { return 0; }                 \
  };

CHEVEXP_NUMTRAITS(Int)
CHEVEXP_NUMTRAITS(Rat)
CHEVEXP_NUMTRAITS(Fp)
CHEVEXP_NUMTRAITS(Fq)
CHEVEXP_NUMTRAITS(Unram)

#undef CHEVEXP_NUMTRAITS

}  // namespace Eigen

namespace chevexp {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatZ = Mat<Int>;
using MatQ = Mat<Rat>;
using MatFq = Mat<Fq>;
using MatU = Mat<Unram>;
using VecQ = Vec<Rat>;
using VecFq = Vec<Fq>;
using VecU = Vec<Unram>;

template <class S>
bool is_zero_mat(const Mat<S>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

template <class S>
bool is_zero_vec(const Vec<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

template <class S>
bool mats_equal(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

template <class S>
bool vecs_equal(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a(i) == b(i))) return false;
  return true;
}

template <class S>
Mat<S> zeros(Eigen::Index r, Eigen::Index c) {
  Mat<S> m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = S(0);
  return m;
}

template <class S>
Mat<S> identity(Eigen::Index n) {
  Mat<S> m = zeros<S>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = S(1);
  return m;
}

template <class S>
Vec<S> zero_vec(Eigen::Index n) {
  Vec<S> v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = S(0);
  return v;
}

}  // namespace chevexp
