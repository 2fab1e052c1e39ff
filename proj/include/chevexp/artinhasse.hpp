#pragma once

#include "chevexp/ppower.hpp"

namespace chevexp {

/// Truncated exponential-of-p-power-sum series: exp(t + t^p/p + t^{p^2}/p^2
/// + ...) up to degree N, exact rational coefficients. Satisfies c_0 = c_1
/// = 1 and every coefficient is p-integral.
struct AHSeries {
  long p = 0;
  int truncation = 0;
  std::vector<Rat> coefficients;  // c_0 .. c_N
};

AHSeries ah_coefficients(long p, int N);

/// Integrality sweep to large degree without full rational arithmetic: the
/// integer numerators a_j = c_j j! are tracked modulo p^K with factorial
/// units maintained incrementally, which pins every valuation that could
/// possibly be negative.
struct AHIntegralityReport {
  bool ok = true;
  long first_bad_index = -1;
  long first_bad_valuation = 0;
  long checked_to = 0;
};
AHIntegralityReport certify_ah_integrality(long p, long N);

/// Evaluates the series on a nilpotent matrix; only the first d coefficients
/// contribute, d the nilpotency degree.
template <class S>
Mat<S> ah_matrix(const AHSeries& series, const Mat<S>& Y, const Ring<S>& ring) {
  if (!is_nilpotent(Y)) throw std::invalid_argument("ah_matrix: matrix is not nilpotent");
  if (series.truncation < Y.rows())
    throw std::invalid_argument("ah_matrix: series truncated below the nilpotency degree");
  std::vector<S> coeffs;
  coeffs.reserve(Y.rows() + 1);
  for (Eigen::Index j = 0; j <= Y.rows(); ++j) coeffs.push_back(ring.from_rat(series.coefficients[j]));
  return poly_eval_nilpotent<S>(coeffs, Y);
}

inline MatQ ah_matrix(const AHSeries& series, const MatQ& Y, const Ring<Rat>&) {
  if (!is_nilpotent(Y)) throw std::invalid_argument("ah_matrix: matrix is not nilpotent");
  if (series.truncation < Y.rows())
    throw std::invalid_argument("ah_matrix: series truncated below the nilpotency degree");
  std::vector<Rat> coeffs(series.coefficients.begin(),
                          series.coefficients.begin() + Y.rows() + 1);
  return poly_eval_nilpotent_q(coeffs, Y);
}

template <class S>
PIntegralityCertificate certify_matrix_p_integral(const Mat<S>& m, long p) {
  PIntegralityCertificate cert;
  std::size_t idx = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) cert.absorb(vp(m(i, j), p), idx++);
  return cert;
}

/// sigma(x) = (rep(x)^p - rep(m^p(x))) / p: the complement component of the
/// p-th matrix power, divided by p. Defined and p-integral for p-integral
/// input; a failed certificate is a falsification, not bad input.
template <class S>
struct SigmaResult {
  Mat<S> matrix;
  PIntegralityCertificate certificate;
};

template <class S>
SigmaResult<S> sigma(const TraceFormSplitting& split, const Vec<S>& x, long p,
                     const Ring<S>& ring) {
  static_assert(!std::is_same_v<S, Fq>, "sigma lives in characteristic zero");
  const ChevalleyAlgebra& alg = split.algebra();
  Mat<S> mp;
  if constexpr (std::is_same_v<S, Rat>)
    mp = qmat_pow(alg.rep(x), static_cast<unsigned long>(p));
  else
    mp = mat_pow(alg.rep(x), static_cast<unsigned long>(p));
  Vec<S> g = split.project_g(mp, ring);
  Mat<S> complement = Mat<S>(mp - alg.rep(g));
  S inv_p = ring.from_rat(Rat(1L, p));
  SigmaResult<S> out{Mat<S>(complement * inv_p), {}};
  out.certificate = certify_matrix_p_integral(out.matrix, p);
  return out;
}

/// One evaluation of the generalized exponential on a positive-part element
/// over F_{p^k}: the characteristic-zero matrix on the unramified lift, its
/// integrality certificate, and the reduction mod p.
template <class L>
struct GExpEvaluation {
  Vec<Fq> input;
  Mat<L> char0;
  PIntegralityCertificate certificate;
  Mat<Fq> modp;
};

namespace detail {

/// Availability of the generalized exponential at p: good prime, and either
/// the splitting exists mod p or the type is A (where powers of a
/// positive-part element never leave the embedded algebra, so no projection
/// is needed and every p is allowed).
inline bool gexp_available(const TraceFormSplitting& split, long p) {
  const RootSystem& rs = split.algebra().root_system();
  if (!is_good_prime(rs, p)) return false;
  return split.nondegenerate_mod(p) || rs.type() == SimpleType::A;
}

template <class L>
Vec<L> lift_coords(const Vec<Fq>& x, const Ring<L>& ring);

template <>
inline Vec<Rat> lift_coords(const Vec<Fq>& x, const Ring<Rat>&) {
  Vec<Rat> out = zero_vec<Rat>(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i).is_constant())
      out(i) = Rat(static_cast<long>(x(i).coeff_raw(0)));
    else
      out(i) = Rat(static_cast<long>(x(i).coeff_raw(0)));
  }
  return out;
}

template <>
inline Vec<Unram> lift_coords(const Vec<Fq>& x, const Ring<Unram>& ring) {
  Vec<Unram> out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i).is_constant())
      out(i) = ring.from_int(static_cast<long>(x(i).coeff_raw(0)));
    else
      out(i) = lift_to_unramified(x(i));
  }
  return out;
}

inline Fq reduce_entry(const Rat& v, const FqFieldPtr& F) {
  return Fq(F, reduce_mod_p(v, F->p()).v);
}
inline Fq reduce_entry(const Unram& v, const FqFieldPtr& F) {
  if (v.is_constant()) return Fq(F, reduce_mod_p(v.coefficient(0), F->p()).v);
  return reduce_mod_p(v);
}

}  // namespace detail

/// The generalized exponential on the positive part: lift the coordinates,
/// sum the scaled iterates of the lifted p-th power map, exponentiate the
/// (nilpotent) representation, certify p-integrality, reduce mod p, and
/// confirm unipotency. Template L is Rat for prime-field input and Unram
/// for extension fields.
template <class L>
GExpEvaluation<L> gexp_tilde(const TraceFormSplitting& split, const Vec<Fq>& x,
                             const FqFieldPtr& F, const Ring<L>& ring) {
  const ChevalleyAlgebra& alg = split.algebra();
  const long p = F->p();
  if (!supported_on_positive_part(alg, x))
    throw std::invalid_argument("gexp_tilde: support must be on the positive part");
  if (!detail::gexp_available(split, p))
    throw SplittingUnavailable("generalized exponential unavailable for this type and prime");

  Vec<L> lift = detail::lift_coords<L>(x, ring);
  Mat<L> result;
  if (split.nondegenerate_mod(p)) {
    Mat<L> sum = alg.rep(lift);
    Vec<L> iter = lift;
    Rat scale(1);
    const int bound = vanishing_bound(p, coxeter_number(alg.root_system()));
    for (int i = 1; !is_zero_vec(iter); ++i) {
      if (i > bound) throw DefectError("p-th power iterates failed to vanish at the bound");
      iter = m_power(split, iter, static_cast<unsigned long>(p), ring);
      scale /= Rat(p);
      if (!is_zero_vec(iter)) sum += Mat<L>(alg.rep(iter) * ring.from_rat(scale));
    }
    if constexpr (std::is_same_v<L, Rat>)
      result = exp_nilpotent_q(sum);
    else
      result = exp_nilpotent(sum);
  } else {
    // type A without the mod-p splitting: the power sum telescopes to the
    // series evaluation on the natural representation
    AHSeries series = ah_coefficients(p, alg.rep_dim() + 1);
    result = ah_matrix(series, Mat<L>(alg.rep(lift)), ring);
  }

  GExpEvaluation<L> out;
  out.input = x;
  out.char0 = result;
  out.certificate = certify_matrix_p_integral(result, p);
  if (!out.certificate.ok)
    throw DefectError("generalized exponential value is not p-integral");
  out.modp = zeros<Fq>(alg.rep_dim(), alg.rep_dim());
  for (int j = 0; j < alg.rep_dim(); ++j)
    for (int i = 0; i < alg.rep_dim(); ++i) out.modp(i, j) = detail::reduce_entry(result(i, j), F);
  Mat<Fq> nil = Mat<Fq>(out.modp - identity<Fq>(alg.rep_dim()));
  if (!is_nilpotent(nil)) throw DefectError("generalized exponential value is not unipotent");
  return out;
}

/// Reduction-only convenience used by the group-side verification suites.
Mat<Fq> gexp_modp(const TraceFormSplitting& split, const Vec<Fq>& x, const FqFieldPtr& F);

/// The projected-product route: project E_p(rep X) E_p(-sigma(X)) into the
/// algebra and invert the unipotent-radical projection. Must agree with
/// gexp_tilde entrywise; disagreement is a falsification and throws.
template <class L>
GExpEvaluation<L> psi_path(const TraceFormSplitting& split, const Vec<Fq>& x,
                           const FqFieldPtr& F, const Ring<L>& ring) {
  const ChevalleyAlgebra& alg = split.algebra();
  const RootSystem& rs = alg.root_system();
  const long p = F->p();
  if (!supported_on_positive_part(alg, x))
    throw std::invalid_argument("psi_path: support must be on the positive part");
  if (!is_good_prime(rs, p) || !split.nondegenerate_mod(p))
    throw SplittingUnavailable("psi path needs the splitting mod p");
  bool exceptional = rs.type() == SimpleType::E || rs.type() == SimpleType::F ||
                     rs.type() == SimpleType::G;
  if (exceptional && p * p <= coxeter_number(rs))
    throw std::invalid_argument("psi path needs p^2 > h in exceptional type");

  Vec<L> lift = detail::lift_coords<L>(x, ring);
  Mat<L> M = alg.rep(lift);
  SigmaResult<L> sg = sigma(split, lift, p, ring);
  if (!sg.certificate.ok) throw DefectError("sigma value is not p-integral");

  AHSeries series = ah_coefficients(p, alg.rep_dim() + 1);
  Mat<L> e1 = ah_matrix(series, M, ring);
  Mat<L> e2 = ah_matrix(series, Mat<L>(-sg.matrix), ring);
  Vec<L> psi = split.project_g(Mat<L>(e1 * e2), ring);
  if (!supported_on_positive_part(alg, psi))
    throw DefectError("projected product left the positive part");
  Mat<L> u = split.inverse_on_unipotent_radical(psi, ring);

  GExpEvaluation<L> direct = gexp_tilde(split, x, F, ring);
  if (!mats_equal(u, direct.char0))
    throw DefectError("psi path disagrees with the exponential sum path");

  GExpEvaluation<L> out;
  out.input = x;
  out.char0 = u;
  out.certificate = certify_matrix_p_integral(u, p);
  out.modp = direct.modp;
  return out;
}

}  // namespace chevexp
