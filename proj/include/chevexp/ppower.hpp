#pragma once

#include "chevexp/splitting.hpp"

namespace chevexp {

/// Multilinear product map: the projection of the ordered matrix product of
/// the representations back into the algebra. Not associative; bilinear in
/// each slot.
template <class S>
Vec<S> m_multi(const TraceFormSplitting& split, const std::vector<Vec<S>>& xs,
               const Ring<S>& ring) {
  if (xs.empty()) throw std::invalid_argument("m_multi: empty argument list");
  const ChevalleyAlgebra& alg = split.algebra();
  Mat<S> prod = alg.rep(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) prod = Mat<S>(prod * alg.rep(xs[i]));
  return split.project_g(prod, ring);
}

/// Power map m^i: project the i-th matrix power. Over the rationals the
/// power runs on a cleared-denominator integer matrix.
inline Vec<Rat> m_power(const TraceFormSplitting& split, const Vec<Rat>& x, unsigned long i,
                        const Ring<Rat>& ring) {
  const ChevalleyAlgebra& alg = split.algebra();
  Vec<Rat> out = split.project_g(qmat_pow(alg.rep(x), i), ring);
  if (!is_zero_vec(out) && !is_zero_vec(Vec<Rat>(alg.bracket(x, out))))
    throw DefectError("m_power output does not centralize its input");
  return out;
}

inline Vec<Unram> m_power(const TraceFormSplitting& split, const Vec<Unram>& x, unsigned long i,
                          const Ring<Unram>& ring) {
  const ChevalleyAlgebra& alg = split.algebra();
  Vec<Unram> out = split.project_g(mat_pow(alg.rep(x), i), ring);
  if (!is_zero_vec(out) && !is_zero_vec(Vec<Unram>(alg.bracket(x, out))))
    throw DefectError("m_power output does not centralize its input");
  return out;
}

/// Mod-p power map over F_{p^k}; needs the splitting mod p.
inline Vec<Fq> m_power_mod_p(const TraceFormSplitting& split, const Vec<Fq>& x, unsigned long i,
                             const Ring<Fq>& ring) {
  const ChevalleyAlgebra& alg = split.algebra();
  return split.project_g(mat_pow(alg.rep(x), i), ring);
}

/// Smallest i with p^i >= h; the vanishing bound for iterated p-th powers
/// on the positive part.
inline int vanishing_bound(long p, int coxeter) {
  int i = 0;
  long q = 1;
  while (q < coxeter) {
    q *= p;
    ++i;
  }
  return i;
}

struct PowerMapResult {
  Vec<Rat> value;                     // final iterate
  std::vector<Vec<Rat>> iterations;   // (m^p)^j(x), j = 0..
  std::optional<int> vanishing_index; // smallest i with iterate zero
  PIntegralityCertificate certificate;
};

/// Iterates the lifted p-th power map on a p-integral element of the
/// positive part, certifying integrality of every iterate, until it dies or
/// the bound p^i >= h is reached. Non-vanishing at the bound and
/// certificate failures are internal falsifications, not input errors.
inline PowerMapResult theorem_a_scan(const TraceFormSplitting& split, long p, const Vec<Rat>& x) {
  const ChevalleyAlgebra& alg = split.algebra();
  if (!supported_on_positive_part(alg, x))
    throw std::invalid_argument("theorem_a_scan: support must be positive");
  Ring<Rat> ring = rat_ring();
  PowerMapResult res;
  res.certificate = certify_p_integral(std::vector<Rat>(x.data(), x.data() + x.size()), p);
  if (!res.certificate.ok) throw std::invalid_argument("theorem_a_scan: input is not p-integral");
  const int bound = vanishing_bound(p, coxeter_number(alg.root_system()));
  Vec<Rat> cur = x;
  res.iterations.push_back(cur);
  int i = 0;
  while (!is_zero_vec(cur)) {
    if (i >= bound) throw DefectError("iterated p-th power map fails to vanish at the bound");
    cur = m_power(split, cur, static_cast<unsigned long>(p), ring);
    ++i;
    res.iterations.push_back(cur);
    PIntegralityCertificate c =
        certify_p_integral(std::vector<Rat>(cur.data(), cur.data() + cur.size()), p);
    if (!c.ok) throw DefectError("iterate of the p-th power map is not p-integral");
    res.certificate.merge(c);
  }
  res.vanishing_index = i;
  res.value = cur;
  return res;
}

}  // namespace chevexp
