#include "chevexp/artinhasse.hpp"

namespace chevexp {

AHSeries ah_coefficients(long p, int N) {
  if (!is_prime(p)) throw std::invalid_argument("ah_coefficients: p must be prime");
  if (N < 0 || N > 10000) throw std::invalid_argument("ah_coefficients: N out of range");
  AHSeries s;
  s.p = p;
  s.truncation = N;
  s.coefficients.resize(N + 1);
  s.coefficients[0] = Rat(1);
  // E' = E * d/dt (sum t^{p^i}/p^i) gives j c_j = sum_{p^i <= j} c_{j - p^i}
  for (int j = 1; j <= N; ++j) {
    Rat acc(0);
    for (long q = 1; q <= j; q *= p) {
      acc += s.coefficients[j - q];
      if (q > j / p) break;  // overflow guard; q*p would exceed j anyway
    }
    s.coefficients[j] = acc / Rat(static_cast<long>(j));
  }
  if (!(s.coefficients[0] == Rat(1)) || (N >= 1 && !(s.coefficients[1] == Rat(1))))
    throw DefectError("series head is wrong");
  return s;
}

AHIntegralityReport certify_ah_integrality(long p, long N) {
  if (!is_prime(p)) throw std::invalid_argument("certify_ah_integrality: p must be prime");
  AHIntegralityReport rep;
  rep.checked_to = N;

  // v_N = vp(N!) bounds every negative valuation that could occur
  long vN = 0;
  for (long q = p; q <= N; q *= p) {
    vN += N / q;
    if (q > N / p) break;
  }
  const unsigned long K = static_cast<unsigned long>(vN + 2);
  Int P = Int::pow(Int(p), K);

  std::vector<Int> a(N + 1), u(N + 1), iu(N + 1);
  std::vector<long> v(N + 1, 0);
  a[0] = Int(1);
  u[0] = Int(1);
  iu[0] = Int(1);
  for (long j = 1; j <= N; ++j) {
    long e = 0;
    long jj = j;
    while (jj % p == 0) {
      jj /= p;
      ++e;
    }
    v[j] = v[j - 1] + e;
    u[j] = (u[j - 1] * Int(jj)).mod(P);
    Int inv_jj;
    if (mpz_invert(inv_jj.mpz(), Int(jj).mpz(), P.mpz()) == 0)
      throw DefectError("factorial unit not invertible");
    iu[j] = (iu[j - 1] * inv_jj).mod(P);

    // a_j = sum_{p^i <= j} a_{j - p^i} (j-1)! / (j - p^i)!
    Int acc(0);
    for (long q = 1; q <= j; q *= p) {
      long back = j - q;
      Int mult = (u[j - 1] * iu[back]).mod(P);
      mult = (mult * Int::pow(Int(p), static_cast<unsigned long>(v[j - 1] - v[back]))).mod(P);
      acc += (a[back] * mult).mod(P);
      if (q > j / p) break;
    }
    a[j] = acc.mod(P);

    if (!a[j].is_zero()) {
      Int unit;
      long va = a[j].remove_factor(p, unit);
      long vc = va - v[j];
      if (vc < 0 && rep.ok) {
        rep.ok = false;
        rep.first_bad_index = j;
        rep.first_bad_valuation = vc;
      }
    }
    // a_j = 0 mod p^K means vp(a_j) >= K > v_j, so c_j is integral there
  }
  return rep;
}

Mat<Fq> gexp_modp(const TraceFormSplitting& split, const Vec<Fq>& x, const FqFieldPtr& F) {
  if (F->degree() == 1) {
    Ring<Rat> ring = rat_ring();
    return gexp_tilde<Rat>(split, x, F, ring).modp;
  }
  Ring<Unram> ring = unram_ring(UnramField::get(F->p(), F->degree()));
  return gexp_tilde<Unram>(split, x, F, ring).modp;
}

}  // namespace chevexp
