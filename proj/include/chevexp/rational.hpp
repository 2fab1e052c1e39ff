#pragma once

#include <gmp.h>
#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chevexp {

/// Arbitrary-precision integer.
///
/// Thin value wrapper around GMP so that arithmetic returns plain values
/// (no expression templates), which makes it usable as an Eigen scalar.
class Int {
 public:
  Int() : v_(0) {}
  Int(int x) : v_(static_cast<long>(x)) {}
  Int(long x) : v_(x) {}
  explicit Int(const mpz_class& z) : v_(z) {}
  explicit Int(const std::string& s) : v_(s) {}

  const mpz_class& raw() const { return v_; }
  mpz_class& raw() { return v_; }
  mpz_srcptr mpz() const { return v_.get_mpz_t(); }
  mpz_ptr mpz() { return v_.get_mpz_t(); }

  bool is_zero() const { return mpz_sgn(mpz()) == 0; }
  int sign() const { return mpz_sgn(mpz()); }
  bool fits_long() const { return mpz_fits_slong_p(mpz()) != 0; }
  long to_long() const { return mpz_get_si(mpz()); }
  std::string str() const { return v_.get_str(); }

  friend Int operator+(const Int& a, const Int& b) {
    Int r;
    mpz_add(r.mpz(), a.mpz(), b.mpz());
    return r;
  }
  friend Int operator-(const Int& a, const Int& b) {
    Int r;
    mpz_sub(r.mpz(), a.mpz(), b.mpz());
    return r;
  }
  friend Int operator*(const Int& a, const Int& b) {
    Int r;
    mpz_mul(r.mpz(), a.mpz(), b.mpz());
    return r;
  }
  Int operator-() const {
    Int r;
    mpz_neg(r.mpz(), mpz());
    return r;
  }
  Int& operator+=(const Int& o) {
    mpz_add(mpz(), mpz(), o.mpz());
    return *this;
  }
  Int& operator-=(const Int& o) {
    mpz_sub(mpz(), mpz(), o.mpz());
    return *this;
  }
  Int& operator*=(const Int& o) {
    mpz_mul(mpz(), mpz(), o.mpz());
    return *this;
  }
  /// this += a*b without temporaries; the workhorse of exact matrix products.
  void addmul(const Int& a, const Int& b) { mpz_addmul(mpz(), a.mpz(), b.mpz()); }

  friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.mpz(), b.mpz()) == 0; }
  friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
  friend bool operator<(const Int& a, const Int& b) { return mpz_cmp(a.mpz(), b.mpz()) < 0; }
  friend bool operator>(const Int& a, const Int& b) { return b < a; }

  /// Exact quotient; throws if b does not divide a.
  static Int div_exact(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::invalid_argument("Int::div_exact: division by zero");
    Int q, r;
    mpz_tdiv_qr(q.mpz(), r.mpz(), a.mpz(), b.mpz());
    if (!r.is_zero()) throw std::invalid_argument("Int::div_exact: not divisible");
    return q;
  }
  static Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.mpz(), a.mpz(), b.mpz());
    return r;
  }
  static Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.mpz(), a.mpz(), b.mpz());
    return r;
  }
  static Int pow(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.mpz(), a.mpz(), e);
    return r;
  }
  Int mod(const Int& m) const {
    Int r;
    mpz_mod(r.mpz(), mpz(), m.mpz());
    return r;
  }
  /// Largest e with p^e | *this (requires nonzero); also returns this/p^e.
  long remove_factor(long p, Int& unit) const {
    if (is_zero()) throw std::invalid_argument("Int::remove_factor: zero input");
    Int pp(p);
    return static_cast<long>(mpz_remove(unit.mpz(), mpz(), pp.mpz()));
  }

  friend std::ostream& operator<<(std::ostream& os, const Int& x);

 private:
  mpz_class v_;
};

inline bool is_prime(long p) {
  if (p < 2) return false;
  mpz_class z(p);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

/// Exact rational number, always in lowest terms with positive denominator.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(int x) : v_(static_cast<long>(x)) {}
  Rat(long x) : v_(x) {}
  Rat(const Int& n) : v_(n.raw()) {}
  Rat(const Int& n, const Int& d) {
    if (d.is_zero()) throw std::invalid_argument("Rat: zero denominator");
    v_ = mpq_class(n.raw()) / mpq_class(d.raw());
  }
  Rat(long n, long d) : Rat(Int(n), Int(d)) {}
  explicit Rat(const mpq_class& q) : v_(q) { mpq_canonicalize(v_.get_mpq_t()); }
  /// Parses "n" or "n/d".
  static Rat from_string(const std::string& s) {
    mpq_class q(s);
    mpq_canonicalize(q.get_mpq_t());
    return Rat(q);
  }

  mpq_srcptr mpq() const { return v_.get_mpq_t(); }
  mpq_ptr mpq() { return v_.get_mpq_t(); }

  Int num() const { return Int(mpz_class(v_.get_num())); }
  Int den() const { return Int(mpz_class(v_.get_den())); }
  bool is_zero() const { return mpq_sgn(mpq()) == 0; }
  int sign() const { return mpq_sgn(mpq()); }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(mpq()), 1) == 0; }
  std::string str() const {
    if (is_integer()) return mpz_class(v_.get_num()).get_str();
    return v_.get_str();
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    Rat r;
    mpq_add(r.mpq(), a.mpq(), b.mpq());
    return r;
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    Rat r;
    mpq_sub(r.mpq(), a.mpq(), b.mpq());
    return r;
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    Rat r;
    mpq_mul(r.mpq(), a.mpq(), b.mpq());
    return r;
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::invalid_argument("Rat: division by zero");
    Rat r;
    mpq_div(r.mpq(), a.mpq(), b.mpq());
    return r;
  }
  Rat operator-() const {
    Rat r;
    mpq_neg(r.mpq(), mpq());
    return r;
  }
  Rat& operator+=(const Rat& o) {
    mpq_add(mpq(), mpq(), o.mpq());
    return *this;
  }
  Rat& operator-=(const Rat& o) {
    mpq_sub(mpq(), mpq(), o.mpq());
    return *this;
  }
  Rat& operator*=(const Rat& o) {
    mpq_mul(mpq(), mpq(), o.mpq());
    return *this;
  }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }
  Rat inverse() const {
    if (is_zero()) throw std::invalid_argument("Rat: inverse of zero");
    Rat r;
    mpq_inv(r.mpq(), mpq());
    return r;
  }

  friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.mpq(), b.mpq()) != 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.mpq(), b.mpq()) < 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& x);

 private:
  mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Int& x) { return os << x.str(); }
inline std::ostream& operator<<(std::ostream& os, const Rat& x) { return os << x.str(); }

/// p-adic valuation; infinite exactly for 0.
struct Valuation {
  bool is_infinite = false;
  long value = 0;

  bool at_least(long t) const { return is_infinite || value >= t; }
  friend bool operator==(const Valuation& a, const Valuation& b) {
    if (a.is_infinite || b.is_infinite) return a.is_infinite == b.is_infinite;
    return a.value == b.value;
  }
};

inline Valuation vp(const Int& x, long p) {
  if (!is_prime(p)) throw std::invalid_argument("vp: p must be prime");
  if (x.is_zero()) return {true, 0};
  Int unit;
  return {false, x.remove_factor(p, unit)};
}

inline Valuation vp(const Rat& x, long p) {
  if (!is_prime(p)) throw std::invalid_argument("vp: p must be prime");
  if (x.is_zero()) return {true, 0};
  Int unit;
  long vn = x.num().is_zero() ? 0 : x.num().remove_factor(p, unit);
  long vd = x.den().remove_factor(p, unit);
  return {false, vn - vd};
}

/// Result of checking that a family of values lies in the localization at p.
struct PIntegralityCertificate {
  bool ok = true;
  std::size_t witness_index = 0;  // first offending index when !ok
  long witness_valuation = 0;
  std::optional<long> worst_valuation;  // min finite valuation over all entries

  void absorb(const Valuation& v, std::size_t index) {
    if (v.is_infinite) return;
    if (!worst_valuation || v.value < *worst_valuation) worst_valuation = v.value;
    if (ok && v.value < 0) {
      ok = false;
      witness_index = index;
      witness_valuation = v.value;
    }
  }
  void merge(const PIntegralityCertificate& o) {
    if (o.worst_valuation) {
      if (!worst_valuation || *o.worst_valuation < *worst_valuation)
        worst_valuation = *o.worst_valuation;
    }
    if (ok && !o.ok) {
      ok = false;
      witness_index = o.witness_index;
      witness_valuation = o.witness_valuation;
    }
  }
};

template <class Range>
PIntegralityCertificate certify_p_integral(const Range& values, long p) {
  PIntegralityCertificate cert;
  std::size_t i = 0;
  for (const auto& x : values) cert.absorb(vp(x, p), i++);
  return cert;
}

}  // namespace chevexp
