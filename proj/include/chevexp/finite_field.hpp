#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chevexp/rational.hpp"

namespace chevexp {

/// Element of a prime field F_p. The modulus travels with the value; a
/// modulus of 0 marks an integer constant (as produced by generic code
/// writing Scalar(0) or Scalar(1)) that coerces on first contact with a
/// genuine field element.
struct Fp {
  std::int64_t v = 0;
  std::int64_t p = 0;

  Fp() = default;
  Fp(int c) : v(c), p(0) {}
  Fp(long c) : v(c), p(0) {}
  Fp(std::int64_t c, std::int64_t mod) : v(c), p(mod) {
    if (p != 0) {
      v %= p;
      if (v < 0) v += p;
    }
  }
  static Fp in_field(std::int64_t c, std::int64_t mod) {
    if (!is_prime(mod)) throw std::invalid_argument("Fp: modulus must be prime");
    return Fp(c, mod);
  }

  bool is_constant() const { return p == 0; }
  bool is_zero() const { return v == 0; }

  friend std::int64_t joint_modulus(const Fp& a, const Fp& b) {
    if (a.p != 0 && b.p != 0 && a.p != b.p) throw std::invalid_argument("Fp: modulus mismatch");
    return a.p != 0 ? a.p : b.p;
  }
  friend Fp operator+(const Fp& a, const Fp& b) {
    std::int64_t m = joint_modulus(a, b);
    if (m == 0) return Fp(a.v + b.v, 0);
    return Fp(Fp(a.v, m).v + Fp(b.v, m).v, m);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::int64_t m = joint_modulus(a, b);
    if (m == 0) return Fp(a.v - b.v, 0);
    return Fp(Fp(a.v, m).v - Fp(b.v, m).v, m);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::int64_t m = joint_modulus(a, b);
    if (m == 0) return Fp(a.v * b.v, 0);
    return Fp(Fp(a.v, m).v * Fp(b.v, m).v, m);
  }
  Fp operator-() const { return p == 0 ? Fp(-v, 0) : Fp(p - v, p); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp inverse() const {
    if (p == 0) {
      if (v == 1 || v == -1) return *this;
      throw std::invalid_argument("Fp: inverse needs a field modulus");
    }
    if (v == 0) throw std::invalid_argument("Fp: inverse of zero");
    // extended Euclid
    std::int64_t a = v, m = p, x0 = 1, x1 = 0;
    while (m != 0) {
      std::int64_t q = a / m;
      std::int64_t t = a - q * m;
      a = m;
      m = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    if (a != 1) throw std::invalid_argument("Fp: value not invertible");
    return Fp(x0, p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  Fp pow(std::uint64_t e) const {
    Fp r(1, p), base = *this;
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::int64_t m = joint_modulus(a, b);
    if (m == 0) return a.v == b.v;
    return Fp(a.v, m).v == Fp(b.v, m).v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
  friend bool operator<(const Fp& a, const Fp& b) { return a.v < b.v; }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v; }
};

/// Immutable description of F_{p^k}: the prime, the degree, and the fixed
/// monic irreducible modulus t^k + c_{k-1} t^{k-1} + ... + c_0 over F_p.
/// The modulus is the irreducible polynomial whose coefficient word
/// (c_0 + c_1 p + ...) is smallest, so the tower is deterministic.
class FqField {
 public:
  static std::shared_ptr<const FqField> get(std::int64_t p, int k);

  std::int64_t p() const { return p_; }
  int degree() const { return k_; }
  std::int64_t q() const { return q_; }
  const std::vector<std::int64_t>& modulus() const { return mod_; }  // c_0..c_{k-1}
  std::string modulus_str() const;

 private:
  FqField(std::int64_t p, int k, std::vector<std::int64_t> mod)
      : p_(p), k_(k), mod_(std::move(mod)) {
    q_ = 1;
    for (int i = 0; i < k_; ++i) q_ *= p_;
  }
  std::int64_t p_;
  int k_;
  std::int64_t q_;
  std::vector<std::int64_t> mod_;
};

using FqFieldPtr = std::shared_ptr<const FqField>;

/// Element of F_{p^k} in the power basis 1, t, ..., t^{k-1}. A null field
/// pointer marks an integer constant, as with Fp.
class Fq {
 public:
  static constexpr int kMaxDeg = 4;

  Fq() { c_.fill(0); }
  Fq(int c) : Fq(static_cast<long>(c)) {}
  Fq(long c) {
    c_.fill(0);
    c_[0] = c;
  }
  Fq(FqFieldPtr F, std::int64_t scalar) : F_(std::move(F)) {
    c_.fill(0);
    c_[0] = reduce(scalar);
  }
  /// From power-basis coefficients c[0..k-1] (integers, reduced mod p).
  Fq(FqFieldPtr F, const std::vector<std::int64_t>& coeffs) : F_(std::move(F)) {
    c_.fill(0);
    if (static_cast<int>(coeffs.size()) > F_->degree())
      throw std::invalid_argument("Fq: too many coefficients");
    for (std::size_t i = 0; i < coeffs.size(); ++i) c_[i] = reduce(coeffs[i]);
  }
  /// Element number e in [0, q): base-p digits are the coefficients.
  static Fq from_index(const FqFieldPtr& F, std::int64_t e) {
    std::vector<std::int64_t> c(F->degree());
    for (int i = 0; i < F->degree(); ++i) {
      c[i] = e % F->p();
      e /= F->p();
    }
    return Fq(F, c);
  }
  std::int64_t index() const {
    require_field();
    std::int64_t e = 0;
    for (int i = F_->degree() - 1; i >= 0; --i) e = e * F_->p() + c_[i];
    return e;
  }

  const FqFieldPtr& field() const { return F_; }
  bool is_constant() const { return F_ == nullptr; }
  std::int64_t coeff_raw(int i) const { return c_[i]; }
  Fp coefficient(int i) const {
    require_field();
    return Fp(c_[i], F_->p());
  }
  bool is_zero() const {
    for (int i = 0; i < kMaxDeg; ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  bool in_prime_field() const {
    for (int i = 1; i < kMaxDeg; ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  friend Fq operator+(const Fq& a, const Fq& b) { return binop(a, b, +1); }
  friend Fq operator-(const Fq& a, const Fq& b) { return binop(a, b, -1); }
  Fq operator-() const {
    Fq r = *this;
    if (!F_) {
      r.c_[0] = -r.c_[0];
      return r;
    }
    for (int i = 0; i < F_->degree(); ++i) r.c_[i] = r.reduce(-r.c_[i]);
    return r;
  }
  friend Fq operator*(const Fq& a, const Fq& b);
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }

  Fq inverse() const;
  friend Fq operator/(const Fq& a, const Fq& b) { return a * b.inverse(); }
  Fq& operator/=(const Fq& o) { return *this = *this / o; }

  Fq pow(std::uint64_t e) const {
    require_field();
    Fq r(F_, 1), base = *this;
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }
  Fq frobenius() const { return pow(static_cast<std::uint64_t>(field_of(*this, *this)->p())); }
  /// Inverse of Frobenius; unique since the field is perfect.
  Fq frobenius_inverse() const {
    require_field();
    std::uint64_t e = 1;
    for (int i = 1; i < F_->degree(); ++i) e *= static_cast<std::uint64_t>(F_->p());
    return pow(e);  // x^(q/p)
  }

  friend bool operator==(const Fq& a, const Fq& b) {
    if (!a.F_ && !b.F_) return a.c_ == b.c_;
    const Fq& fa = a.F_ ? a : promote(b.F_, a);
    const Fq& fb = b.F_ ? b : promote(a.F_, b);
    if (fa.F_ != fb.F_) throw std::invalid_argument("Fq: field mismatch");
    return fa.c_ == fb.c_;
  }
  friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }
  friend bool operator<(const Fq& a, const Fq& b) { return a.c_ < b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const Fq& x);

 private:
  void require_field() const {
    if (!F_) throw std::invalid_argument("Fq: operation needs a field context");
  }
  std::int64_t reduce(std::int64_t x) const {
    std::int64_t p = F_->p();
    x %= p;
    if (x < 0) x += p;
    return x;
  }
  static Fq promote(const FqFieldPtr& F, const Fq& cst) { return Fq(F, cst.c_[0]); }
  static const FqFieldPtr& field_of(const Fq& a, const Fq& b) {
    if (a.F_) return a.F_;
    if (b.F_) return b.F_;
    throw std::invalid_argument("Fq: operation needs a field context");
  }
  static Fq binop(const Fq& a, const Fq& b, int sgn) {
    if (!a.F_ && !b.F_) {
      Fq r;
      r.c_[0] = a.c_[0] + sgn * b.c_[0];
      return r;
    }
    const FqFieldPtr& F = field_of(a, b);
    Fq fa = a.F_ ? a : promote(F, a);
    Fq fb = b.F_ ? b : promote(F, b);
    if (fa.F_ != fb.F_) throw std::invalid_argument("Fq: field mismatch");
    Fq r(F, 0);
    for (int i = 0; i < F->degree(); ++i) r.c_[i] = r.reduce(fa.c_[i] + sgn * fb.c_[i]);
    return r;
  }

  FqFieldPtr F_;
  std::array<std::int64_t, kMaxDeg> c_;
};

/// Fixed tower data for the pair (F_{p^k}, its unramified characteristic-0
/// lift): the finite field and the same modulus read as a monic integer
/// polynomial.
struct FieldTower {
  FqFieldPtr residue_field;
  std::vector<Int> lift_polynomial;  // c_0..c_{k-1} of t^k + sum c_i t^i, lifted to Z
};

FieldTower field_tower(std::int64_t p, int k);

}  // namespace chevexp
