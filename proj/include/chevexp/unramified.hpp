#pragma once

#include <memory>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "chevexp/finite_field.hpp"
#include "chevexp/rational.hpp"

namespace chevexp {

/// The degree-k unramified lift of F_{p^k}: the number field Q[t]/(f) where
/// f is the fixed monic integer lift of the residue field's modulus. Since f
/// stays irreducible mod p, the extension is unramified and the valuation of
/// an element is the minimum of the coefficient valuations in the power
/// basis.
class UnramField {
 public:
  static std::shared_ptr<const UnramField> get(std::int64_t p, int k);

  std::int64_t p() const { return p_; }
  int degree() const { return k_; }
  const std::vector<Int>& lift_polynomial() const { return lift_; }
  const FqFieldPtr& residue_field() const { return residue_; }

 private:
  UnramField(std::int64_t p, int k, std::vector<Int> lift, FqFieldPtr residue)
      : p_(p), k_(k), lift_(std::move(lift)), residue_(std::move(residue)) {}
  std::int64_t p_;
  int k_;
  std::vector<Int> lift_;
  FqFieldPtr residue_;
};

using UnramFieldPtr = std::shared_ptr<const UnramField>;

/// Element of the unramified lift, as a rational coefficient vector in the
/// power basis. A null field pointer marks a rational constant.
class Unram {
 public:
  Unram() : c_(1, Rat(0)) {}
  Unram(int c) : c_(1, Rat(c)) {}
  Unram(long c) : c_(1, Rat(c)) {}
  Unram(const Rat& c) : c_(1, c) {}
  Unram(UnramFieldPtr F, const Rat& scalar) : F_(std::move(F)), c_(F_->degree(), Rat(0)) {
    c_[0] = scalar;
  }
  Unram(UnramFieldPtr F, std::vector<Rat> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != F_->degree())
      throw std::invalid_argument("Unram: wrong coefficient count");
  }

  const UnramFieldPtr& field() const { return F_; }
  bool is_constant() const { return F_ == nullptr; }
  int size() const { return static_cast<int>(c_.size()); }
  const Rat& coefficient(int i) const { return c_[i]; }
  const std::vector<Rat>& coefficients() const { return c_; }
  bool is_zero() const {
    for (const Rat& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend Unram operator+(const Unram& a, const Unram& b) { return binop(a, b, false); }
  friend Unram operator-(const Unram& a, const Unram& b) { return binop(a, b, true); }
  Unram operator-() const {
    Unram r = *this;
    for (Rat& x : r.c_) x = -x;
    return r;
  }
  friend Unram operator*(const Unram& a, const Unram& b);
  Unram& operator+=(const Unram& o) { return *this = *this + o; }
  Unram& operator-=(const Unram& o) { return *this = *this - o; }
  Unram& operator*=(const Unram& o) { return *this = *this * o; }

  Unram inverse() const;
  friend Unram operator/(const Unram& a, const Unram& b) { return a * b.inverse(); }
  Unram& operator/=(const Unram& o) { return *this = *this / o; }

  friend bool operator==(const Unram& a, const Unram& b) {
    if (!a.F_ && !b.F_) return a.c_[0] == b.c_[0];
    const UnramFieldPtr& F = a.F_ ? a.F_ : b.F_;
    Unram fa = a.F_ ? a : Unram(F, a.c_[0]);
    Unram fb = b.F_ ? b : Unram(F, b.c_[0]);
    if (fa.F_ != fb.F_) throw std::invalid_argument("Unram: field mismatch");
    return fa.c_ == fb.c_;
  }
  friend bool operator!=(const Unram& a, const Unram& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Unram& x);

 private:
  static Unram binop(const Unram& a, const Unram& b, bool sub) {
    if (!a.F_ && !b.F_) {
      Unram r;
      r.c_[0] = sub ? a.c_[0] - b.c_[0] : a.c_[0] + b.c_[0];
      return r;
    }
    const UnramFieldPtr& F = a.F_ ? a.F_ : b.F_;
    Unram fa = a.F_ ? a : Unram(F, a.c_[0]);
    Unram fb = b.F_ ? b : Unram(F, b.c_[0]);
    if (fa.F_ != fb.F_) throw std::invalid_argument("Unram: field mismatch");
    Unram r = fa;
    for (int i = 0; i < F->degree(); ++i) r.c_[i] = sub ? r.c_[i] - fb.c_[i] : r.c_[i] + fb.c_[i];
    return r;
  }

  UnramFieldPtr F_;
  std::vector<Rat> c_;
};

Valuation vp(const Unram& x, long p);

/// Coefficientwise integer lift F_{p^k} -> unramified field (coefficients in
/// [0, p)); k = 1 lands in Q.
Unram lift_to_unramified(const Fq& x);
/// Reduction mod p; every coefficient must have nonnegative valuation.
Fq reduce_mod_p(const Unram& x);
Fp reduce_mod_p(const Rat& x, std::int64_t p);

}  // namespace chevexp
