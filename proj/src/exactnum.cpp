#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "chevexp/finite_field.hpp"
#include "chevexp/unramified.hpp"

namespace chevexp {

namespace {

// Polynomial arithmetic over F_p on small int64 coefficient vectors,
// degree-indexed c[0..].

std::vector<std::int64_t> poly_mod(std::vector<std::int64_t> a,
                                   const std::vector<std::int64_t>& m,  // monic, c_0..c_{k-1}
                                   std::int64_t p) {
  int k = static_cast<int>(m.size());
  for (int d = static_cast<int>(a.size()) - 1; d >= k; --d) {
    std::int64_t lead = a[d] % p;
    if (lead == 0) continue;
    for (int i = 0; i < k; ++i) {
      a[d - k + i] = (a[d - k + i] - lead * m[i]) % p;
    }
    a[d] = 0;
  }
  a.resize(k);
  for (auto& c : a) {
    c %= p;
    if (c < 0) c += p;
  }
  return a;
}

bool poly_is_zero(const std::vector<std::int64_t>& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t c) { return c == 0; });
}

std::vector<std::int64_t> poly_mul(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b, std::int64_t p) {
  std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return r;
}

// Is t^k + sum c_i t^i irreducible over F_p? Desk scale (k <= 4): no roots,
// and for k = 4 additionally no irreducible quadratic factor.
bool is_irreducible(const std::vector<std::int64_t>& c, std::int64_t p) {
  int k = static_cast<int>(c.size());
  auto eval = [&](std::int64_t x) {
    std::int64_t acc = 1;  // leading monic term accumulated by Horner below
    for (int i = k - 1; i >= 0; --i) acc = (acc * x + c[i]) % p;
    return (acc % p + p) % p;
  };
  if (k == 1) return true;
  for (std::int64_t x = 0; x < p; ++x)
    if (eval(x) == 0) return false;
  if (k < 4) return true;
  // trial divide by every monic irreducible quadratic
  for (std::int64_t b1 = 0; b1 < p; ++b1)
    for (std::int64_t b0 = 0; b0 < p; ++b0) {
      std::vector<std::int64_t> quad = {b0, b1};
      // quad itself must have no roots to be irreducible
      bool quad_irred = true;
      for (std::int64_t x = 0; x < p && quad_irred; ++x)
        if ((x * x + b1 * x + b0) % p == 0) quad_irred = false;
      if (!quad_irred) continue;
      std::vector<std::int64_t> full = c;
      full.push_back(1);  // monic degree k
      if (poly_is_zero(poly_mod(full, quad, p))) return false;
    }
  return true;
}

}  // namespace

FqFieldPtr FqField::get(std::int64_t p, int k) {
  if (!is_prime(p)) throw std::invalid_argument("FqField: p must be prime");
  if (k < 1 || k > Fq::kMaxDeg) throw std::invalid_argument("FqField: degree out of range");
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, FqFieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;

  // scan coefficient words in increasing order; the first irreducible wins
  std::int64_t limit = 1;
  for (int i = 0; i < k; ++i) limit *= p;
  std::vector<std::int64_t> mod;
  for (std::int64_t word = 0; word < limit; ++word) {
    std::vector<std::int64_t> c(k);
    std::int64_t w = word;
    for (int i = 0; i < k; ++i) {
      c[i] = w % p;
      w /= p;
    }
    if (is_irreducible(c, p)) {
      mod = c;
      break;
    }
  }
  FqFieldPtr F(new FqField(p, k, mod));
  cache[{p, k}] = F;
  return F;
}

std::string FqField::modulus_str() const {
  std::ostringstream os;
  os << "t^" << k_;
  for (int i = k_ - 1; i >= 0; --i) {
    if (mod_[i] == 0) continue;
    os << " + ";
    if (mod_[i] != 1 || i == 0) os << mod_[i];
    if (i >= 1) {
      if (mod_[i] != 1) os << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Fq operator*(const Fq& a, const Fq& b) {
  if (!a.F_ && !b.F_) {
    Fq r;
    r.c_[0] = a.c_[0] * b.c_[0];
    return r;
  }
  const FqFieldPtr& F = Fq::field_of(a, b);
  Fq fa = a.F_ ? a : Fq::promote(F, a);
  Fq fb = b.F_ ? b : Fq::promote(F, b);
  if (fa.F_ != fb.F_) throw std::invalid_argument("Fq: field mismatch");
  int k = F->degree();
  std::vector<std::int64_t> pa(fa.c_.begin(), fa.c_.begin() + k);
  std::vector<std::int64_t> pb(fb.c_.begin(), fb.c_.begin() + k);
  std::vector<std::int64_t> prod = poly_mul(pa, pb, F->p());
  return Fq(F, poly_mod(std::move(prod), F->modulus(), F->p()));
}

Fq Fq::inverse() const {
  if (!F_) {
    if (c_[0] == 1 || c_[0] == -1) return *this;
    throw std::invalid_argument("Fq: inverse of a bare constant needs a field context");
  }
  if (is_zero()) throw std::invalid_argument("Fq: inverse of zero");
  // x^(q-2); the field is tiny
  return pow(static_cast<std::uint64_t>(F_->q() - 2));
}

std::ostream& operator<<(std::ostream& os, const Fq& x) {
  if (!x.F_) return os << x.c_[0];
  os << "[";
  for (int i = 0; i < x.F_->degree(); ++i) {
    if (i) os << ",";
    os << x.c_[i];
  }
  return os << "]";
}

FieldTower field_tower(std::int64_t p, int k) {
  FqFieldPtr F = FqField::get(p, k);
  std::vector<Int> lift;
  lift.reserve(k);
  for (std::int64_t c : F->modulus()) lift.emplace_back(static_cast<long>(c));
  return FieldTower{F, std::move(lift)};
}

// ---------------------------------------------------------------------------
// Unramified lifts

std::shared_ptr<const UnramField> UnramField::get(std::int64_t p, int k) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, std::shared_ptr<const UnramField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, k});
  if (it != cache.end()) return it->second;
  FieldTower tower = field_tower(p, k);
  std::shared_ptr<const UnramField> F(
      new UnramField(p, k, tower.lift_polynomial, tower.residue_field));
  cache[{p, k}] = F;
  return F;
}

Unram operator*(const Unram& a, const Unram& b) {
  if (!a.F_ && !b.F_) {
    Unram r;
    r.c_[0] = a.c_[0] * b.c_[0];
    return r;
  }
  const UnramFieldPtr& F = a.F_ ? a.F_ : b.F_;
  Unram fa = a.F_ ? a : Unram(F, a.c_[0]);
  Unram fb = b.F_ ? b : Unram(F, b.c_[0]);
  if (fa.F_ != fb.F_) throw std::invalid_argument("Unram: field mismatch");
  int k = F->degree();
  std::vector<Rat> prod(2 * k - 1, Rat(0));
  for (int i = 0; i < k; ++i) {
    if (fa.c_[i].is_zero()) continue;
    for (int j = 0; j < k; ++j) prod[i + j] += fa.c_[i] * fb.c_[j];
  }
  const std::vector<Int>& m = F->lift_polynomial();
  for (int d = 2 * k - 2; d >= k; --d) {
    if (prod[d].is_zero()) continue;
    Rat lead = prod[d];
    for (int i = 0; i < k; ++i) prod[d - k + i] -= lead * Rat(m[i]);
    prod[d] = Rat(0);
  }
  prod.resize(k);
  return Unram(F, std::move(prod));
}

Unram Unram::inverse() const {
  if (!F_) {
    Unram r;
    r.c_[0] = c_[0].inverse();
    return r;
  }
  if (is_zero()) throw std::invalid_argument("Unram: inverse of zero");
  // Extended Euclid in Q[t] against the monic modulus.
  int k = F_->degree();
  std::vector<Rat> f(k + 1);  // modulus
  for (int i = 0; i < k; ++i) f[i] = Rat(F_->lift_polynomial()[i]);
  f[k] = Rat(1);
  std::vector<Rat> a = f, b = c_;
  auto deg = [](const std::vector<Rat>& u) {
    for (int d = static_cast<int>(u.size()) - 1; d >= 0; --d)
      if (!u[d].is_zero()) return d;
    return -1;
  };
  std::vector<Rat> s0 = {Rat(0)}, s1 = {Rat(1)};  // coefficients of b in the combination
  while (deg(b) > 0) {
    // divide a by b
    std::vector<Rat> q(std::max<int>(deg(a) - deg(b) + 1, 1), Rat(0));
    std::vector<Rat> r = a;
    int db = deg(b);
    Rat lead = b[db];
    for (int d = deg(r); d >= db; --d) {
      if (r[d].is_zero()) continue;
      Rat c = r[d] / lead;
      q[d - db] = c;
      for (int i = 0; i <= db; ++i) r[d - db + i] -= c * b[i];
      if (deg(r) >= d) r[d] = Rat(0);
    }
    // (s0, s1) <- (s1, s0 - q*s1)
    std::vector<Rat> qs1(q.size() + s1.size() - 1, Rat(0));
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) qs1[i + j] += q[i] * s1[j];
    std::vector<Rat> s2(std::max(s0.size(), qs1.size()), Rat(0));
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
    a = b;
    b = r;
    s0 = s1;
    s1 = s2;
  }
  int db = deg(b);
  if (db < 0) throw std::invalid_argument("Unram: element not invertible (shares a factor)");
  Rat scale = b[0].inverse();
  std::vector<Rat> inv(k, Rat(0));
  for (std::size_t i = 0; i < s1.size() && i < static_cast<std::size_t>(k); ++i)
    inv[i] = s1[i] * scale;
  Unram r(F_, std::move(inv));
  return r;
}

std::ostream& operator<<(std::ostream& os, const Unram& x) {
  if (!x.F_) return os << x.c_[0];
  os << "[";
  for (int i = 0; i < x.size(); ++i) {
    if (i) os << ",";
    os << x.c_[i];
  }
  return os << "]";
}

Valuation vp(const Unram& x, long p) {
  if (x.is_zero()) return {true, 0};
  bool seen = false;
  long best = 0;
  for (const Rat& c : x.coefficients()) {
    Valuation v = vp(c, p);
    if (v.is_infinite) continue;
    if (!seen || v.value < best) {
      best = v.value;
      seen = true;
    }
  }
  return {false, best};
}

Unram lift_to_unramified(const Fq& x) {
  if (!x.field()) throw std::invalid_argument("lift_to_unramified: constant has no field");
  UnramFieldPtr F = UnramField::get(x.field()->p(), x.field()->degree());
  std::vector<Rat> c(F->degree());
  for (int i = 0; i < F->degree(); ++i) c[i] = Rat(static_cast<long>(x.coeff_raw(i)));
  return Unram(F, std::move(c));
}

Fp reduce_mod_p(const Rat& x, std::int64_t p) {
  Valuation v = vp(x, p);
  if (!v.at_least(0)) throw std::invalid_argument("reduce_mod_p: negative valuation");
  Int pm(static_cast<long>(p));
  Int n = x.num().mod(pm);
  Int d = x.den().mod(pm);
  Fp fn(n.to_long(), p), fd(d.to_long(), p);
  return fn / fd;
}

Fq reduce_mod_p(const Unram& x) {
  if (!x.field()) throw std::invalid_argument("reduce_mod_p: constant has no field");
  const UnramFieldPtr& F = x.field();
  std::vector<std::int64_t> c(F->degree());
  for (int i = 0; i < F->degree(); ++i) c[i] = reduce_mod_p(x.coefficient(i), F->p()).v;
  return Fq(F->residue_field(), c);
}

}  // namespace chevexp
