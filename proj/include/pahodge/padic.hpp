#pragma once

// Capped-precision elements of Q_p and of unramified extensions of Q_p.
//
// An element is stored as p^val * (c_0 + c_1 b + ... + c_{f-1} b^{f-1}) where
// b is a root of the field's defining polynomial, the c_i are reduced modulo
// p^(prec - val) and not all divisible by p.  `prec` is the absolute
// precision: the element is known modulo p^prec.  Absolute precision never
// exceeds the field cap.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "valuation.hpp"

namespace pahodge {

namespace detail {

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
using FpPoly = std::vector<long>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long fp_inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    const long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw DomainError("element not invertible modulo p");
  return ((t % p) + p) % p;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  fp_trim(c);
  return c;
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  fp_trim(a);
  return a;
}

// Quotient and remainder of a by b (b nonzero).
inline std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, long p) {
  fp_trim(a);
  if (a.size() < b.size()) return {{}, a};
  FpPoly q(a.size() - b.size() + 1, 0);
  const long lead_inv = fp_inv(b.back(), p);
  for (std::size_t k = a.size(); k-- >= b.size();) {
    const long c = a[k] * lead_inv % p;
    q[k - (b.size() - 1)] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      long& t = a[k - (b.size() - 1) + j];
      t = ((t - c * b[j]) % p + p) % p;
    }
    if (k == 0) break;
  }
  fp_trim(a);
  fp_trim(q);
  return {q, a};
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    auto r = fp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& g, long p) {
  return fp_divmod(fp_mul(a, b, p), g, p).second;
}

inline FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& g, long p) {
  FpPoly r{1};
  base = fp_divmod(base, g, p).second;
  while (e > 0) {
    if (e & 1) r = fp_mulmod(r, base, g, p);
    base = fp_mulmod(base, base, g, p);
    e >>= 1;
  }
  return r;
}

// Ben-Or irreducibility test over F_p.
inline bool fp_irreducible(const FpPoly& g, long p) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  FpPoly xp{0, 1};
  for (int i = 1; i <= n / 2; ++i) {
    xp = fp_powmod(xp, static_cast<std::uint64_t>(p), g, p);
    if (fp_gcd(g, fp_sub(xp, FpPoly{0, 1}, p), p).size() > 1) return false;
  }
  return true;
}

// Extended Euclid: inverse of a modulo g in F_p[X].
inline FpPoly fp_invmod(const FpPoly& a, const FpPoly& g, long p) {
  FpPoly r0 = g, r1 = fp_divmod(a, g, p).second, s0{}, s1{1};
  while (!r1.empty()) {
    auto [q, r] = fp_divmod(r0, r1, p);
    FpPoly s = fp_sub(s0, fp_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw DomainError("element not invertible in the residue field");
  const long c = fp_inv(r0[0], p);
  for (auto& x : s0) x = x * c % p;
  return s0;
}

}  // namespace detail

/// Q_p (f = 1) or the unramified extension Q_p[X]/(g) of degree f, with a
/// fixed absolute precision cap.  Instances are interned and live for the
/// whole program, so elements refer to them by plain pointer.
class PadicField {
 public:
  /// `modulus` lists the coefficients of a monic degree-f polynomial, lowest
  /// first, whose reduction modulo p is irreducible.  It may be empty for f = 1.
  static const PadicField* get(long p, int cap, int f = 1, std::vector<long> modulus = {}) {
    if (!detail::is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (cap < 1) throw DomainError("precision cap must be at least 1");
    if (f < 1) throw DomainError("residue degree must be at least 1");
    if (f == 1 && modulus.empty()) modulus = {0, 1};
    if (static_cast<int>(modulus.size()) != f + 1 || modulus.back() != 1)
      throw DomainError("defining polynomial must be monic of degree f");
    detail::FpPoly red(modulus.size());
    for (std::size_t i = 0; i < modulus.size(); ++i) red[i] = ((modulus[i] % p) + p) % p;
    if (!detail::fp_irreducible(red, p))
      throw DomainError("defining polynomial is not irreducible modulo p");

    static std::mutex mu;
    static std::map<std::tuple<long, int, std::vector<long>>, std::unique_ptr<PadicField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, cap, modulus);
    auto it = registry.find(key);
    if (it == registry.end()) {
      std::unique_ptr<PadicField> field(new PadicField(p, cap, f, modulus));
      it = registry.emplace(std::move(key), std::move(field)).first;
    }
    return it->second.get();
  }

  long prime() const { return p_; }
  int degree() const { return f_; }
  int cap() const { return cap_; }
  const std::vector<long>& modulus() const { return modulus_; }
  /// Size of the residue field.
  std::uint64_t residue_size() const {
    std::uint64_t q = 1;
    for (int i = 0; i < f_; ++i) q *= static_cast<std::uint64_t>(p_);
    return q;
  }

  const PadicField* with_cap(int cap) const { return get(p_, cap, f_, modulus_); }

  /// p^k for k >= 0.
  const mpz_class& power(int k) const {
    if (k < 0) throw Error("negative power of p requested");
    if (k < static_cast<int>(powers_.size())) return powers_[k];
    thread_local mpz_class scratch;
    mpz_ui_pow_ui(scratch.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(k));
    return scratch;
  }

  bool same_as(const PadicField& o) const { return this == &o; }

 private:
  PadicField(long p, int cap, int f, std::vector<long> modulus)
      : p_(p), f_(f), cap_(cap), modulus_(std::move(modulus)) {
    const int n = 4 * cap_ + 256;
    powers_.resize(n);
    powers_[0] = 1;
    for (int i = 1; i < n; ++i) powers_[i] = powers_[i - 1] * p_;
  }

  long p_;
  int f_;
  int cap_;
  std::vector<long> modulus_;
  std::vector<mpz_class> powers_;
};

/// An element of a PadicField known modulo p^precision.
class Padic {
 public:
  Padic() = default;

  static Padic zero(const PadicField* field, int prec) {
    Padic r;
    r.field_ = field;
    r.prec_ = std::min(prec, field->cap());
    r.val_ = r.prec_;
    r.unit_.assign(field->degree(), mpz_class(0));
    return r;
  }
  static Padic zero(const PadicField* field) { return zero(field, field->cap()); }

  static Padic from_int(const PadicField* field, const mpz_class& n, int prec) {
    std::vector<mpz_class> c(field->degree(), mpz_class(0));
    c[0] = n;
    return make(field, std::move(c), 0, prec);
  }
  static Padic from_int(const PadicField* field, const mpz_class& n) { return from_int(field, n, field->cap()); }
  static Padic from_int(const PadicField* field, long n) { return from_int(field, mpz_class(n), field->cap()); }

  /// p^k, for any integer k.
  static Padic power_of_p(const PadicField* field, int k) {
    std::vector<mpz_class> c(field->degree(), mpz_class(0));
    c[0] = 1;
    return make(field, std::move(c), k, field->cap());
  }

  static Padic from_rational(const PadicField* field, const mpq_class& q, int prec) {
    if (q == 0) return zero(field, prec);
    mpz_class num = q.get_num(), den = q.get_den();
    const int vn = remove_p(num, field->prime());
    const int vd = remove_p(den, field->prime());
    const int v = vn - vd;
    const int rel = std::min(prec, field->cap()) - v;
    if (rel <= 0) return zero(field, prec);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), field->power(rel).get_mpz_t());
    std::vector<mpz_class> c(field->degree(), mpz_class(0));
    c[0] = num * inv;
    return make(field, std::move(c), v, prec);
  }
  static Padic from_rational(const PadicField* field, const mpq_class& q) {
    return from_rational(field, q, field->cap());
  }

  /// p^shift * sum coords[i] b^i, known modulo p^prec.
  static Padic from_coords(const PadicField* field, std::vector<mpz_class> coords, int shift, int prec) {
    if (static_cast<int>(coords.size()) != field->degree())
      throw ParseError("expected " + std::to_string(field->degree()) + " coordinates");
    return make(field, std::move(coords), shift, prec);
  }

  /// Canonical generator b of an unramified extension (b = 1 when f = 1 is
  /// meaningless, so this requires f >= 2).
  static Padic generator(const PadicField* field) {
    if (field->degree() < 2) throw DomainError("Q_p has no extension generator");
    std::vector<mpz_class> c(field->degree(), mpz_class(0));
    c[1] = 1;
    return make(field, std::move(c), 0, field->cap());
  }

  const PadicField* field() const { return field_; }
  long prime() const { return field_->prime(); }
  int precision() const { return prec_; }
  int relative_precision() const { return prec_ - val_; }
  bool is_zero() const { return val_ >= prec_; }
  /// Valuation, or infinity when the element is zero at its precision.
  Valuation valuation() const { return is_zero() ? Valuation::infinite() : Valuation(val_); }
  /// Integer valuation; equals precision() for zero.
  int ord() const { return val_; }
  bool is_unit() const { return !is_zero() && val_ == 0; }

  const std::vector<mpz_class>& unit_coords() const { return unit_; }

  /// Integer coordinates of the element (requires valuation >= 0), reduced
  /// modulo p^precision.
  std::vector<mpz_class> coords() const {
    require_integral();
    std::vector<mpz_class> out(unit_.size());
    if (is_zero()) {
      for (auto& c : out) c = 0;
      return out;
    }
    for (std::size_t i = 0; i < unit_.size(); ++i) out[i] = unit_[i] * field_->power(val_);
    return out;
  }

  /// Integer representative in [0, p^precision), for f = 1 and valuation >= 0.
  mpz_class lift() const {
    if (field_->degree() != 1) throw DomainError("lift() needs an element of Q_p");
    return coords()[0];
  }

  /// Rational representative p^val * unit (f = 1 only).
  mpq_class to_rational() const {
    if (field_->degree() != 1) throw DomainError("to_rational() needs an element of Q_p");
    if (is_zero()) return 0;
    mpq_class r(unit_[0]);
    if (val_ >= 0) return r * mpq_class(field_->power(val_));
    return r / mpq_class(field_->power(-val_));
  }

  /// Residue class modulo p as coordinates in F_p (valuation >= 0 required).
  std::vector<long> residue() const {
    require_integral();
    std::vector<long> r(unit_.size(), 0);
    if (is_zero() || val_ > 0) return r;
    for (std::size_t i = 0; i < unit_.size(); ++i) {
      mpz_class t;
      mpz_fdiv_r_ui(t.get_mpz_t(), unit_[i].get_mpz_t(), static_cast<unsigned long>(prime()));
      r[i] = t.get_si();
    }
    return r;
  }

  /// Same value with absolute precision lowered to `prec` (never raised).
  Padic with_precision(int prec) const {
    if (prec >= prec_) return *this;
    return make(field_, unit_, val_, prec);
  }

  Padic zero_like() const { return zero(field_, field_->cap()); }
  Padic one_like() const { return from_int(field_, 1L); }
  Padic from_int_like(long n) const { return from_int(field_, n); }
  Padic from_rational_like(const mpq_class& q) const { return from_rational(field_, q); }

  Padic operator-() const {
    Padic r = *this;
    for (auto& c : r.unit_) c = -c;
    return make(field_, std::move(r.unit_), val_, prec_);
  }

  friend Padic operator+(const Padic& a, const Padic& b) { return add(a, b, false); }
  friend Padic operator-(const Padic& a, const Padic& b) { return add(a, b, true); }

  friend Padic operator*(const Padic& a, const Padic& b) {
    check_compatible(a, b);
    const int prec = std::min(a.prec_ + b.val_, b.prec_ + a.val_);
    const int v = a.val_ + b.val_;
    if (a.is_zero() || b.is_zero()) return zero(a.field_, prec);
    return make(a.field_, mul_coords(a.field_, a.unit_, b.unit_), v, prec);
  }

  friend Padic operator/(const Padic& a, const Padic& b) {
    check_compatible(a, b);
    if (b.is_zero())
      throw PrecisionError("division by an element indistinguishable from 0 at precision " +
                           std::to_string(b.prec_));
    if (a.is_zero()) return zero(a.field_, a.prec_ - b.val_);
    const int rel = std::min(a.relative_precision(), b.relative_precision());
    const int v = a.val_ - b.val_;
    auto inv = inverse_unit(b.field_, b.unit_, rel);
    return make(a.field_, mul_coords(a.field_, a.unit_, inv), v, v + rel);
  }

  Padic& operator+=(const Padic& o) { return *this = *this + o; }
  Padic& operator-=(const Padic& o) { return *this = *this - o; }
  Padic& operator*=(const Padic& o) { return *this = *this * o; }
  Padic& operator/=(const Padic& o) { return *this = *this / o; }

  Padic inverse() const { return one_like() / *this; }

  /// Product with an exact integer: no precision is lost.
  Padic mul_int(const mpz_class& k) const {
    if (k == 0) return zero(field_, field_->cap());
    mpz_class rest = k;
    const int e = remove_p(rest, prime());
    Padic r = *this;
    r.mul_split_in_place(rest, e);
    return r;
  }
  /// In place product with p^e rest, rest prime to p.
  void mul_split_in_place(const mpz_class& rest, int e) {
    const int prec = std::min(prec_ + e, field_->cap());
    if (is_zero()) {
      *this = zero(field_, prec);
      return;
    }
    // the unit part stays a unit
    const int rel = prec - (val_ + e);
    if (rel <= 0) {
      *this = zero(field_, prec);
      return;
    }
    const mpz_class& mod = field_->power(rel);
    for (auto& x : unit_) {
      x *= rest;
      mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    }
    val_ += e;
    prec_ = prec;
  }
  /// k = p^e rest with rest prime to p.
  static std::pair<mpz_class, int> split_int(const mpz_class& k, long p) {
    mpz_class rest = k;
    const int e = remove_p(rest, p);
    return {rest, e};
  }
  Padic mul_int(long k) const { return mul_int(mpz_class(k)); }

  /// Quotient by an exact nonzero integer k = p^e k': the absolute
  /// precision drops by e, the relative precision is unchanged.
  Padic div_int(const mpz_class& k) const {
    if (k == 0) throw DomainError("division by the integer 0");
    mpz_class rest = k;
    const int e = remove_p(rest, prime());
    if (is_zero()) return zero(field_, prec_ - e);
    const int rel = relative_precision();
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), field_->power(rel).get_mpz_t());
    std::vector<mpz_class> c = unit_;
    for (auto& x : c) x *= inv;
    return make(field_, std::move(c), val_ - e, prec_ - e);
  }
  Padic div_int(long k) const { return div_int(mpz_class(k)); }

  /// The same element viewed in another field with the same p and defining
  /// polynomial (typically a different precision cap).
  Padic in_field(const PadicField* other) const {
    if (other->prime() != prime() || other->modulus() != field_->modulus())
      throw Error("in_field: incompatible fields");
    if (is_zero()) return zero(other, prec_);
    return make(other, unit_, val_, prec_);
  }

  Padic pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Padic r = one_like(), b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e > 0) b *= b;
    }
    return r;
  }

  /// Equality at the smaller of the two precisions.
  friend bool operator==(const Padic& a, const Padic& b) { return (a - b).is_zero(); }

  std::string to_string() const {
    std::ostringstream os;
    const long p = prime();
    if (is_zero()) {
      os << "O(" << p << "^" << prec_ << ")";
      return os.str();
    }
    auto coord_str = [&](const mpz_class& c) {
      std::string s = c.get_str();
      if (val_ > 0) s += "*" + std::to_string(p) + "^" + std::to_string(val_);
      if (val_ < 0) s += "/" + std::to_string(p) + "^" + std::to_string(-val_);
      return s;
    };
    if (field_->degree() == 1) {
      os << coord_str(unit_[0]);
    } else {
      os << "(";
      bool first = true;
      for (std::size_t i = 0; i < unit_.size(); ++i) {
        if (unit_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << unit_[i].get_str();
        if (i > 0) os << "*a" << (i > 1 ? "^" + std::to_string(i) : "");
      }
      os << ")";
      if (val_ != 0) os << "*" << p << "^" << val_;
    }
    os << " + O(" << p << "^" << prec_ << ")";
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Padic& a) { return os << a.to_string(); }

  /// Build and normalise p^v * sum coords[i] b^i known modulo p^prec.
  static Padic make(const PadicField* field, std::vector<mpz_class> coords, int v, int prec) {
    Padic r;
    r.field_ = field;
    prec = std::min(prec, field->cap());
    const int rel = prec - v;
    if (rel <= 0) return zero(field, prec);
    const mpz_class& mod = field->power(rel);
    const unsigned long p = static_cast<unsigned long>(field->prime());
    bool all_zero = true;
    bool has_unit = false;
    for (auto& c : coords) {
      mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
      if (c != 0) {
        all_zero = false;
        if (!mpz_divisible_ui_p(c.get_mpz_t(), p)) has_unit = true;
      }
    }
    if (all_zero) return zero(field, prec);
    if (!has_unit) {
      int s = rel;
      mpz_class t;
      for (const auto& c : coords) {
        if (c == 0) continue;
        t = c;
        int k = 0;
        while (k < s && mpz_divisible_ui_p(t.get_mpz_t(), p)) {
          mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
          ++k;
        }
        s = std::min(s, k);
      }
      const mpz_class& ps = field->power(s);
      for (auto& c : coords) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), ps.get_mpz_t());
      v += s;
    }
    r.unit_ = std::move(coords);
    r.val_ = v;
    r.prec_ = prec;
    return r;
  }

 private:
  static int remove_p(mpz_class& n, long p) {
    int k = 0;
    while (n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
      ++k;
    }
    return k;
  }

  void require_integral() const {
    if (!is_zero() && val_ < 0) throw DomainError("element has negative valuation");
  }

  static void check_compatible(const Padic& a, const Padic& b) {
    if (a.field_ == nullptr || b.field_ == nullptr) throw Error("operation on an uninitialised p-adic element");
    if (a.field_ != b.field_) throw Error("p-adic elements belong to different fields");
  }

  static Padic add(const Padic& a, const Padic& b, bool subtract) {
    check_compatible(a, b);
    const int prec = std::min(a.prec_, b.prec_);
    if (b.is_zero()) return a.with_precision(prec);
    if (a.is_zero()) return subtract ? (-b).with_precision(prec) : b.with_precision(prec);
    const int v = std::min(a.val_, b.val_);
    std::vector<mpz_class> c(a.unit_.size());
    const mpz_class& sa = a.field_->power(a.val_ - v);
    const mpz_class& sb = a.field_->power(b.val_ - v);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (subtract)
        c[i] = a.unit_[i] * sa - b.unit_[i] * sb;
      else
        c[i] = a.unit_[i] * sa + b.unit_[i] * sb;
    }
    return make(a.field_, std::move(c), v, prec);
  }

  // Product in Z[X]/(g), coefficients not reduced.
  static std::vector<mpz_class> mul_coords(const PadicField* field, const std::vector<mpz_class>& a,
                                           const std::vector<mpz_class>& b) {
    const int f = field->degree();
    if (f == 1) return {a[0] * b[0]};
    std::vector<mpz_class> prod(2 * f - 1, mpz_class(0));
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) prod[i + j] += a[i] * b[j];
    const auto& g = field->modulus();
    for (int d = 2 * f - 2; d >= f; --d) {
      if (prod[d] == 0) continue;
      const mpz_class c = prod[d];
      for (int j = 0; j <= f; ++j) prod[d - f + j] -= c * g[j];
    }
    prod.resize(f);
    return prod;
  }

  // Inverse of a unit modulo p^rel.
  static std::vector<mpz_class> inverse_unit(const PadicField* field, const std::vector<mpz_class>& u, int rel) {
    const long p = field->prime();
    const mpz_class& mod = field->power(rel);
    if (field->degree() == 1) {
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), u[0].get_mpz_t(), mod.get_mpz_t()) == 0)
        throw DomainError("element is not a unit");
      return {inv};
    }
    detail::FpPoly ured(u.size()), g(field->modulus().size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      mpz_class t;
      mpz_fdiv_r_ui(t.get_mpz_t(), u[i].get_mpz_t(), static_cast<unsigned long>(p));
      ured[i] = t.get_si();
    }
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = ((field->modulus()[i] % p) + p) % p;
    detail::fp_trim(ured);
    auto inv0 = detail::fp_invmod(ured, g, p);
    std::vector<mpz_class> y(field->degree(), mpz_class(0));
    for (std::size_t i = 0; i < inv0.size(); ++i) y[i] = inv0[i];
    // Newton: y <- y (2 - u y), doubling the number of correct digits.
    int have = 1;
    while (have < rel) {
      have = std::min(2 * have, rel);
      const mpz_class& m = field->power(have);
      auto uy = mul_coords(field, u, y);
      for (auto& c : uy) c = -c;
      uy[0] += 2;
      y = mul_coords(field, y, uy);
      for (auto& c : y) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
    for (auto& c : y) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    return y;
  }

  const PadicField* field_ = nullptr;
  std::vector<mpz_class> unit_;
  int val_ = 0;
  int prec_ = 0;
};

}  // namespace pahodge
