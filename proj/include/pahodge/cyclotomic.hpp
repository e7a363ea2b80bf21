#pragma once

// K_m = Q_p(zeta_{p^m}) in the power basis 1, z, ..., z^{d-1}, z = zeta_{p^m},
// d = p^{m-1}(p-1), with the action of Z_p^x through the cyclotomic character.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "padic.hpp"

namespace pahodge {

class CycloElement {
 public:
  CycloElement() = default;

  /// [K_m : Q_p].
  static long degree(long p, int m) {
    if (m == 0) return 1;
    long d = p - 1;
    for (int i = 1; i < m; ++i) d *= p;
    return d;
  }
  static long order(long p, int m) {
    long q = 1;
    for (int i = 0; i < m; ++i) q *= p;
    return q;
  }

  static CycloElement zero(const PadicField* field, int m) {
    check_field(field);
    CycloElement r;
    r.field_ = field;
    r.level_ = m;
    r.c_.assign(degree(field->prime(), m), Padic::zero(field));
    return r;
  }
  static CycloElement from_padic(const Padic& a, int m) {
    CycloElement r = zero(a.field(), m);
    r.c_[0] = a;
    return r;
  }
  static CycloElement from_int(const PadicField* field, long n, int m) {
    return from_padic(Padic::from_int(field, n), m);
  }
  /// zeta_{p^m}^k.
  static CycloElement zeta(const PadicField* field, int m, long k = 1) {
    check_field(field);
    const long q = order(field->prime(), m);
    std::vector<Padic> full(q, Padic::zero(field));
    full[((k % q) + q) % q] = Padic::from_int(field, 1L);
    return reduce(field, m, std::move(full));
  }
  /// sum coords[i] zeta^i; coords may be longer than the degree.
  static CycloElement from_coords(const PadicField* field, int m, const std::vector<Padic>& coords) {
    check_field(field);
    const long q = order(field->prime(), m);
    std::vector<Padic> full(q, Padic::zero(field));
    for (std::size_t i = 0; i < coords.size(); ++i) full[i % q] += coords[i];
    return reduce(field, m, std::move(full));
  }

  const PadicField* field() const { return field_; }
  long prime() const { return field_->prime(); }
  int level() const { return level_; }
  const std::vector<Padic>& coords() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Padic& a) { return a.is_zero(); });
  }
  int precision() const {
    int r = field_->cap();
    for (const auto& a : c_) r = std::min(r, a.precision());
    return r;
  }

  CycloElement zero_like() const { return zero(field_, level_); }
  CycloElement one_like() const { return from_int(field_, 1, level_); }
  CycloElement from_int_like(long n) const { return from_int(field_, n, level_); }

  /// Normalised valuation (v(p) = 1), read off the (zeta - 1)-adic expansion.
  Valuation valuation() const {
    if (level_ == 0) return c_[0].valuation();
    const long d = static_cast<long>(c_.size());
    const auto b = zeta_minus_one_coords();
    Valuation best = Valuation::infinite();
    for (long j = 0; j < d; ++j) {
      if (b[j].is_zero()) continue;
      best = min(best, b[j].valuation() + Valuation(j, d));
    }
    return best;
  }

  /// Coordinates in the basis (zeta - 1)^j.
  std::vector<Padic> zeta_minus_one_coords() const {
    const std::size_t d = c_.size();
    std::vector<Padic> b(d, Padic::zero(field_));
    // a(X) = sum a_i X^i, b_j = sum_{i>=j} binom(i, j) a_i.
    std::vector<mpz_class> binom(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
      if (c_[i].is_zero() && exact_zero(c_[i])) continue;
      mpz_class bin = 1;
      for (std::size_t j = 0; j <= i; ++j) {
        b[j] += c_[i].mul_int(bin);
        bin = bin * static_cast<long>(i - j) / static_cast<long>(j + 1);
      }
    }
    return b;
  }

  /// Smallest n such that the element lies in K_n: every zeta-index with a
  /// nonzero coefficient is divisible by p^{m-n}.
  int analytic_level() const {
    int n = 0;
    for (std::size_t i = 1; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      n = std::max(n, level_ - static_cast<int>(integer_valuation(static_cast<long>(i), prime())));
    }
    return n;
  }

  /// The same element at a higher level, via zeta_{p^m} = zeta_{p^{m'}}^{p^{m'-m}}.
  CycloElement embed(int m2) const {
    if (m2 < level_) throw DomainError("embed_level: target level is below the current level");
    if (m2 == level_) return *this;
    CycloElement r = zero(field_, m2);
    const long step = order(prime(), m2 - level_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * step] = c_[i];
    return r;
  }

  /// The same element at a lower level n >= analytic_level().
  CycloElement descend(int n) const {
    if (n > level_) return embed(n);
    if (analytic_level() > n) throw DomainError("descend: element does not lie in the requested subfield");
    CycloElement r = zero(field_, n);
    const long step = order(prime(), level_ - n);
    for (std::size_t j = 0; j < r.c_.size(); ++j) r.c_[j] = c_[j * step];
    return r;
  }

  friend CycloElement operator+(const CycloElement& a, const CycloElement& b) {
    if (a.level_ != b.level_) return unify(a, b, [](const auto& x, const auto& y) { return x + y; });
    CycloElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend CycloElement operator-(const CycloElement& a, const CycloElement& b) {
    if (a.level_ != b.level_) return unify(a, b, [](const auto& x, const auto& y) { return x - y; });
    CycloElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  CycloElement operator-() const {
    CycloElement r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend CycloElement operator*(const CycloElement& a, const CycloElement& b) {
    if (a.level_ != b.level_) return unify(a, b, [](const auto& x, const auto& y) { return x * y; });
    if (a.level_ == 0) return from_padic(a.c_[0] * b.c_[0], 0);
    const long q = order(a.prime(), a.level_);
    std::vector<Padic> full(q, Padic::zero(a.field_));
    const std::size_t d = a.c_.size();
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i].is_zero() && exact_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.c_[j].is_zero() && exact_zero(b.c_[j])) continue;
        std::size_t k = i + j;
        if (k >= static_cast<std::size_t>(q)) k -= q;
        full[k] += a.c_[i] * b.c_[j];
      }
    }
    return reduce(a.field_, a.level_, std::move(full));
  }
  friend CycloElement operator/(const CycloElement& a, const CycloElement& b) { return a * b.inverse(); }
  CycloElement& operator+=(const CycloElement& o) {
    if (level_ != o.level_) return *this = *this + o;
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CycloElement& operator-=(const CycloElement& o) { return *this = *this - o; }
  CycloElement& operator*=(const CycloElement& o) { return *this = *this * o; }

  /// Multiplication by a scalar of Q_p.
  CycloElement scaled(const Padic& s) const {
    CycloElement r = *this;
    for (auto& x : r.c_) x = s * x;
    return r;
  }
  CycloElement mul_int(const mpz_class& k) const {
    if (k == 0) return zero_like();
    CycloElement r = *this;
    const auto [rest, e] = Padic::split_int(k, prime());
    r.mul_split_in_place(rest, e);
    return r;
  }
  void mul_split_in_place(const mpz_class& rest, int e) {
    for (auto& x : c_) x.mul_split_in_place(rest, e);
  }
  CycloElement mul_int(long k) const { return mul_int(mpz_class(k)); }
  CycloElement div_int(const mpz_class& k) const {
    CycloElement r = *this;
    for (auto& x : r.c_) x = x.div_int(k);
    return r;
  }
  CycloElement div_int(long k) const { return div_int(mpz_class(k)); }
  CycloElement in_field(const PadicField* other) const {
    CycloElement r = *this;
    r.field_ = other;
    for (auto& x : r.c_) x = x.in_field(other);
    return r;
  }
  CycloElement with_precision(int prec) const {
    CycloElement r = *this;
    for (auto& x : r.c_) x = x.with_precision(prec);
    return r;
  }

  /// zeta -> zeta^c for a unit c of Z_p; only c mod p^m matters.
  CycloElement chi_action(const Padic& c) const {
    if (level_ == 0) return *this;
    if (c.is_zero() || c.ord() != 0) throw DomainError("chi_action: c must be a unit of Z_p");
    if (c.precision() < level_) throw PrecisionError("chi_action: c is not known modulo p^m");
    const long q = order(prime(), level_);
    mpz_class rr;
    mpz_fdiv_r_ui(rr.get_mpz_t(), c.lift().get_mpz_t(), static_cast<unsigned long>(q));
    const long r = rr.get_si();
    std::vector<Padic> full(q, Padic::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) full[(static_cast<long>(i) * r) % q] = c_[i];
    return reduce(field_, level_, std::move(full));
  }

  /// Product of all Galois conjugates, an element of Q_p.
  Padic norm() const {
    if (level_ == 0) return c_[0];
    const auto prod = conjugate_product();
    return (*this * prod).c_[0];
  }

  CycloElement inverse() const {
    if (is_zero()) throw PrecisionError("division by an element indistinguishable from 0");
    if (level_ == 0) return from_padic(c_[0].inverse(), 0);
    const CycloElement prod = conjugate_product();
    const CycloElement n = *this * prod;
    return prod.scaled(n.c_[0].inverse());
  }

  friend bool operator==(const CycloElement& a, const CycloElement& b) { return (a - b).is_zero(); }

  std::string to_string() const {
    if (level_ == 0) return c_[0].to_string();
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[i].to_string() << ")";
      if (i > 0) os << "*z" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    if (first) os << "O(" << prime() << "^" << precision() << ")";
    return os.str();
  }

 private:
  static void check_field(const PadicField* field) {
    if (field->degree() != 1) throw DomainError("cyclotomic tower is built over Q_p");
  }

  static bool exact_zero(const Padic& x) { return x.precision() >= x.field()->cap(); }

  template <class Op>
  static CycloElement unify(const CycloElement& a, const CycloElement& b, Op op) {
    const int m = std::max(a.level_, b.level_);
    return op(a.embed(m), b.embed(m));
  }

  // Fold exponents modulo p^m and reduce modulo Phi_{p^m}(X) = sum_{k<p} X^{k p^{m-1}}.
  static CycloElement reduce(const PadicField* field, int m, std::vector<Padic> full) {
    CycloElement r;
    r.field_ = field;
    r.level_ = m;
    const long p = field->prime();
    const long d = degree(p, m);
    if (m == 0) {
      Padic s = Padic::zero(field);
      for (auto& x : full) s += x;
      r.c_ = {s};
      return r;
    }
    const long step = order(p, m - 1);
    for (long j = d; j < static_cast<long>(full.size()); ++j) {
      if (full[j].is_zero() && exact_zero(full[j])) continue;
      const long rem = j - d;
      for (long k = 0; k + 1 < p; ++k) full[k * step + rem] -= full[j];
    }
    full.resize(d);
    r.c_ = std::move(full);
    return r;
  }

  CycloElement conjugate_product() const {
    const long q = order(prime(), level_);
    CycloElement prod = one_like();
    for (long r = 2; r < q; ++r) {
      if (r % prime() == 0) continue;
      prod *= chi_action(Padic::from_int(field_, r));
    }
    return prod;
  }

  const PadicField* field_ = nullptr;
  int level_ = 0;
  std::vector<Padic> c_;
};

inline CycloElement embed_level(const CycloElement& a, int m) { return a.embed(m); }
inline CycloElement chi_action(const Padic& c, const CycloElement& a) { return a.chi_action(c); }

}  // namespace pahodge
