#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

namespace pahodge {

/// A p-adic valuation: a reduced fraction, or +infinity for zero.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr Valuation(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) { reduce(); }

  static constexpr Valuation infinite() {
    Valuation v;
    v.inf_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return inf_; }
  constexpr std::int64_t numerator() const { return num_; }
  constexpr std::int64_t denominator() const { return den_; }

  /// Largest integer not exceeding the valuation.
  constexpr std::int64_t floor() const {
    if (num_ >= 0) return num_ / den_;
    return -((-num_ + den_ - 1) / den_);
  }
  constexpr std::int64_t ceil() const { return -Valuation(-num_, den_).floor(); }

  friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.inf_ || b.inf_) {
      if (a.inf_ && b.inf_) return std::strong_ordering::equal;
      return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.inf_ || b.inf_) return infinite();
    return Valuation(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend constexpr Valuation operator-(const Valuation& a, const Valuation& b) {
    if (a.inf_) return infinite();
    return Valuation(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend constexpr Valuation operator*(std::int64_t k, const Valuation& a) {
    if (a.inf_) return infinite();
    return Valuation(k * a.num_, a.den_);
  }

  std::string to_string() const {
    if (inf_) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.to_string(); }

 private:
  constexpr void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  bool inf_ = false;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

/// v_p(k!) by Legendre's formula.
inline std::int64_t factorial_valuation(std::int64_t k, std::int64_t p) {
  std::int64_t v = 0;
  while (k > 0) {
    k /= p;
    v += k;
  }
  return v;
}

/// v_p(k) for k != 0.
inline std::int64_t integer_valuation(std::int64_t k, std::int64_t p) {
  if (k == 0) return INT64_MAX;
  if (k < 0) k = -k;
  std::int64_t v = 0;
  while (k % p == 0) {
    k /= p;
    ++v;
  }
  return v;
}

}  // namespace pahodge
