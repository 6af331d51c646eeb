#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace zloch::detail {

struct FractionOverflow : std::overflow_error {
  FractionOverflow() : std::overflow_error("64-bit fraction overflow") {}
};

// Exact fraction with 64-bit parts, normalized (gcd 1, positive
// denominator). Intermediates use 128 bits; results that do not fit throw
// FractionOverflow so the caller can redo the work with big rationals.
class Fraction {
 public:
  Fraction() = default;
  Fraction(long long n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Fraction(__int128 n, __int128 d) { assign(n, d); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    if (a.den_ == b.den_) return Fraction(static_cast<__int128>(a.num_) + b.num_, a.den_);
    return Fraction(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                    static_cast<__int128>(a.den_) * b.den_);
  }
  friend Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    if (a.num_ == 0 || b.num_ == 0) return Fraction();
    return Fraction(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Fraction operator/(const Fraction& a, const Fraction& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    return Fraction(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Fraction operator-() const {
    Fraction r;
    if (num_ == INT64_MIN) throw FractionOverflow();
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
  Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
  Fraction& operator*=(const Fraction& o) { return *this = *this * o; }
  Fraction& operator/=(const Fraction& o) { return *this = *this / o; }

  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
  friend bool operator>=(const Fraction& a, const Fraction& b) { return !(a < b); }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  void assign(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) n = -n, d = -d;
    const __int128 g = gcd128(n, d);
    if (g > 1) n /= g, d /= g;
    if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX) throw FractionOverflow();
    num_ = static_cast<long long>(n);
    den_ = static_cast<long long>(d);
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace zloch::detail
