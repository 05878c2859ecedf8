// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace cantor {

/// Exact rational scalar: always reduced, denominator strictly positive,
/// no rounding anywhere. Values whose reduced numerator and denominator fit
/// in 64 bits are kept inline; anything larger is promoted to GMP storage.
/// Every operation is exact regardless of representation.
class Rational {
  public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const mpq_class& q);

    // Accepts "p/q", "p", or a finite decimal such as "0.75" / "-1.5".
    static Rational parse(std::string_view text);

    int sign() const { return big_ ? mpq_sgn(big_->get_mpq_t()) : (num_ > 0) - (num_ < 0); }
    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_integer() const;
    bool is_big() const { return big_ != nullptr; }

    // Only meaningful when the value is inline; used by fast paths and tests.
    std::int64_t num_small() const { return num_; }
    std::int64_t den_small() const { return den_; }

    mpq_class to_mpq() const;
    double to_double() const;  // rendering only; everything else stays exact

    std::string str() const;             // canonical "p" or "p/q"
    std::string decimal(int digits) const;  // exact rounding, half away from zero

    Rational operator-() const;

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.num_ == 0) return b;
            if (b.num_ == 0) return a;
            return add_small(a, b);
        }
        return add_slow(a, b);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend int compare(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            const __int128 l = static_cast<__int128>(a.num_) * b.den_;
            const __int128 r = static_cast<__int128>(b.num_) * a.den_;
            return l < r ? -1 : (l > r ? 1 : 0);
        }
        return compare_slow(a, b);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        return compare_slow(a, b) == 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

  private:
    static Rational from_reduced128(__int128 n, __int128 d);
    static Rational add_small(const Rational& a, const Rational& b);
    static Rational add_slow(const Rational& a, const Rational& b);
    static int compare_slow(const Rational& a, const Rational& b);
    static Rational mul_slow(const Rational& a, const Rational& b);
    static Rational div_slow(const Rational& a, const Rational& b);
    static Rational from_mpq_canonical(mpq_class q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;  // engaged only when the value does not fit inline
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

/// max(x, 0), the scalar clamp used between network layers.
inline Rational clamp_at_zero(const Rational& x) { return x.sign() > 0 ? x : Rational(0); }

/// Exact integer power of a rational (exp may be negative if base != 0).
Rational pow(const Rational& base, int exp);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace cantor
