// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cantornet/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace cantor {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u128 abs128(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

int ctz128(u128 v) {
    const auto lo = static_cast<unsigned long long>(v);
    if (lo != 0) return __builtin_ctzll(lo);
    return 64 + __builtin_ctzll(static_cast<unsigned long long>(v >> 64));
}

u128 gcd128(u128 a, u128 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    const int k = ctz128(a | b);
    a >>= ctz128(a);
    while (b != 0) {
        b >>= ctz128(b);
        if (a > b) std::swap(a, b);
        b -= a;
    }
    return a << k;
}

constexpr i128 kI64Min = std::numeric_limits<std::int64_t>::min();
constexpr i128 kI64Max = std::numeric_limits<std::int64_t>::max();

bool fits64(i128 n, i128 d) { return n >= kI64Min && n <= kI64Max && d <= kI64Max; }

mpz_class mpz_from_i128(i128 v) {
    const bool neg = v < 0;
    u128 mag = abs128(v);
    mpz_class hi(static_cast<unsigned long>(mag >> 64));
    mpz_class result = (hi << 64) + mpz_class(static_cast<unsigned long>(mag & 0xffffffffffffffffULL));
    return neg ? mpz_class(-result) : result;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    *this = from_reduced128(num, den);
}

Rational::Rational(const mpq_class& q) { *this = from_mpq_canonical(q); }

Rational Rational::from_reduced128(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    if (n == 0) return Rational();
    const u128 g = gcd128(abs128(n), static_cast<u128>(d));
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
    if (fits64(n, d)) {
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    mpq_class q;
    q.get_num() = mpz_from_i128(n);
    q.get_den() = mpz_from_i128(d);
    Rational r;
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

Rational Rational::from_mpq_canonical(mpq_class q) {
    mpq_canonicalize(q.get_mpq_t());
    if (mpz_fits_slong_p(q.get_num().get_mpz_t()) && mpz_fits_slong_p(q.get_den().get_mpz_t())) {
        Rational r;
        r.num_ = mpz_get_si(q.get_num().get_mpz_t());
        r.den_ = mpz_get_si(q.get_den().get_mpz_t());
        return r;
    }
    Rational r;
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    q.get_num() = mpz_class(static_cast<signed long>(num_));
    q.get_den() = mpz_class(static_cast<signed long>(den_));
    return q;  // already canonical
}

namespace {

std::uint64_t umag64(std::int64_t v) {
    return v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

// Knuth 4.5.1: with reduced operands and d1 = gcd(den, den'), the combination
// below is already in lowest terms, so no 128-bit gcd is needed.
Rational Rational::add_small(const Rational& a, const Rational& b) {
    const std::uint64_t d1 =
        gcd64(static_cast<std::uint64_t>(a.den_), static_cast<std::uint64_t>(b.den_));
    if (d1 == 1) {
        const i128 n =
            static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
        const i128 d = static_cast<i128>(a.den_) * b.den_;
        if (fits64(n, d)) {
            Rational r;
            r.num_ = static_cast<std::int64_t>(n);
            r.den_ = static_cast<std::int64_t>(d);
            return r;
        }
        return from_reduced128(n, d);
    }
    const std::int64_t ad = a.den_ / static_cast<std::int64_t>(d1);
    const std::int64_t bd = b.den_ / static_cast<std::int64_t>(d1);
    const i128 t = static_cast<i128>(a.num_) * bd + static_cast<i128>(b.num_) * ad;
    if (t == 0) return Rational();
    const std::uint64_t tm = static_cast<std::uint64_t>(abs128(t) % d1);
    const std::uint64_t d2 = tm == 0 ? d1 : gcd64(tm, d1);
    const i128 n = t / static_cast<i128>(d2);
    const i128 d = static_cast<i128>(ad) * (b.den_ / static_cast<std::int64_t>(d2));
    if (fits64(n, d)) {
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    return from_reduced128(n, d);
}

Rational Rational::add_slow(const Rational& a, const Rational& b) {
    return from_mpq_canonical(a.to_mpq() + b.to_mpq());
}

int Rational::compare_slow(const Rational& a, const Rational& b) {
    const mpq_class qa = a.to_mpq();
    const mpq_class qb = b.to_mpq();
    return mpq_cmp(qa.get_mpq_t(), qb.get_mpq_t());
}

Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.num_ == 0 || b.num_ == 0) return Rational();
        // Cross-reduce before multiplying so the result is already canonical.
        const auto g1 = static_cast<std::int64_t>(
            gcd64(umag64(a.num_), static_cast<std::uint64_t>(b.den_)));
        const auto g2 = static_cast<std::int64_t>(
            gcd64(umag64(b.num_), static_cast<std::uint64_t>(a.den_)));
        const i128 n = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
        const i128 d = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
        if (fits64(n, d)) {
            Rational r;
            r.num_ = static_cast<std::int64_t>(n);
            r.den_ = static_cast<std::int64_t>(d);
            return r;
        }
        return Rational::from_reduced128(n, d);
    }
    return Rational::mul_slow(a, b);
}

Rational Rational::mul_slow(const Rational& a, const Rational& b) {
    return from_mpq_canonical(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero() && !b.big_) throw std::domain_error("Rational: division by zero");
    if (!a.big_ && !b.big_) {
        Rational inv;
        if (b.num_ < 0) {
            // careful with INT64_MIN: route through 128-bit normalization
            return Rational::from_reduced128(static_cast<i128>(a.num_) * b.den_,
                                             static_cast<i128>(a.den_) * b.num_);
        }
        inv.num_ = b.den_;
        inv.den_ = b.num_;
        return a * inv;
    }
    return Rational::div_slow(a, b);
}

Rational Rational::div_slow(const Rational& a, const Rational& b) {
    const mpq_class qb = b.to_mpq();
    if (mpq_sgn(qb.get_mpq_t()) == 0) throw std::domain_error("Rational: division by zero");
    return from_mpq_canonical(a.to_mpq() / qb);
}

Rational Rational::operator-() const {
    if (!big_) {
        if (num_ == kI64Min) return from_reduced128(-static_cast<i128>(num_), den_);
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    return from_mpq_canonical(mpq_class(-*big_));
}

bool Rational::is_integer() const {
    if (!big_) return den_ == 1;
    return big_->get_den() == 1;
}

Rational Rational::parse(std::string_view text) {
    const auto fail = [&]() {
        throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    };
    if (text.empty()) fail();
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        const std::string_view ns = text.substr(0, slash);
        const std::string_view ds = text.substr(slash + 1);
        if (ns.empty() || ds.empty() || ds.find('/') != std::string_view::npos) fail();
        mpz_class n, d;
        if (n.set_str(std::string(ns), 10) != 0) fail();
        if (d.set_str(std::string(ds), 10) != 0) fail();
        if (d == 0) throw std::invalid_argument("Rational: zero denominator in '" + std::string(text) + "'");
        mpq_class q;
        q.get_num() = n;
        q.get_den() = d;
        return from_mpq_canonical(std::move(q));
    }
    const auto dot = text.find('.');
    if (dot != std::string_view::npos) {
        std::string_view ip = text.substr(0, dot);
        std::string_view fp = text.substr(dot + 1);
        if (fp.find('.') != std::string_view::npos) fail();
        bool neg = false;
        if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) {
            neg = ip[0] == '-';
            ip = ip.substr(1);
        }
        if (ip.empty() && fp.empty()) fail();
        mpz_class n = 0;
        for (const char c : ip) {
            if (c < '0' || c > '9') fail();
            n = n * 10 + (c - '0');
        }
        mpz_class d = 1;
        for (const char c : fp) {
            if (c < '0' || c > '9') fail();
            n = n * 10 + (c - '0');
            d *= 10;
        }
        mpq_class q;
        q.get_num() = neg ? mpz_class(-n) : n;
        q.get_den() = d;
        return from_mpq_canonical(std::move(q));
    }
    mpz_class n;
    if (n.set_str(std::string(text), 10) != 0) fail();
    mpq_class q(n);
    return from_mpq_canonical(std::move(q));
}

std::string Rational::str() const {
    if (big_) {
        if (big_->get_den() == 1) return big_->get_num().get_str();
        return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal(int digits) const {
    if (digits < 0) throw std::invalid_argument("Rational: negative digit count");
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const mpq_class q = to_mpq();
    mpz_class num = q.get_num() * scale * 2;
    const mpz_class den = q.get_den() * 2;
    const bool neg = num < 0;
    if (neg) num = -num;
    // round half away from zero
    mpz_class scaled = (num + q.get_den()) / den;
    mpz_class ip = scaled / scale;
    mpz_class fp = scaled % scale;
    std::string out = neg && (ip != 0 || fp != 0) ? "-" : "";
    out += ip.get_str();
    if (digits > 0) {
        std::string frac = fp.get_str();
        out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
    }
    return out;
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational pow(const Rational& base, int exp) {
    if (exp == 0) return Rational(1);
    if (exp < 0) {
        if (base.is_zero()) throw std::domain_error("Rational: 0 to a negative power");
        return Rational(1) / pow(base, -exp);
    }
    Rational acc(1);
    Rational b = base;
    int e = exp;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace cantor
