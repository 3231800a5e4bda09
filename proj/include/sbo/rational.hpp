#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "sbo/errors.hpp"

namespace sbo {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. The exact scalar type used everywhere a relation
/// coefficient, spectral value or nullspace entry lives.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(int v) : q_(v) {}
    Rat(long v) : q_(static_cast<signed long>(v)) {}
    Rat(long num, long den) {
        if (den == 0) throw PoleError("Rat: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rat(const mpz_class& z) : q_(z) {}
    Rat(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw PoleError("Rat: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "p/q" or "p", with optional leading minus.
    static Rat parse(const std::string& s) {
        if (s.empty()) throw ParameterError("Rat::parse: empty string");
        auto bad = [&] { throw ParameterError("Rat::parse: malformed rational '" + s + "'"); };
        auto slash = s.find('/');
        std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
        std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
        auto check_int = [&](const std::string& t, bool sign_ok) {
            if (t.empty()) bad();
            std::size_t i = (sign_ok && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
            if (i == t.size()) bad();
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') bad();
        };
        check_int(ns, true);
        check_int(ds, false);
        mpz_class num(ns), den(ds);
        if (den == 0) throw PoleError("Rat::parse: zero denominator in '" + s + "'");
        return Rat(num, den);
    }

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const {
        std::string s = q_.get_num().get_str();
        if (q_.get_den() != 1) s += "/" + q_.get_den().get_str();
        return s;
    }

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    /// True iff the value is an integer in [INT64_MIN, INT64_MAX].
    bool fits_long() const { return is_integer() && q_.get_num().fits_slong_p(); }
    long to_long() const {
        if (!fits_long()) throw ParameterError("Rat::to_long: not a small integer: " + str());
        return q_.get_num().get_si();
    }

    double to_double() const { return q_.get_d(); }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw PoleError("Rat: division by zero");
        return Rat(mpq_class(a.q_ / b.q_));
    }
    Rat operator-() const { return Rat(mpq_class(-q_)); }

    Rat& operator+=(const Rat& b) { q_ += b.q_; return *this; }
    Rat& operator-=(const Rat& b) { q_ -= b.q_; return *this; }
    Rat& operator*=(const Rat& b) { q_ *= b.q_; return *this; }
    Rat& operator/=(const Rat& b) {
        if (b.is_zero()) throw PoleError("Rat: division by zero");
        q_ /= b.q_;
        return *this;
    }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class q_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

inline Rat pow_int(const Rat& base, unsigned e) {
    Rat r(1);
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

/// Rising factorial (x)_k = x(x+1)...(x+k-1); empty product for k = 0.
inline Rat pochhammer(const Rat& x, unsigned k) {
    Rat r(1);
    Rat f = x;
    for (unsigned i = 0; i < k; ++i) {
        r *= f;
        f += Rat(1);
    }
    return r;
}

inline Rat factorial(unsigned k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return Rat(f);
}

/// Exact Gamma(a+m)/Gamma(a) for integer shift m. Equals pochhammer(a, m)
/// for m >= 0 and 1/pochhammer(a+m, -m) for m < 0, with the gamma-quotient
/// reading: a ratio whose numerator gamma sits on a pole that the
/// denominator cannot absorb is flagged rather than given a limit value.
inline Rat gamma_ratio_shift(const Rat& a, long m) {
    if (m >= 0) {
        // Gamma(a+m) singular (and then Gamma(a) too) iff a is an integer <= -m.
        if (a.is_integer() && a.num() + m <= 0)
            throw PoleError("gamma_ratio_shift: gamma pole on the shift path at a=" + a.str() +
                            ", m=" + std::to_string(m));
        return pochhammer(a, static_cast<unsigned>(m));
    }
    Rat denom = pochhammer(a + Rat(m), static_cast<unsigned>(-m));
    if (denom.is_zero())
        throw PoleError("gamma_ratio_shift: zero factor in denominator at a=" + a.str() +
                        ", m=" + std::to_string(m));
    return Rat(1) / denom;
}

/// lim_{eps->0} Gamma(a0 + ca*eps) / Gamma(b0 + cb*eps) for simple poles at
/// non-positive integers a0, b0: (-1)^(a0-b0) * (-b0)! / (-a0)! * (cb/ca).
inline Rat gamma_ratio_limit(const Rat& a0, const Rat& ca, const Rat& b0, const Rat& cb) {
    if (ca.is_zero() || cb.is_zero())
        throw ParameterError("gamma_ratio_limit: approach slopes must be nonzero");
    bool pa = a0.is_integer() && a0.sign() <= 0;
    bool pb = b0.is_integer() && b0.sign() <= 0;
    if (!pa || !pb)
        throw NotBothPoles("gamma_ratio_limit: arguments " + a0.str() + ", " + b0.str() +
                           " are not both non-positive integers");
    long ia = -a0.to_long();
    long ib = -b0.to_long();
    Rat sign = ((ia - ib) % 2 == 0) ? Rat(1) : Rat(-1);
    return sign * factorial(static_cast<unsigned>(ib)) / factorial(static_cast<unsigned>(ia)) *
           (cb / ca);
}

} // namespace sbo
