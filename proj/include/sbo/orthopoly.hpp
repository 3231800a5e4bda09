#pragma once

#include <vector>

#include "sbo/rational.hpp"

namespace sbo {

/// Univariate polynomial with exact rational coefficients, stored dense
/// low-to-high with trailing zeros trimmed. degree() of the zero
/// polynomial is the sentinel -1.
class PolyRat {
public:
    PolyRat() = default;
    explicit PolyRat(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static PolyRat constant(const Rat& v) { return PolyRat(std::vector<Rat>{v}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coefficients() const { return c_; }
    Rat coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
    bool is_zero() const { return c_.empty(); }

    Rat eval(const Rat& z) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }
    double eval(double z) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_double();
        return acc;
    }

    friend PolyRat operator+(const PolyRat& a, const PolyRat& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return PolyRat(std::move(c));
    }
    friend PolyRat operator-(const PolyRat& a, const PolyRat& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return PolyRat(std::move(c));
    }
    friend PolyRat operator*(const PolyRat& a, const PolyRat& b) {
        if (a.is_zero() || b.is_zero()) return PolyRat();
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return PolyRat(std::move(c));
    }
    friend PolyRat operator*(const Rat& s, const PolyRat& a) {
        std::vector<Rat> c = a.c_;
        for (auto& x : c) x *= s;
        return PolyRat(std::move(c));
    }
    friend bool operator==(const PolyRat& a, const PolyRat& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rat> c_;
};

/// Binomial coefficient with rational upper argument, as a Pochhammer
/// quotient: binom(x, k) = (x-k+1)_k / k!.
inline Rat binomial(const Rat& x, unsigned k) {
    return pochhammer(x - Rat(static_cast<long>(k)) + Rat(1), k) / factorial(k);
}

/// Gegenbauer polynomial C_m^lambda from its finite series,
///   C_m^lambda(z) = sum_j (-1)^j (lambda)_{m-j} / (j! (m-2j)!) (2z)^{m-2j};
/// only monomials of the parity of m appear.
inline PolyRat gegenbauer(unsigned m, const Rat& lambda) {
    std::vector<Rat> c(m + 1, Rat(0));
    for (unsigned j = 0; 2 * j <= m; ++j) {
        unsigned d = m - 2 * j;
        Rat term = pochhammer(lambda, m - j) / (factorial(j) * factorial(d));
        if (j % 2 == 1) term = -term;
        c[d] = term * pow_int(Rat(2), d);
    }
    return PolyRat(std::move(c));
}

/// Jacobi polynomial P_m^(a,b) from its finite series,
///   P_m^(a,b)(z) = 2^-m sum_s binom(m+a, s) binom(m+b, m-s) (z-1)^{m-s} (z+1)^s.
inline PolyRat jacobi(unsigned m, const Rat& a, const Rat& b) {
    PolyRat zm1(std::vector<Rat>{Rat(-1), Rat(1)});
    PolyRat zp1(std::vector<Rat>{Rat(1), Rat(1)});
    std::vector<PolyRat> pow_m1(m + 1), pow_p1(m + 1);
    pow_m1[0] = PolyRat::constant(Rat(1));
    pow_p1[0] = PolyRat::constant(Rat(1));
    for (unsigned i = 1; i <= m; ++i) {
        pow_m1[i] = pow_m1[i - 1] * zm1;
        pow_p1[i] = pow_p1[i - 1] * zp1;
    }
    PolyRat sum;
    for (unsigned s = 0; s <= m; ++s) {
        Rat coeff = binomial(Rat(static_cast<long>(m)) + a, s) *
                    binomial(Rat(static_cast<long>(m)) + b, m - s);
        sum = sum + coeff * (pow_m1[m - s] * pow_p1[s]);
    }
    return (Rat(1) / pow_int(Rat(2), m)) * sum;
}

} // namespace sbo
