#pragma once

#include <map>
#include <vector>

#include "sbo/rational.hpp"

namespace sbo {

/// Exact multivariate polynomial over Rat. Terms are kept in a map from
/// exponent vector to coefficient; zero coefficients are never stored.
class MPoly {
public:
    using Expo = std::vector<int>;

    MPoly() : nvars_(0) {}
    explicit MPoly(int nvars) : nvars_(nvars) {}

    static MPoly constant(int nvars, const Rat& v) {
        MPoly p(nvars);
        if (!v.is_zero()) p.terms_[Expo(nvars, 0)] = v;
        return p;
    }
    static MPoly variable(int nvars, int i, unsigned power = 1) {
        MPoly p(nvars);
        Expo e(nvars, 0);
        e[i] = static_cast<int>(power);
        p.terms_[e] = Rat(1);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Expo, Rat>& terms() const { return terms_; }

    int total_degree() const {
        int d = -1;
        for (auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            if (s > d) d = s;
        }
        return d;
    }
    bool is_homogeneous() const {
        int d = -1;
        for (auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            if (d < 0) d = s;
            else if (s != d) return false;
        }
        return true;
    }

    void add_term(const Expo& e, const Rat& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(a.nvars_);
        Expo e(a.nvars_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MPoly operator*(const Rat& s, const MPoly& a) {
        MPoly r(a.nvars_);
        if (s.is_zero()) return r;
        for (auto& [e, c] : a.terms_) r.terms_[e] = s * c;
        return r;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    MPoly derivative(int var) const {
        MPoly r(nvars_);
        for (auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Expo d = e;
            d[var] -= 1;
            r.add_term(d, Rat(e[var]) * c);
        }
        return r;
    }

    /// Substitute 0 for a variable (terms carrying it vanish); the variable
    /// slot is removed, so the result lives in nvars-1 variables.
    MPoly set_zero_and_drop(int var) const {
        MPoly r(nvars_ - 1);
        for (auto& [e, c] : terms_) {
            if (e[var] != 0) continue;
            Expo d;
            d.reserve(nvars_ - 1);
            for (int i = 0; i < nvars_; ++i)
                if (i != var) d.push_back(e[i]);
            r.add_term(d, c);
        }
        return r;
    }

    /// Reinterpret in a larger variable set; existing variables keep their
    /// indices, new ones are appended with exponent 0.
    MPoly extended(int new_nvars) const {
        MPoly r(new_nvars);
        for (auto& [e, c] : terms_) {
            Expo d = e;
            d.resize(new_nvars, 0);
            r.terms_[d] = c;
        }
        return r;
    }

    template <typename S>
    S eval(const std::vector<S>& x) const {
        S acc = S(0);
        for (auto& [e, c] : terms_) {
            S t = S(c.to_double());
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    Rat eval_exact(const std::vector<Rat>& x) const {
        Rat acc(0);
        for (auto& [e, c] : terms_) {
            Rat t = c;
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

private:
    int nvars_;
    std::map<Expo, Rat> terms_;
};

/// Laplacian sum_i d^2/dx_i^2 over the listed variables.
inline MPoly laplacian(const MPoly& p, const std::vector<int>& vars) {
    MPoly r(p.nvars());
    for (int v : vars) r = r + p.derivative(v).derivative(v);
    return r;
}

/// Mixed Wirtinger Laplacian sum_j d/dz_j d/dzbar_j for the paired
/// variable lists (same length).
inline MPoly laplacian_pairs(const MPoly& p, const std::vector<int>& zvars,
                             const std::vector<int>& zbvars) {
    MPoly r(p.nvars());
    for (std::size_t j = 0; j < zvars.size(); ++j)
        r = r + p.derivative(zvars[j]).derivative(zbvars[j]);
    return r;
}

} // namespace sbo
