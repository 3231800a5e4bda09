#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sbo/errors.hpp"
#include "sbo/gamma.hpp"
#include "sbo/multipoly.hpp"
#include "sbo/orthopoly.hpp"

namespace sbo {

/// A concrete harmonic vector: the homogeneous harmonic polynomial
/// realizing one branch of the recursive decomposition of spherical
/// harmonics, together with the branch labels that address it.
///
/// Real case: ambient dimension n, polynomial in variables x_0..x_{n-1};
/// the distinguished polar coordinate is the last one. Complex case:
/// complex dimension n, polynomial in 2n variables z_0..z_{n-1},
/// zb_0..zb_{n-1} (conjugates in the upper block).
struct HarmonicElement {
    bool complex_case = false;
    int n = 0;
    int degree = 0;        // real degree
    int deg_hol = 0;       // complex bidegree
    int deg_ahol = 0;
    std::vector<std::string> branch_path;
    MPoly poly;

    bool is_zero() const { return poly.is_zero(); }

    std::string path_string() const {
        std::string s;
        for (std::size_t i = 0; i < branch_path.size(); ++i) {
            if (i) s += "/";
            s += branch_path[i];
        }
        return s;
    }

    double eval(const std::vector<double>& x) const { return poly.eval<double>(x); }

    std::complex<double> eval(const std::vector<std::complex<double>>& z) const {
        std::vector<std::complex<double>> args(2 * n);
        for (int i = 0; i < n; ++i) {
            args[i] = z[i];
            args[n + i] = std::conj(z[i]);
        }
        return poly.eval<std::complex<double>>(args);
    }
};

namespace detail {

inline MPoly norm_sq_real(int nvars) {
    MPoly r(nvars);
    for (int i = 0; i < nvars; ++i) r = r + MPoly::variable(nvars, i) * MPoly::variable(nvars, i);
    return r;
}

// |z|^2 = sum z_i zb_i in the 2n-variable complex layout.
inline MPoly norm_sq_complex(int n) {
    MPoly r(2 * n);
    for (int i = 0; i < n; ++i)
        r = r + MPoly::variable(2 * n, i) * MPoly::variable(2 * n, n + i);
    return r;
}

// Reindex a polynomial in complex layout, dimension m, into dimension n >= m.
inline MPoly extend_complex(const MPoly& p, int m, int n) {
    MPoly r(2 * n);
    for (auto& [e, c] : p.terms()) {
        MPoly::Expo d(2 * n, 0);
        for (int i = 0; i < m; ++i) {
            d[i] = e[i];
            d[n + i] = e[m + i];
        }
        r.add_term(d, c);
    }
    return r;
}

} // namespace detail

/// Real branching embedding: phi of degree a' on R^{n-1} goes to degree
/// alpha on R^n as phi(x') C_{alpha-a'}^{a'+(n-2)/2}(x_n), homogenized by
/// inserting |x|^2 to make each Gegenbauer monomial degree alpha - a'.
inline HarmonicElement embed_real(const HarmonicElement& phi, int alpha) {
    if (phi.complex_case) throw ParameterError("embed_real: complex-case element");
    if (alpha < phi.degree)
        throw DegreeError("embed_real: target degree " + std::to_string(alpha) +
                          " below source degree " + std::to_string(phi.degree));
    int n = phi.n + 1;
    int k = alpha - phi.degree;
    Rat lambda = Rat(phi.degree) + Rat(n - 2, 2);
    PolyRat geg = gegenbauer(static_cast<unsigned>(k), lambda);

    MPoly phi_ext = phi.poly.extended(n);
    MPoly rsq = detail::norm_sq_real(n);
    MPoly rsq_pow = MPoly::constant(n, Rat(1));
    // Walk d = k, k-2, ..., multiplying in |x|^2 per step down.
    MPoly factor(n);
    for (int d = k; d >= 0; d -= 2) {
        Rat c = geg.coefficient(static_cast<std::size_t>(d));
        if (!c.is_zero()) factor = factor + c * (MPoly::variable(n, n - 1, d) * rsq_pow);
        rsq_pow = rsq_pow * rsq;
    }

    HarmonicElement out;
    out.complex_case = false;
    out.n = n;
    out.degree = alpha;
    out.branch_path.push_back(std::to_string(phi.degree));
    out.branch_path.insert(out.branch_path.end(), phi.branch_path.begin(), phi.branch_path.end());
    out.poly = phi_ext * factor;
    return out;
}

/// Complex branching embedding, with the case split on the holomorphic
/// defects d = a1-a2 versus d' = a1'-a2'. The Jacobi factor in 1-2|z_n|^2
/// homogenizes through (|z'|^2 - |z_n|^2) and (|z'|^2 + |z_n|^2).
inline HarmonicElement embed_complex(const HarmonicElement& phi, int a1, int a2) {
    if (!phi.complex_case) throw ParameterError("embed_complex: real-case element");
    if (phi.is_zero()) throw EmptySpace("embed_complex: zero source element");
    if (a1 < phi.deg_hol || a2 < phi.deg_ahol)
        throw DegreeError("embed_complex: bidegree (" + std::to_string(a1) + "," +
                          std::to_string(a2) + ") below source");
    int m = phi.n;
    int n = m + 1;
    int d = a1 - a2;
    int dp = phi.deg_hol - phi.deg_ahol;

    int delta, jdeg;
    int tail_var; // z_n or zb_n
    if (d >= dp) {
        delta = d - dp;
        jdeg = a2 - phi.deg_ahol;
        tail_var = n - 1;
    } else {
        delta = dp - d;
        jdeg = a1 - phi.deg_hol;
        tail_var = 2 * n - 1;
    }
    Rat jb = Rat(phi.deg_hol + phi.deg_ahol + n - 2);
    PolyRat jac = jacobi(static_cast<unsigned>(jdeg), Rat(delta), jb);

    // u = |z'|^2, v = |z_n|^2; P(1-2v) on the sphere becomes
    // sum_j p_j (u-v)^j (u+v)^{jdeg-j} as a bihomogeneous polynomial.
    MPoly u(2 * n), v(2 * n);
    for (int i = 0; i < n - 1; ++i)
        u = u + MPoly::variable(2 * n, i) * MPoly::variable(2 * n, n + i);
    v = MPoly::variable(2 * n, n - 1) * MPoly::variable(2 * n, 2 * n - 1);
    MPoly umv = u - v;
    MPoly upv = u + v;
    std::vector<MPoly> pow_umv(jdeg + 1), pow_upv(jdeg + 1);
    pow_umv[0] = MPoly::constant(2 * n, Rat(1));
    pow_upv[0] = pow_umv[0];
    for (int i = 1; i <= jdeg; ++i) {
        pow_umv[i] = pow_umv[i - 1] * umv;
        pow_upv[i] = pow_upv[i - 1] * upv;
    }
    MPoly factor(2 * n);
    for (int j = 0; j <= jdeg; ++j) {
        Rat c = jac.coefficient(static_cast<std::size_t>(j));
        if (!c.is_zero()) factor = factor + c * (pow_umv[j] * pow_upv[jdeg - j]);
    }
    if (delta > 0) factor = factor * MPoly::variable(2 * n, tail_var, static_cast<unsigned>(delta));

    HarmonicElement out;
    out.complex_case = true;
    out.n = n;
    out.deg_hol = a1;
    out.deg_ahol = a2;
    out.branch_path.push_back(std::to_string(phi.deg_hol) + "," + std::to_string(phi.deg_ahol));
    out.branch_path.insert(out.branch_path.end(), phi.branch_path.begin(), phi.branch_path.end());
    out.poly = detail::extend_complex(phi.poly, m, n) * factor;
    return out;
}

/// Orthogonal basis of the degree-alpha harmonics on R^n obtained by
/// recursing the branching embeddings down to the plane, where the seeds
/// are Re(x_1+i x_2)^a and Im(x_1+i x_2)^a.
inline std::vector<HarmonicElement> real_basis(int n, int alpha) {
    if (n < 2) throw DimensionError("real_basis: n must be >= 2");
    std::vector<HarmonicElement> out;
    if (n == 2) {
        if (alpha == 0) {
            HarmonicElement e;
            e.n = 2;
            e.degree = 0;
            e.branch_path = {"1"};
            e.poly = MPoly::constant(2, Rat(1));
            out.push_back(std::move(e));
            return out;
        }
        // (x0 + i x1)^alpha expanded into real and imaginary parts.
        MPoly re(2), im(2);
        for (int k = 0; k <= alpha; ++k) {
            Rat c = binomial(Rat(alpha), static_cast<unsigned>(k));
            MPoly term = c * (MPoly::variable(2, 0, static_cast<unsigned>(alpha - k)) *
                              MPoly::variable(2, 1, static_cast<unsigned>(k)));
            switch (k % 4) {
                case 0: re = re + term; break;
                case 1: im = im + term; break;
                case 2: re = re - term; break;
                case 3: im = im - term; break;
            }
        }
        HarmonicElement er;
        er.n = 2;
        er.degree = alpha;
        er.branch_path = {"re"};
        er.poly = std::move(re);
        out.push_back(std::move(er));
        HarmonicElement ei;
        ei.n = 2;
        ei.degree = alpha;
        ei.branch_path = {"im"};
        ei.poly = std::move(im);
        out.push_back(std::move(ei));
        return out;
    }
    for (int ap = 0; ap <= alpha; ++ap)
        for (auto& phi : real_basis(n - 1, ap)) out.push_back(embed_real(phi, alpha));
    return out;
}

/// Dimension of the space of degree-alpha harmonics on R^n.
inline long real_harmonic_dim(int n, int alpha) {
    auto binom = [](long a, long b) -> long {
        if (b < 0 || a < b) return 0;
        long r = 1;
        for (long i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
        return r;
    };
    return binom(n + alpha - 1, alpha) - binom(n + alpha - 3, alpha - 2);
}

/// Basis of bidegree-(a1,a2) harmonics on C^n. At n = 1 the space is the
/// monomial line z^{a1} (or zb^{a2}), and empty when a1*a2 > 0.
inline std::vector<HarmonicElement> complex_basis(int n, int a1, int a2) {
    if (n < 1) throw DimensionError("complex_basis: n must be >= 1");
    std::vector<HarmonicElement> out;
    if (n == 1) {
        if (a1 > 0 && a2 > 0) return out;
        HarmonicElement e;
        e.complex_case = true;
        e.n = 1;
        e.deg_hol = a1;
        e.deg_ahol = a2;
        if (a1 == 0 && a2 == 0) {
            e.branch_path = {"1"};
            e.poly = MPoly::constant(2, Rat(1));
        } else if (a2 == 0) {
            e.branch_path = {"z^" + std::to_string(a1)};
            e.poly = MPoly::variable(2, 0, static_cast<unsigned>(a1));
        } else {
            e.branch_path = {"zb^" + std::to_string(a2)};
            e.poly = MPoly::variable(2, 1, static_cast<unsigned>(a2));
        }
        out.push_back(std::move(e));
        return out;
    }
    for (int b1 = 0; b1 <= a1; ++b1)
        for (int b2 = 0; b2 <= a2; ++b2)
            for (auto& phi : complex_basis(n - 1, b1, b2)) out.push_back(embed_complex(phi, a1, a2));
    return out;
}

/// Splits x_j * phi into harmonics: x_j phi = plus + |x|^2 minus with
/// plus of degree alpha+1 and minus of degree alpha-1.
inline std::pair<HarmonicElement, HarmonicElement> multiply_coordinate_real(
    const HarmonicElement& phi, int j) {
    if (phi.complex_case) throw ParameterError("multiply_coordinate_real: complex-case element");
    int n = phi.n;
    int alpha = phi.degree;
    MPoly grad = phi.poly.derivative(j);
    MPoly minus(n);
    if (!grad.is_zero()) minus = (Rat(1) / Rat(n + 2 * alpha - 2)) * grad;
    MPoly plus = MPoly::variable(n, j) * phi.poly - detail::norm_sq_real(n) * minus;

    HarmonicElement ep;
    ep.n = n;
    ep.degree = alpha + 1;
    ep.branch_path = phi.branch_path;
    ep.poly = std::move(plus);
    HarmonicElement em;
    em.n = n;
    em.degree = alpha - 1;
    em.branch_path = phi.branch_path;
    em.poly = std::move(minus);
    return {std::move(ep), std::move(em)};
}

enum class CoordMode { Z, ZBar };

/// Complex analogue: z_j phi (mode Z) or zb_j phi (mode ZBar) splits as
/// plus + |z|^2 minus, the minus part being the scaled Wirtinger
/// derivative in the opposite slot.
inline std::pair<HarmonicElement, HarmonicElement> multiply_coordinate_complex(
    const HarmonicElement& phi, int j, CoordMode mode) {
    if (!phi.complex_case) throw ParameterError("multiply_coordinate_complex: real-case element");
    int n = phi.n;
    long denom = phi.deg_hol + phi.deg_ahol + n - 1;
    int mul_var = mode == CoordMode::Z ? j : n + j;
    int diff_var = mode == CoordMode::Z ? n + j : j;
    MPoly grad = phi.poly.derivative(diff_var);
    MPoly minus(2 * n);
    if (!grad.is_zero()) minus = (Rat(1) / Rat(denom)) * grad;
    MPoly plus = MPoly::variable(2 * n, mul_var) * phi.poly - detail::norm_sq_complex(n) * minus;

    HarmonicElement ep;
    ep.complex_case = true;
    ep.n = n;
    ep.deg_hol = phi.deg_hol + (mode == CoordMode::Z ? 1 : 0);
    ep.deg_ahol = phi.deg_ahol + (mode == CoordMode::ZBar ? 1 : 0);
    ep.branch_path = phi.branch_path;
    ep.poly = std::move(plus);
    HarmonicElement em;
    em.complex_case = true;
    em.n = n;
    em.deg_hol = phi.deg_hol - (mode == CoordMode::ZBar ? 1 : 0);
    em.deg_ahol = phi.deg_ahol - (mode == CoordMode::Z ? 1 : 0);
    em.branch_path = phi.branch_path;
    em.poly = std::move(minus);
    return {std::move(ep), std::move(em)};
}

/// Restriction to the equatorial subsphere: last real coordinate, or the
/// last complex coordinate pair, is set to zero. The result is a
/// homogeneous polynomial on the smaller ambient space.
struct EquatorRestriction {
    bool complex_case = false;
    int n = 0; // ambient dimension of the subsphere's space
    MPoly poly;

    bool is_identically_zero() const { return poly.is_zero(); }
    double eval(const std::vector<double>& x) const { return poly.eval<double>(x); }
    std::complex<double> eval(const std::vector<std::complex<double>>& z) const {
        std::vector<std::complex<double>> args(2 * n);
        for (int i = 0; i < n; ++i) {
            args[i] = z[i];
            args[n + i] = std::conj(z[i]);
        }
        return poly.eval<std::complex<double>>(args);
    }
};

inline EquatorRestriction restrict_equator(const HarmonicElement& phi) {
    EquatorRestriction out;
    out.complex_case = phi.complex_case;
    if (!phi.complex_case) {
        if (phi.n < 3) throw DimensionError("restrict_equator: real case needs n >= 3");
        out.n = phi.n - 1;
        out.poly = phi.poly.set_zero_and_drop(phi.n - 1);
    } else {
        if (phi.n < 2) throw DimensionError("restrict_equator: complex case needs n >= 2");
        out.n = phi.n - 1;
        out.poly = phi.poly.set_zero_and_drop(2 * phi.n - 1).set_zero_and_drop(phi.n - 1);
    }
    return out;
}

/// Norm ratio ||I(phi)||^2_{S^{n-1}} / ||phi||^2_{S^{n-2}} of the real
/// branching embedding.
inline double plancherel_norm_real(int n, int alpha, int alpha_prime) {
    if (alpha_prime < 0 || alpha_prime > alpha)
        throw ParameterError("plancherel_norm_real: need 0 <= alpha' <= alpha");
    double num = std::pow(2.0, 3 - n - 2 * alpha_prime) * M_PI *
                 gamma_float(n - 2 + alpha + alpha_prime);
    double den = factorial_d(static_cast<unsigned>(alpha - alpha_prime)) *
                 (alpha + 0.5 * (n - 2)) * std::pow(gamma_float(alpha_prime + 0.5 * (n - 2)), 2);
    return num / den;
}

/// Squared operator norm of equatorial restriction on the (alpha; alpha')
/// component, for alpha - alpha' = 2l.
inline double restriction_norm_sq(int n, int alpha, int alpha_prime) {
    if ((alpha - alpha_prime) % 2 != 0)
        throw ParityError("restriction_norm_sq: alpha - alpha' must be even");
    if (alpha_prime < 0 || alpha_prime > alpha)
        throw ParameterError("restriction_norm_sq: need 0 <= alpha' <= alpha");
    int l = (alpha - alpha_prime) / 2;
    return (alpha_prime + 2 * l + 0.5 * (n - 2)) * gamma_float(l + 0.5) *
           gamma_float(alpha_prime + l + 0.5 * (n - 2)) /
           (M_PI * gamma_float(l + 1.0) * gamma_float(alpha_prime + l + 0.5 * (n - 1)));
}

/// Exact harmonicity check (Laplacian in the appropriate sense).
inline bool is_harmonic(const HarmonicElement& e) {
    if (e.poly.is_zero()) return true;
    if (!e.complex_case) {
        std::vector<int> vars(e.n);
        for (int i = 0; i < e.n; ++i) vars[i] = i;
        return laplacian(e.poly, vars).is_zero();
    }
    std::vector<int> zv(e.n), zbv(e.n);
    for (int i = 0; i < e.n; ++i) {
        zv[i] = i;
        zbv[i] = e.n + i;
    }
    return laplacian_pairs(e.poly, zv, zbv).is_zero();
}

} // namespace sbo
