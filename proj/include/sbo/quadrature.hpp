#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "sbo/errors.hpp"
#include "sbo/gamma.hpp"
#include "sbo/harmonics.hpp"
#include "sbo/spectral.hpp"

namespace sbo {

namespace detail {

// Symmetric tridiagonal QL with implicit shifts, rotating only the first
// eigenvector component (Golub-Welsch needs nothing more). d is the
// diagonal, e the subdiagonal (e[i] couples i and i+1), z the seed vector.
inline void tql2_first_components(std::vector<double>& d, std::vector<double>& e,
                                  std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    e.resize(n, 0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (++iter > 64) throw ConvergenceError("tql2: too many QL iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    // Sort ascending, carrying z.
    for (int i = 0; i < n - 1; ++i) {
        int k = i;
        for (int j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        std::swap(d[i], d[k]);
        std::swap(z[i], z[k]);
    }
}

} // namespace detail

/// Gauss nodes and weights on [-1,1] for the weight (1-t^2)^c (Legendre
/// at c = 0), by Golub-Welsch on the symmetric Jacobi matrix.
inline std::pair<std::vector<double>, std::vector<double>> gauss_gegenbauer(int m, double c) {
    if (m < 1) throw ParameterError("gauss_gegenbauer: need at least one node");
    std::vector<double> d(m, 0.0), e(m, 0.0), z(m, 0.0);
    z[0] = 1.0;
    for (int k = 1; k < m; ++k)
        e[k - 1] = std::sqrt(k * (k + 2.0 * c) / ((2.0 * k + 2.0 * c + 1.0) * (2.0 * k + 2.0 * c - 1.0)));
    detail::tql2_first_components(d, e, z);
    double mu0 = std::sqrt(M_PI) * std::exp(std::lgamma(c + 1.0) - std::lgamma(c + 1.5));
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) w[i] = mu0 * z[i] * z[i];
    return {std::move(d), std::move(w)};
}

/// Product quadrature grid on S^{n-1}, exact for polynomials of total
/// degree <= 2*level. Points are stored with the polar coordinate last.
struct SphereGrid {
    int n = 0;
    int level = 0;
    std::vector<std::vector<double>> nodes;
    std::vector<double> weights;
};

inline double surface_area(int n) {
    return 2.0 * std::pow(M_PI, 0.5 * n) * std::exp(-std::lgamma(0.5 * n));
}

namespace detail {

inline SphereGrid sphere_grid_any(int n, int level) {
    SphereGrid g;
    g.n = n;
    g.level = level;
    if (n == 1) {
        g.nodes = {{1.0}, {-1.0}};
        g.weights = {1.0, 1.0};
        return g;
    }
    if (n == 2) {
        int m = 2 * level + 2;
        double w = 2.0 * M_PI / m;
        for (int k = 0; k < m; ++k) {
            double phi = (2.0 * M_PI * k) / m;
            g.nodes.push_back({std::cos(phi), std::sin(phi)});
            g.weights.push_back(w);
        }
        return g;
    }
    auto [t, w] = gauss_gegenbauer(level + 1, 0.5 * (n - 3));
    SphereGrid sub = sphere_grid_any(n - 1, level);
    for (std::size_t i = 0; i < t.size(); ++i) {
        double s = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
        for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
            std::vector<double> x(n);
            for (int k = 0; k < n - 1; ++k) x[k] = s * sub.nodes[j][k];
            x[n - 1] = t[i];
            g.nodes.push_back(std::move(x));
            g.weights.push_back(w[i] * sub.weights[j]);
        }
    }
    return g;
}

inline double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

// Flattened polynomial for tight evaluation loops.
struct FlatPoly {
    int nvars = 0;
    struct Term {
        double c;
        std::array<std::uint8_t, 12> e;
    };
    std::vector<Term> terms;

    static FlatPoly from(const MPoly& p) {
        FlatPoly f;
        f.nvars = p.nvars();
        for (auto& [e, c] : p.terms()) {
            Term t;
            t.c = c.to_double();
            t.e.fill(0);
            for (int i = 0; i < p.nvars(); ++i) t.e[i] = static_cast<std::uint8_t>(e[i]);
            f.terms.push_back(t);
        }
        return f;
    }

    double eval(const double* x) const {
        double acc = 0.0;
        for (const auto& t : terms) {
            double v = t.c;
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < t.e[i]; ++k) v *= x[i];
            acc += v;
        }
        return acc;
    }
};

} // namespace detail

inline SphereGrid sphere_grid(int n, int level) {
    if (n < 3 || n > 6) throw DimensionError("sphere_grid: supported dimensions are 3..6");
    if (level < 0 || level > 400) throw ParameterError("sphere_grid: level out of range");
    return detail::sphere_grid_any(n, level);
}

/// Deterministic integral over the grid (pairwise reduction).
inline double integrate(const SphereGrid& g,
                        const std::function<double(const std::vector<double>&)>& f) {
    std::vector<double> terms(g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) terms[i] = g.weights[i] * f(g.nodes[i]);
    return detail::pairwise_sum(terms.data(), terms.size());
}

/// Closed-form moment of a monomial over S^{n-1}: zero for odd exponents,
/// 2 prod Gamma(k_i+1/2) / Gamma(n/2 + sum k_i) for even ones (2k_i).
inline double sphere_monomial_moment(int n, const std::vector<int>& exponents) {
    double logs = 0.0;
    int ksum = 0;
    for (int e : exponents) {
        if (e % 2 != 0) return 0.0;
        int k = e / 2;
        ksum += k;
        logs += std::lgamma(k + 0.5);
    }
    for (int i = static_cast<int>(exponents.size()); i < n; ++i) logs += std::lgamma(0.5);
    return 2.0 * std::exp(logs - std::lgamma(0.5 * n + ksum));
}

// ---------------------------------------------------------------------------
// Singular Funk-Hecke quadrature
// ---------------------------------------------------------------------------

namespace detail {

// Geometrically graded panels of (0, length], finest toward 0.
inline std::vector<std::pair<double, double>> graded_panels(double length, int count) {
    std::vector<std::pair<double, double>> out;
    double hi = length;
    for (int m = 0; m < count; ++m) {
        double lo = hi * 0.5;
        out.emplace_back(lo, hi);
        hi = lo;
    }
    out.emplace_back(0.0, hi);
    return out;
}

// Orthonormal basis of the hyperplane orthogonal to y in R^{n-1}.
inline std::vector<std::vector<double>> orthogonal_frame(const std::vector<double>& y) {
    int m = static_cast<int>(y.size());
    std::vector<std::vector<double>> frame;
    for (int i = 0; i < m && static_cast<int>(frame.size()) < m - 1; ++i) {
        std::vector<double> v(m, 0.0);
        v[i] = 1.0;
        double dy = 0.0;
        for (int k = 0; k < m; ++k) dy += v[k] * y[k];
        for (int k = 0; k < m; ++k) v[k] -= dy * y[k];
        for (const auto& b : frame) {
            double db = 0.0;
            for (int k = 0; k < m; ++k) db += v[k] * b[k];
            for (int k = 0; k < m; ++k) v[k] -= db * b[k];
        }
        double norm = 0.0;
        for (int k = 0; k < m; ++k) norm += v[k] * v[k];
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        for (int k = 0; k < m; ++k) v[k] /= norm;
        frame.push_back(std::move(v));
    }
    if (static_cast<int>(frame.size()) != m - 1)
        throw InternalError("orthogonal_frame: frame construction failed");
    return frame;
}

// Product rule for the singular kernel
//   (|x'-y|^2 + x_n^2)^{-(r'+(n-2)/2)} |x_n|^{r+r'-1/2}
// in polar coordinates x = (cos u * omega, sin u), omega = cos psi * y
// + sin psi * eta_perp: panels graded toward the equator u = 0 and the
// kernel axis psi = 0.
struct SingularRule {
    std::vector<std::vector<double>> points; // on S^{n-1}
    std::vector<double> weights;             // kernel already folded in
};

inline SingularRule funk_hecke_rule(int n, double r, double rp, const std::vector<double>& y,
                                    int level) {
    int gauss = 10 + 2 * level;
    int panels = 28 + 4 * level;
    auto [gx, gw] = gauss_gegenbauer(gauss, 0.0);
    auto upans = graded_panels(M_PI / 2.0, panels);
    auto ppans = graded_panels(M_PI, panels);
    auto frame = orthogonal_frame(y);
    SphereGrid eta = sphere_grid_any(n - 2, 8 + level); // S^{n-3} directions

    double kexp = -(rp + 0.5 * (n - 2));
    double sexp = r + rp - 0.5;

    struct UNode {
        double xn, cu, versin, w; // versin = 1 - cos u, computed stably
    };
    std::vector<UNode> unodes;
    for (int sign : {+1, -1})
        for (auto& [lo, hi] : upans)
            for (int i = 0; i < gauss; ++i) {
                double u = 0.5 * (hi - lo) * gx[i] + 0.5 * (hi + lo);
                double w = 0.5 * (hi - lo) * gw[i];
                double su = std::sin(u), cu = std::cos(u);
                double sh = std::sin(0.5 * u);
                unodes.push_back({sign * su, cu, 2.0 * sh * sh,
                                  w * std::pow(su, sexp) * std::pow(cu, n - 2)});
            }
    struct PNode {
        double cp, sp, versin, w;
    };
    std::vector<PNode> pnodes;
    for (auto& [lo, hi] : ppans)
        for (int i = 0; i < gauss; ++i) {
            double p = 0.5 * (hi - lo) * gx[i] + 0.5 * (hi + lo);
            double w = 0.5 * (hi - lo) * gw[i];
            double sh = std::sin(0.5 * p);
            pnodes.push_back({std::cos(p), std::sin(p), 2.0 * sh * sh,
                              w * std::pow(std::sin(p), n - 3)});
        }

    SingularRule rule;
    rule.points.reserve(unodes.size() * pnodes.size() * eta.nodes.size());
    int m = n - 1;
    std::vector<double> omega(m), x(n);
    for (const auto& un : unodes)
        for (const auto& pn : pnodes) {
            // 2 - 2 cos u cos psi = 2((1-cos u) + cos u (1-cos psi)),
            // assembled from half-angle versines to survive the corner.
            double kern = std::pow(2.0 * (un.versin + un.cu * pn.versin), kexp);
            double wup = un.w * pn.w * kern;
            for (std::size_t ei = 0; ei < eta.nodes.size(); ++ei) {
                for (int k = 0; k < m; ++k) {
                    double perp = 0.0;
                    for (int f = 0; f < m - 1; ++f) perp += eta.nodes[ei][f] * frame[f][k];
                    omega[k] = pn.cp * y[k] + pn.sp * perp;
                }
                for (int k = 0; k < m; ++k) x[k] = un.cu * omega[k];
                x[n - 1] = un.xn;
                rule.points.push_back(x);
                rule.weights.push_back(wup * eta.weights[ei]);
            }
        }
    return rule;
}

inline double apply_rule(const SingularRule& rule, const FlatPoly& f) {
    std::vector<double> terms(rule.points.size());
    for (std::size_t i = 0; i < rule.points.size(); ++i)
        terms[i] = rule.weights[i] * f.eval(rule.points[i].data());
    return pairwise_sum(terms.data(), terms.size());
}

inline void check_convergence_region(double r, double rp) {
    if (!(r + rp > -0.5))
        throw ParameterError("funk_hecke: need r + r' > -1/2 for integrability across the equator");
    if (!(rp - r < 0.5))
        throw ParameterError("funk_hecke: need r' - r < 1/2 for integrability at the kernel point");
}

} // namespace detail

/// Quadrature value of the singular integral A(r,r')f(y) over S^{n-1}.
/// Evaluated at the grid's refinement level and once more at level+1;
/// disagreement beyond the tolerance raises ConvergenceError.
inline double funk_hecke_apply(int n, double r, double rp,
                               const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<double>& y, const SphereGrid& grid,
                               double tol = 1e-6) {
    if (n < 3 || n > 6) throw DimensionError("funk_hecke_apply: supported dimensions are 3..6");
    detail::check_convergence_region(r, rp);
    auto value_at = [&](int level) {
        auto rule = detail::funk_hecke_rule(n, r, rp, y, level);
        std::vector<double> terms(rule.points.size());
        for (std::size_t i = 0; i < rule.points.size(); ++i)
            terms[i] = rule.weights[i] * f(rule.points[i]);
        return detail::pairwise_sum(terms.data(), terms.size());
    };
    double v0 = value_at(grid.level);
    double v1 = value_at(grid.level + 1);
    if (std::abs(v1 - v0) > tol * std::max(1.0, std::abs(v1)))
        throw ConvergenceError("funk_hecke_apply: refinements differ by " +
                               std::to_string(std::abs(v1 - v0)));
    return v1;
}

struct FunkHeckeSample {
    std::vector<double> y;
    double integral = 0.0;
    double reference = 0.0;
    double rel_error = 0.0;
};

struct FunkHeckeReport {
    int n = 0, alpha = 0, alpha_prime = 0;
    double r = 0.0, r_prime = 0.0;
    bool odd_parity = false;
    double max_rel_error = 0.0;
    std::vector<FunkHeckeSample> samples;
};

/// Compares the singular integral against c_{a,a'}(r,r') phi(y) at several
/// deterministic sample points y with |phi(y)| bounded away from zero.
/// Odd parity compares |integral| to zero, normalized by the f == 1 value.
inline FunkHeckeReport verify_funk_hecke(int n, int alpha, int alpha_prime, double r, double rp,
                                         int samples = 5, int level = 0) {
    if (n < 3 || n > 6) throw DimensionError("verify_funk_hecke: supported dimensions are 3..6");
    detail::check_convergence_region(r, rp);
    FunkHeckeReport rep;
    rep.n = n;
    rep.alpha = alpha;
    rep.alpha_prime = alpha_prime;
    rep.r = r;
    rep.r_prime = rp;
    rep.odd_parity = (alpha - alpha_prime) % 2 != 0;

    HarmonicElement phi = real_basis(n - 1, alpha_prime)[0];
    HarmonicElement psi = embed_real(phi, alpha);
    detail::FlatPoly fpsi = detail::FlatPoly::from(psi.poly);
    detail::FlatPoly fphi = detail::FlatPoly::from(phi.poly.extended(n - 1));
    detail::FlatPoly fone = detail::FlatPoly::from(MPoly::constant(n, Rat(1)));

    // Deterministic sample directions on S^{n-2}, keeping |phi(y)| away
    // from its nodal set.
    std::vector<std::vector<double>> ys;
    double best = 0.0;
    std::vector<std::vector<double>> trials;
    std::uint64_t state = 88172645463325252ull;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state % 2000001) / 1000000.0 - 1.0;
    };
    for (int t = 0; t < 64; ++t) {
        std::vector<double> y(n - 1);
        double norm = 0.0;
        for (auto& c : y) {
            c = next();
            norm += c * c;
        }
        if (norm < 1e-4) continue;
        norm = std::sqrt(norm);
        for (auto& c : y) c /= norm;
        trials.push_back(y);
        best = std::max(best, std::abs(fphi.eval(y.data())));
    }
    for (const auto& y : trials) {
        if (static_cast<int>(ys.size()) == samples) break;
        if (std::abs(fphi.eval(y.data())) >= 0.3 * best || alpha_prime == 0) ys.push_back(y);
    }

    double ref_c = funk_hecke_constant(n, alpha, alpha_prime, r, rp);
    for (const auto& y : ys) {
        auto rule0 = detail::funk_hecke_rule(n, r, rp, y, level);
        auto rule1 = detail::funk_hecke_rule(n, r, rp, y, level + 1);
        double v0 = detail::apply_rule(rule0, fpsi);
        double v1 = detail::apply_rule(rule1, fpsi);
        if (std::abs(v1 - v0) > 1e-4 * std::max(1.0, std::abs(v1)))
            throw ConvergenceError("verify_funk_hecke: refinements differ by " +
                                   std::to_string(v1 - v0));
        FunkHeckeSample s;
        s.y = y;
        s.integral = v1;
        if (rep.odd_parity) {
            double scale = detail::apply_rule(rule1, fone);
            s.reference = 0.0;
            s.rel_error = std::abs(v1) / std::abs(scale);
        } else {
            s.reference = ref_c * fphi.eval(y.data());
            s.rel_error = std::abs(v1 - s.reference) / std::max(std::abs(s.reference), 1e-300);
        }
        rep.max_rel_error = std::max(rep.max_rel_error, s.rel_error);
        rep.samples.push_back(std::move(s));
    }
    return rep;
}

struct NormCheck {
    int alpha = 0, alpha_prime = 0;
    double ratio_quadrature = 0.0;
    double ratio_formula = 0.0;
    double rel_error = 0.0;
};

struct NormReport {
    int n = 0;
    double max_rel_plancherel = 0.0;
    double max_rel_restriction = 0.0;
    std::vector<NormCheck> plancherel;
    std::vector<NormCheck> restriction;
};

/// Quadrature verification of the embedding Plancherel ratio and the
/// restriction operator norm against their closed formulas.
inline NormReport verify_norm_formulas(int n, int alpha_max, double tol = 1e-8) {
    if (n < 3 || n > 6) throw DimensionError("verify_norm_formulas: supported dimensions are 3..6");
    NormReport rep;
    rep.n = n;
    int level = alpha_max + 6;
    SphereGrid big = detail::sphere_grid_any(n, level);
    SphereGrid small = detail::sphere_grid_any(n - 1, level);

    auto norm_sq = [](const SphereGrid& g, const detail::FlatPoly& f) {
        std::vector<double> terms(g.nodes.size());
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            double v = f.eval(g.nodes[i].data());
            terms[i] = g.weights[i] * v * v;
        }
        return detail::pairwise_sum(terms.data(), terms.size());
    };

    for (int ap = 0; ap <= alpha_max; ++ap) {
        HarmonicElement phi = real_basis(n - 1, ap)[0];
        detail::FlatPoly fphi = detail::FlatPoly::from(phi.poly);
        double phi_sq = norm_sq(small, fphi);
        for (int a = ap; a <= alpha_max; ++a) {
            HarmonicElement emb = embed_real(phi, a);
            detail::FlatPoly femb = detail::FlatPoly::from(emb.poly);
            double emb_sq = norm_sq(big, femb);

            NormCheck pc;
            pc.alpha = a;
            pc.alpha_prime = ap;
            pc.ratio_quadrature = emb_sq / phi_sq;
            pc.ratio_formula = plancherel_norm_real(n, a, ap);
            pc.rel_error = std::abs(pc.ratio_quadrature - pc.ratio_formula) /
                           std::abs(pc.ratio_formula);
            rep.max_rel_plancherel = std::max(rep.max_rel_plancherel, pc.rel_error);
            rep.plancherel.push_back(pc);
            if (!ApproxReal{pc.ratio_quadrature, tol}.matches_rel(pc.ratio_formula))
                throw ToleranceExceeded("verify_norm_formulas: Plancherel mismatch at (" +
                                        std::to_string(a) + "," + std::to_string(ap) + ")");

            if ((a - ap) % 2 == 0) {
                detail::FlatPoly frest =
                    detail::FlatPoly::from(restrict_equator(emb).poly);
                double rest_sq = norm_sq(small, frest);
                NormCheck rc;
                rc.alpha = a;
                rc.alpha_prime = ap;
                rc.ratio_quadrature = rest_sq / emb_sq;
                rc.ratio_formula = restriction_norm_sq(n, a, ap);
                rc.rel_error = std::abs(rc.ratio_quadrature - rc.ratio_formula) /
                               std::abs(rc.ratio_formula);
                rep.max_rel_restriction = std::max(rep.max_rel_restriction, rc.rel_error);
                rep.restriction.push_back(rc);
                if (!ApproxReal{rc.ratio_quadrature, tol}.matches_rel(rc.ratio_formula))
                    throw ToleranceExceeded("verify_norm_formulas: restriction mismatch at (" +
                                            std::to_string(a) + "," + std::to_string(ap) + ")");
            }
        }
    }
    return rep;
}

} // namespace sbo
