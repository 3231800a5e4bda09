#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "sbo/errors.hpp"
#include "sbo/rational.hpp"

namespace sbo {

enum class Family { Real, Complex };

/// Selects the orthogonal (Real, n >= 3) or unitary (Complex, n >= 2)
/// geometry and the derived half-sum constants.
struct GroupCase {
    Family family = Family::Real;
    int n = 3;

    static GroupCase real(int n) {
        if (n < 3) throw ParameterError("GroupCase::real: n must be >= 3");
        return {Family::Real, n};
    }
    static GroupCase complex(int n) {
        if (n < 2) throw ParameterError("GroupCase::complex: n must be >= 2");
        return {Family::Complex, n};
    }

    bool is_real() const { return family == Family::Real; }
    Rat rho() const { return is_real() ? Rat(n - 1, 2) : Rat(n); }
    Rat rho_prime() const { return is_real() ? Rat(n - 2, 2) : Rat(n - 1); }
    std::string name() const { return is_real() ? "real" : "complex"; }
};

/// Induction parameters (r, r') of the two principal series.
struct Params {
    Rat r;
    Rat r_prime;
};

/// A node of the pair lattice. Real case: (alpha; alpha'), stored in
/// (a1; b1). Complex case: (alpha_1, alpha_2; alpha_1', alpha_2') with the
/// reduced coordinates p = a1+a2, q1 = b1, q2 = b2.
struct PairIndex {
    int a1 = 0, a2 = 0; // K-type
    int b1 = 0, b2 = 0; // K'-type
    bool cplx = false;

    static PairIndex real(int alpha, int alpha_prime) {
        PairIndex p = raw_real(alpha, alpha_prime);
        if (!p.on_lattice())
            throw ParameterError("PairIndex: (" + std::to_string(alpha) + "," +
                                 std::to_string(alpha_prime) + ") is not on the real lattice");
        return p;
    }
    static PairIndex complex(int a1, int a2, int b1, int b2) {
        PairIndex p = raw_complex(a1, a2, b1, b2);
        if (!p.on_lattice())
            throw ParameterError("PairIndex: (" + std::to_string(a1) + "," + std::to_string(a2) +
                                 ";" + std::to_string(b1) + "," + std::to_string(b2) +
                                 ") is not on the complex lattice");
        return p;
    }
    // Unvalidated constructors, for formal neighbors in relation stencils.
    static PairIndex raw_real(int alpha, int alpha_prime) {
        PairIndex p;
        p.a1 = alpha;
        p.b1 = alpha_prime;
        return p;
    }
    static PairIndex raw_complex(int a1, int a2, int b1, int b2) {
        PairIndex p;
        p.a1 = a1;
        p.a2 = a2;
        p.b1 = b1;
        p.b2 = b2;
        p.cplx = true;
        return p;
    }

    int alpha() const { return a1; }
    int alpha_prime() const { return b1; }
    int p() const { return a1 + a2; }
    int q1() const { return b1; }
    int q2() const { return b2; }
    int total_degree() const { return a1 + a2 + b1 + b2; }

    bool on_lattice() const {
        if (!cplx) return b1 >= 0 && b1 <= a1 && (a1 - b1) % 2 == 0;
        return b1 >= 0 && b2 >= 0 && b1 <= a1 && b2 <= a2 && a1 - a2 == b1 - b2;
    }

    std::string str() const {
        if (!cplx) return std::to_string(a1) + "," + std::to_string(b1);
        return std::to_string(a1) + "," + std::to_string(a2) + ";" + std::to_string(b1) + "," +
               std::to_string(b2);
    }

    static PairIndex parse(Family family, const std::string& s) {
        auto bad = [&] { throw ParameterError("PairIndex::parse: malformed '" + s + "'"); };
        auto split = [&](const std::string& t, char sep) {
            std::vector<std::string> out;
            std::size_t pos = 0;
            while (true) {
                auto k = t.find(sep, pos);
                out.push_back(t.substr(pos, k == std::string::npos ? k : k - pos));
                if (k == std::string::npos) break;
                pos = k + 1;
            }
            return out;
        };
        auto to_int = [&](const std::string& t) {
            if (t.empty()) bad();
            for (std::size_t i = (t[0] == '-' ? 1 : 0); i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') bad();
            return std::stoi(t);
        };
        if (family == Family::Real) {
            auto parts = split(s, ',');
            if (parts.size() != 2) bad();
            return real(to_int(parts[0]), to_int(parts[1]));
        }
        auto halves = split(s, ';');
        if (halves.size() != 2) bad();
        auto k = split(halves[0], ','), kp = split(halves[1], ',');
        if (k.size() != 2 || kp.size() != 2) bad();
        return complex(to_int(k[0]), to_int(k[1]), to_int(kp[0]), to_int(kp[1]));
    }

    friend bool operator==(const PairIndex& x, const PairIndex& y) {
        return x.cplx == y.cplx && x.a1 == y.a1 && x.a2 == y.a2 && x.b1 == y.b1 && x.b2 == y.b2;
    }
    friend bool operator<(const PairIndex& x, const PairIndex& y) {
        return std::array<int, 4>{x.a1, x.a2, x.b1, x.b2} <
               std::array<int, 4>{y.a1, y.a2, y.b1, y.b2};
    }
};

/// Ordering used for solver unknowns: K-type degree ascending (then lex),
/// K'-type descending within a K-type. The descending K'-part makes the
/// reduced nullspace basis split along the subquotient supports at the
/// singular parameters; see the solver notes.
struct DegreeLexLess {
    bool operator()(const PairIndex& x, const PairIndex& y) const {
        auto key = [](const PairIndex& p) {
            return std::array<int, 6>{p.a1 + p.a2, p.a1,   p.a2,
                                      -(p.b1 + p.b2), -p.b1, -p.b2};
        };
        return key(x) < key(y);
    }
};

/// Spectrum-generating eigenvalue on the K-type (a1[,a2]).
inline Rat sigma(const GroupCase& cse, int a1, int a2 = 0) {
    if (cse.is_real()) return Rat(a1) * Rat(a1 + cse.n - 2);
    return Rat(2) * (Rat(a1) * Rat(a1 + cse.n - 1) + Rat(a2) * Rat(a2 + cse.n - 1));
}

/// Same on the K'-side.
inline Rat sigma_prime(const GroupCase& cse, int b1, int b2 = 0) {
    if (cse.is_real()) return Rat(b1) * Rat(b1 + cse.n - 3);
    return Rat(2) * (Rat(b1) * Rat(b1 + cse.n - 2) + Rat(b2) * Rat(b2 + cse.n - 2));
}

/// A step of the K'-type in one of the admissible directions. The real
/// case uses APrimeUp/APrimeDown; the complex case the four q-steps.
enum class Direction { APrimeUp, APrimeDown, Q1Up, Q1Down, Q2Up, Q2Down };

inline std::vector<Direction> directions_for(const GroupCase& cse) {
    if (cse.is_real()) return {Direction::APrimeUp, Direction::APrimeDown};
    return {Direction::Q1Up, Direction::Q1Down, Direction::Q2Up, Direction::Q2Down};
}

inline bool direction_valid(const GroupCase& cse, const PairIndex& pr, Direction d) {
    switch (d) {
        case Direction::APrimeUp: return cse.is_real();
        case Direction::APrimeDown: return cse.is_real() && pr.b1 >= 1;
        case Direction::Q1Up: return !cse.is_real();
        case Direction::Q1Down: return !cse.is_real() && pr.b1 >= 1;
        case Direction::Q2Up: return !cse.is_real();
        case Direction::Q2Down: return !cse.is_real() && pr.b2 >= 1;
    }
    return false;
}

namespace detail {

// The two formal neighbors of a pair in a given direction, the upward
// K-type step first, ignoring lattice validity.
inline std::array<PairIndex, 2> formal_neighbors(const PairIndex& pr, Direction d) {
    int a1 = pr.a1, a2 = pr.a2, b1 = pr.b1, b2 = pr.b2;
    switch (d) {
        case Direction::APrimeUp:
            return {PairIndex::raw_real(a1 + 1, b1 + 1), PairIndex::raw_real(a1 - 1, b1 + 1)};
        case Direction::APrimeDown:
            return {PairIndex::raw_real(a1 + 1, b1 - 1), PairIndex::raw_real(a1 - 1, b1 - 1)};
        case Direction::Q1Up:
            return {PairIndex::raw_complex(a1 + 1, a2, b1 + 1, b2),
                    PairIndex::raw_complex(a1, a2 - 1, b1 + 1, b2)};
        case Direction::Q1Down:
            return {PairIndex::raw_complex(a1 - 1, a2, b1 - 1, b2),
                    PairIndex::raw_complex(a1, a2 + 1, b1 - 1, b2)};
        case Direction::Q2Up:
            return {PairIndex::raw_complex(a1, a2 + 1, b1, b2 + 1),
                    PairIndex::raw_complex(a1 - 1, a2, b1, b2 + 1)};
        case Direction::Q2Down:
            return {PairIndex::raw_complex(a1, a2 - 1, b1, b2 - 1),
                    PairIndex::raw_complex(a1 + 1, a2, b1, b2 - 1)};
    }
    throw InternalError("formal_neighbors: bad direction");
}

} // namespace detail

/// Proportionality constants from the printed closed formulas. Both
/// formal neighbors are always listed; a structurally excluded one
/// carries the value 0.
inline std::vector<std::pair<PairIndex, Rat>> lambda_closed(const GroupCase& cse,
                                                            const PairIndex& pr, Direction d) {
    if (!pr.on_lattice()) throw ParameterError("lambda_closed: pair off lattice");
    if (!direction_valid(cse, pr, d)) throw ParameterError("lambda_closed: invalid direction");
    int n = cse.n;
    auto nb = detail::formal_neighbors(pr, d);
    Rat den = cse.is_real() ? Rat(2 * pr.a1 + n - 2) : Rat(pr.a1 + pr.a2 + n - 1);
    Rat c0, c1;
    switch (d) {
        case Direction::APrimeUp:
            c0 = Rat(pr.a1 + pr.b1 + n - 2);
            c1 = Rat(pr.a1 - pr.b1);
            break;
        case Direction::APrimeDown:
            c0 = Rat(pr.a1 - pr.b1 + 1);
            c1 = Rat(pr.a1 + pr.b1 + n - 3);
            break;
        case Direction::Q1Up:
            c0 = Rat(pr.b1 + pr.a2 + n - 1);
            c1 = Rat(pr.a1 - pr.b1);
            break;
        case Direction::Q1Down:
            c0 = Rat(pr.b1 + pr.a2 + n - 2);
            c1 = Rat(pr.a1 - pr.b1 + 1);
            break;
        case Direction::Q2Up:
            c0 = Rat(pr.a1 + pr.b2 + n - 1);
            c1 = Rat(pr.a2 - pr.b2);
            break;
        case Direction::Q2Down:
            c0 = Rat(pr.a1 + pr.b2 + n - 2);
            c1 = Rat(pr.a2 - pr.b2 + 1);
            break;
    }
    return {{nb[0], c0 / den}, {nb[1], c1 / den}};
}

/// The same constants recovered from the two scalar identities
///   sum lambda = 1,   sum lambda (sigma_beta - sigma_alpha)
///                       = sigma'_{beta'} - sigma'_{alpha'} + 2(rho - rho'),
/// solving the 2x2 system on the genuine neighbors.
inline std::vector<std::pair<PairIndex, Rat>> lambda_from_lemma(const GroupCase& cse,
                                                                const PairIndex& pr, Direction d) {
    if (!pr.on_lattice()) throw ParameterError("lambda_from_lemma: pair off lattice");
    if (!direction_valid(cse, pr, d)) throw ParameterError("lambda_from_lemma: invalid direction");
    auto nb = detail::formal_neighbors(pr, d);
    Rat sig_a = sigma(cse, pr.a1, pr.a2);
    Rat target = sigma_prime(cse, nb[0].b1, nb[0].b2) - sigma_prime(cse, pr.b1, pr.b2) +
                 Rat(2) * (cse.rho() - cse.rho_prime());
    bool g0 = nb[0].on_lattice();
    bool g1 = nb[1].on_lattice();
    std::vector<std::pair<PairIndex, Rat>> out = {{nb[0], Rat(0)}, {nb[1], Rat(0)}};
    if (g0 && g1) {
        Rat s0 = sigma(cse, nb[0].a1, nb[0].a2) - sig_a;
        Rat s1 = sigma(cse, nb[1].a1, nb[1].a2) - sig_a;
        if (s0 == s1) throw SingularSystem("lambda_from_lemma: degenerate 2x2 system at " + pr.str());
        out[0].second = (target - s1) / (s0 - s1);
        out[1].second = (s0 - target) / (s0 - s1);
    } else if (g0 || g1) {
        int g = g0 ? 0 : 1;
        Rat s = sigma(cse, nb[g].a1, nb[g].a2) - sig_a;
        if (s != target)
            throw InternalError("lambda_from_lemma: one-neighbor identities inconsistent at " +
                                pr.str());
        out[g].second = Rat(1);
    } else {
        throw InternalError("lambda_from_lemma: no genuine neighbor at " + pr.str());
    }
    return out;
}

/// One instance of the printed recurrences as a linear functional: the
/// source coefficient is positive, neighbor coefficients negative, and
/// the row evaluates to 0 on any intertwiner table. Off-lattice formal
/// neighbors are kept with coefficient 0; a nonzero coefficient on an
/// off-lattice pair trips the internal consistency guard.
inline std::vector<std::pair<PairIndex, Rat>> relation_row(const GroupCase& cse,
                                                           const Params& ps, const PairIndex& pr,
                                                           Direction d) {
    if (!pr.on_lattice()) throw ParameterError("relation_row: pair off lattice");
    if (!direction_valid(cse, pr, d)) throw ParameterError("relation_row: invalid direction");
    int n = cse.n;
    const Rat& r = ps.r;
    const Rat& rp = ps.r_prime;
    auto nb = detail::formal_neighbors(pr, d);
    int a1 = pr.a1, a2 = pr.a2, b1 = pr.b1, b2 = pr.b2;
    Rat src, c0, c1;
    switch (d) {
        case Direction::APrimeUp:
            src = Rat(2 * a1 + n - 2) * (Rat(2) * rp + Rat(2 * b1 + n - 2));
            c0 = Rat(a1 + b1 + n - 2) * (Rat(2) * r + Rat(2 * a1 + n - 1));
            c1 = Rat(a1 - b1) * (Rat(2) * r - Rat(2 * a1 + n - 3));
            break;
        case Direction::APrimeDown:
            src = Rat(2 * a1 + n - 2) * (Rat(2) * rp - Rat(2 * b1 + n - 4));
            c0 = Rat(a1 - b1 + 1) * (Rat(2) * r + Rat(2 * a1 + n - 1));
            c1 = Rat(a1 + b1 + n - 3) * (Rat(2) * r - Rat(2 * a1 + n - 3));
            break;
        case Direction::Q1Up:
            src = Rat(a1 + a2 + n - 1) * (rp + Rat(2 * b1 + n - 1));
            c0 = Rat(b1 + a2 + n - 1) * (r + Rat(2 * a1 + n));
            c1 = Rat(a1 - b1) * (r - Rat(2 * a2 + n - 2));
            break;
        case Direction::Q1Down:
            src = Rat(a1 + a2 + n - 1) * (rp - Rat(2 * b1 + n - 3));
            c0 = Rat(b1 + a2 + n - 2) * (r - Rat(2 * a1 + n - 2));
            c1 = Rat(a1 - b1 + 1) * (r + Rat(2 * a2 + n));
            break;
        case Direction::Q2Up:
            src = Rat(a1 + a2 + n - 1) * (rp + Rat(2 * b2 + n - 1));
            c0 = Rat(a1 + b2 + n - 1) * (r + Rat(2 * a2 + n));
            c1 = Rat(a2 - b2) * (r - Rat(2 * a1 + n - 2));
            break;
        case Direction::Q2Down:
            src = Rat(a1 + a2 + n - 1) * (rp - Rat(2 * b2 + n - 3));
            c0 = Rat(a1 + b2 + n - 2) * (r - Rat(2 * a2 + n - 2));
            c1 = Rat(a2 - b2 + 1) * (r + Rat(2 * a1 + n));
            break;
    }
    for (int i = 0; i < 2; ++i) {
        const Rat& c = i == 0 ? c0 : c1;
        if (!nb[i].on_lattice() && !c.is_zero())
            throw InternalError("relation_row: nonzero coefficient on off-lattice pair " +
                                nb[i].str() + " from source " + pr.str());
    }
    return {{pr, src}, {nb[0], -c0}, {nb[1], -c1}};
}

/// Classification of (r, r') against the singular parameter sets.
struct SingularClass {
    enum Kind { Generic, LEven, LOdd, LComplex } kind = Generic;
    int i = -1;
    int j = -1;

    std::string str() const {
        switch (kind) {
            case Generic: return "Generic";
            case LEven: return "L_even(" + std::to_string(i) + "," + std::to_string(j) + ")";
            case LOdd: return "L_odd(" + std::to_string(i) + "," + std::to_string(j) + ")";
            case LComplex: return "L(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
        return "Generic";
    }
};

inline SingularClass singular_set_membership(const GroupCase& cse, const Params& ps) {
    SingularClass out;
    Rat x = -(ps.r + cse.rho());
    Rat y = -(ps.r_prime + cse.rho_prime());
    if (!x.is_integer() || !y.is_integer() || x.sign() < 0 || y.sign() < 0) return out;
    long xi = x.to_long(), yj = y.to_long();
    if (cse.is_real()) {
        if (xi < yj) return out;
        out.i = static_cast<int>(xi);
        out.j = static_cast<int>(yj);
        out.kind = ((xi - yj) % 2 == 0) ? SingularClass::LEven : SingularClass::LOdd;
        return out;
    }
    if (xi % 2 != 0 || yj % 2 != 0) return out;
    long i = xi / 2, j = yj / 2;
    if (j > i) return out;
    out.kind = SingularClass::LComplex;
    out.i = static_cast<int>(i);
    out.j = static_cast<int>(j);
    return out;
}

/// Composition factor of a principal series, named by its place in the
/// composition series; the index is the reducibility parameter i resp. j.
struct CompositionFactor {
    enum Kind { Full, F, T, Fplus, Fminus, Tplus, Tminus } kind = Full;
    int index = 0;

    static CompositionFactor full() { return {Full, 0}; }

    std::string str() const {
        switch (kind) {
            case Full: return "full";
            case F: return "F(" + std::to_string(index) + ")";
            case T: return "T(" + std::to_string(index) + ")";
            case Fplus: return "F+(" + std::to_string(index) + ")";
            case Fminus: return "F-(" + std::to_string(index) + ")";
            case Tplus: return "T+(" + std::to_string(index) + ")";
            case Tminus: return "T-(" + std::to_string(index) + ")";
        }
        return "full";
    }

    static CompositionFactor parse(const std::string& s) {
        if (s == "full" || s == "Full") return full();
        auto open = s.find('(');
        auto close = s.find(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw ParameterError("CompositionFactor::parse: malformed '" + s + "'");
        std::string head = s.substr(0, open);
        int idx = std::stoi(s.substr(open + 1, close - open - 1));
        Kind k;
        if (head == "F") k = F;
        else if (head == "T") k = T;
        else if (head == "F+") k = Fplus;
        else if (head == "F-") k = Fminus;
        else if (head == "T+") k = Tplus;
        else if (head == "T-") k = Tminus;
        else throw ParameterError("CompositionFactor::parse: unknown factor '" + s + "'");
        return {k, idx};
    }
};

/// K-type support predicate of a composition factor. The same predicate
/// shape serves the K'-side with (b1, b2) in place of (a1, a2).
inline bool support_contains(const GroupCase& cse, const CompositionFactor& f, int x1, int x2 = 0) {
    int i = f.index;
    if (cse.is_real()) {
        switch (f.kind) {
            case CompositionFactor::Full: return true;
            case CompositionFactor::F: return x1 <= i;
            case CompositionFactor::T: return x1 > i;
            default:
                throw ParameterError("support_contains: factor " + f.str() +
                                     " undefined in the real case");
        }
    }
    switch (f.kind) {
        case CompositionFactor::Full: return true;
        case CompositionFactor::F: return x1 <= i && x2 <= i;
        case CompositionFactor::Fplus: return x2 <= i;
        case CompositionFactor::Fminus: return x1 <= i;
        case CompositionFactor::Tplus: return x1 > i && x2 <= i;
        case CompositionFactor::Tminus: return x1 <= i && x2 > i;
        case CompositionFactor::T: return x1 > i && x2 > i;
    }
    return false;
}

/// All lattice pairs with K-type indices bounded by the window, in
/// degree-lex order.
inline std::vector<PairIndex> lattice_pairs(const GroupCase& cse, int window) {
    std::vector<PairIndex> out;
    if (cse.is_real()) {
        for (int a = 0; a <= window; ++a)
            for (int b = a % 2; b <= a; b += 2) out.push_back(PairIndex::real(a, b));
    } else {
        for (int a1 = 0; a1 <= window; ++a1)
            for (int a2 = 0; a2 <= window; ++a2)
                for (int s = 0; s <= std::min(a1, a2); ++s)
                    out.push_back(PairIndex::complex(a1, a2, a1 - s, a2 - s));
    }
    std::sort(out.begin(), out.end(), [](const PairIndex& x, const PairIndex& y) {
        return DegreeLexLess{}(x, y);
    });
    return out;
}

} // namespace sbo
