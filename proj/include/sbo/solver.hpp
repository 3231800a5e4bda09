#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "sbo/lattice.hpp"
#include "sbo/spectral.hpp"

namespace sbo {

/// Truncation of the relation system between two (sub)quotient factors:
/// unknowns are the lattice pairs inside the window whose K-type lies in
/// the source factor's support and whose K'-type lies in the target
/// factor's support; rows are the relation instances sourced in the
/// source support and aimed at an in-support K'-type, kept only when
/// every unknown they reference stays inside the window.
struct ConstraintSystem {
    GroupCase cse;
    Params params;
    int window = 0;
    CompositionFactor v, w;
    std::vector<PairIndex> unknowns; // degree-lex order
    std::map<PairIndex, int> index;

    struct Term {
        int col;
        Rat coeff;
    };
    std::vector<std::vector<Term>> rows;
};

inline ConstraintSystem assemble(const GroupCase& cse, const Params& ps, int window,
                                 const CompositionFactor& v, const CompositionFactor& w) {
    auto cls = singular_set_membership(cse, ps);
    int barrier = std::max(cls.i, cls.j);
    if (v.kind != CompositionFactor::Full) barrier = std::max(barrier, v.index);
    if (w.kind != CompositionFactor::Full) barrier = std::max(barrier, w.index);
    if (barrier > window - 4)
        throw WindowTooSmall("assemble: window " + std::to_string(window) +
                             " too small for barrier index " + std::to_string(barrier));

    ConstraintSystem sys;
    sys.cse = cse;
    sys.params = ps;
    sys.window = window;
    sys.v = v;
    sys.w = w;

    auto pairs = lattice_pairs(cse, window);
    for (const auto& pr : pairs)
        if (support_contains(cse, v, pr.a1, pr.a2) && support_contains(cse, w, pr.b1, pr.b2))
            sys.unknowns.push_back(pr);
    std::sort(sys.unknowns.begin(), sys.unknowns.end(), DegreeLexLess{});
    for (std::size_t i = 0; i < sys.unknowns.size(); ++i)
        sys.index[sys.unknowns[i]] = static_cast<int>(i);

    int limit = window; // K-type components of referenced pairs must stay <= window
    for (const auto& src : pairs) {
        if (!support_contains(cse, v, src.a1, src.a2)) continue;
        for (Direction d : directions_for(cse)) {
            if (!direction_valid(cse, src, d)) continue;
            // Target K'-type must lie in the w-support.
            auto nb = detail::formal_neighbors(src, d);
            if (!support_contains(cse, w, nb[0].b1, nb[0].b2)) continue;

            std::vector<ConstraintSystem::Term> row;
            bool keep = true;
            for (const auto& [key, coeff] : relation_row(cse, ps, src, d)) {
                if (coeff.is_zero()) continue;
                bool masked = key.on_lattice() &&
                              support_contains(cse, v, key.a1, key.a2) &&
                              support_contains(cse, w, key.b1, key.b2);
                if (!masked) continue; // structurally zero on the factor pair
                if (std::max(key.a1, key.a2) > limit) {
                    keep = false; // references an unknown beyond the window
                    break;
                }
                row.push_back({sys.index.at(key), coeff});
            }
            if (keep && !row.empty()) {
                std::sort(row.begin(), row.end(),
                          [](const auto& x, const auto& y) { return x.col < y.col; });
                sys.rows.push_back(std::move(row));
            }
        }
    }
    return sys;
}

/// Reduced-echelon basis of the exact nullspace: each vector has a 1 on
/// its own free column and 0 on the other free columns.
struct SolutionBasis {
    int dimension = 0;
    std::vector<PairIndex> unknowns;
    std::vector<std::map<PairIndex, Rat>> vectors;
};

namespace detail {

struct Elimination {
    int rank = 0;
    // Pivot rows in pivot-column order; each row's first term is its pivot.
    std::vector<std::vector<ConstraintSystem::Term>> pivot_rows;
    std::vector<int> pivot_cols;
    std::vector<int> free_cols;
};

inline Elimination eliminate(const ConstraintSystem& sys) {
    using Row = std::vector<ConstraintSystem::Term>;
    int ncols = static_cast<int>(sys.unknowns.size());
    std::vector<Row> work = sys.rows;
    // Rows bucketed by their current leading column.
    std::vector<std::vector<int>> bucket(ncols);
    for (std::size_t i = 0; i < work.size(); ++i)
        if (!work[i].empty()) bucket[work[i][0].col].push_back(static_cast<int>(i));

    auto combine = [](Row& row, const Row& pivot, const Rat& factor) {
        // row -= factor * pivot, both sorted by column.
        Row out;
        out.reserve(row.size() + pivot.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < row.size() && row[i].col < pivot[j].col)) {
                out.push_back(std::move(row[i++]));
            } else if (i == row.size() || pivot[j].col < row[i].col) {
                out.push_back({pivot[j].col, -factor * pivot[j].coeff});
                ++j;
            } else {
                Rat c = row[i].coeff - factor * pivot[j].coeff;
                if (!c.is_zero()) out.push_back({row[i].col, std::move(c)});
                ++i;
                ++j;
            }
        }
        row = std::move(out);
    };

    Elimination el;
    std::vector<char> is_pivot_col(ncols, 0);
    for (int c = 0; c < ncols; ++c) {
        auto& cand = bucket[c];
        if (cand.empty()) continue;
        // Deterministic pivot: fewest terms, then lowest row id.
        int best = cand[0];
        for (int id : cand)
            if (work[id].size() < work[best].size() ||
                (work[id].size() == work[best].size() && id < best))
                best = id;
        Row pivot = work[best];
        // Scale the pivot to a leading 1 to keep later combinations cheap.
        Rat lead = pivot[0].coeff;
        for (auto& t : pivot) t.coeff /= lead;
        for (int id : cand) {
            if (id == best) {
                work[id].clear();
                continue;
            }
            Row& row = work[id];
            combine(row, pivot, row[0].coeff); // pivot lead is 1
            if (!row.empty()) bucket[row[0].col].push_back(id);
        }
        cand.clear();
        el.pivot_cols.push_back(c);
        el.pivot_rows.push_back(std::move(pivot));
        is_pivot_col[c] = 1;
        ++el.rank;
    }
    for (int c = 0; c < ncols; ++c)
        if (!is_pivot_col[c]) el.free_cols.push_back(c);
    return el;
}

} // namespace detail

inline SolutionBasis nullspace(const ConstraintSystem& sys) {
    auto el = detail::eliminate(sys);
    SolutionBasis basis;
    basis.unknowns = sys.unknowns;
    basis.dimension = static_cast<int>(el.free_cols.size());
    int ncols = static_cast<int>(sys.unknowns.size());
    std::vector<std::vector<Rat>> vecs;
    for (int f : el.free_cols) {
        std::vector<Rat> vec(ncols, Rat(0));
        vec[f] = Rat(1);
        for (int k = static_cast<int>(el.pivot_rows.size()) - 1; k >= 0; --k) {
            const auto& row = el.pivot_rows[k];
            Rat acc(0);
            for (std::size_t t = 1; t < row.size(); ++t) acc += row[t].coeff * vec[row[t].col];
            vec[row[0].col] = -acc; // pivot coefficient is 1
        }
        vecs.push_back(std::move(vec));
    }
    // Reduced echelon form of the basis itself: strictly increasing leading
    // columns, unit leading coefficients, zeros elsewhere in those columns.
    // This makes the output canonical for the unknown ordering.
    int done = 0;
    for (int c = 0; c < ncols && done < static_cast<int>(vecs.size()); ++c) {
        int pick = -1;
        for (int v = done; v < static_cast<int>(vecs.size()); ++v)
            if (!vecs[v][c].is_zero()) {
                pick = v;
                break;
            }
        if (pick < 0) continue;
        std::swap(vecs[done], vecs[pick]);
        Rat lead = vecs[done][c];
        for (int x = 0; x < ncols; ++x)
            if (!vecs[done][x].is_zero()) vecs[done][x] /= lead;
        for (int v = 0; v < static_cast<int>(vecs.size()); ++v) {
            if (v == done || vecs[v][c].is_zero()) continue;
            Rat factor = vecs[v][c];
            for (int x = 0; x < ncols; ++x) vecs[v][x] -= factor * vecs[done][x];
        }
        ++done;
    }
    for (const auto& vec : vecs) {
        std::map<PairIndex, Rat> entry;
        for (int c = 0; c < ncols; ++c)
            if (!vec[c].is_zero()) entry[sys.unknowns[c]] = vec[c];
        basis.vectors.push_back(std::move(entry));
    }
    return basis;
}

inline int nullspace_dimension(const ConstraintSystem& sys) {
    auto el = detail::eliminate(sys);
    return static_cast<int>(sys.unknowns.size()) - el.rank;
}

/// Exact multiplicity between the masked factors: the nullspace dimension,
/// certified stable by recomputing at window + 4.
inline int multiplicity(const GroupCase& cse, const Params& ps, const CompositionFactor& v,
                        const CompositionFactor& w, int window) {
    int d1 = nullspace_dimension(assemble(cse, ps, window, v, w));
    int d2 = nullspace_dimension(assemble(cse, ps, window + 4, v, w));
    if (d1 != d2)
        throw WindowUnstable("multiplicity: dimension " + std::to_string(d1) + " at window " +
                             std::to_string(window) + " vs " + std::to_string(d2) + " at window " +
                             std::to_string(window + 4));
    return d1;
}

struct CompareReport {
    bool proportional = false;
    Rat scale;
};

/// Checks that a 1-dimensional nullspace basis is an exact scalar multiple
/// of the closed-form table (corrected variant in the complex case).
inline CompareReport compare_with_closed_form(const GroupCase& cse, const Params& ps,
                                              const SolutionBasis& basis) {
    if (basis.dimension != 1)
        throw ParameterError("compare_with_closed_form: expected a 1-dimensional basis, got " +
                             std::to_string(basis.dimension));
    const auto& vec = basis.vectors[0];
    PairIndex base = cse.is_real() ? PairIndex::real(0, 0) : PairIndex::complex(0, 0, 0, 0);
    auto closed = [&](const PairIndex& p) {
        return cse.is_real() ? spectral_real(cse, ps, p) : spectral_complex(cse, ps, p);
    };
    auto it = vec.find(base);
    Rat scale = it == vec.end() ? Rat(0) : it->second; // closed form is 1 at the base pair
    for (const auto& pr : basis.unknowns) {
        auto jt = vec.find(pr);
        Rat got = jt == vec.end() ? Rat(0) : jt->second;
        if (got != scale * closed(pr))
            throw MismatchError("compare_with_closed_form: first mismatch at pair " + pr.str());
    }
    return {true, scale};
}

} // namespace sbo
