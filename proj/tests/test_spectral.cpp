#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "sbo/spectral.hpp"

using namespace sbo;

namespace {

struct RatGen {
    std::uint64_t s;
    explicit RatGen(std::uint64_t seed) : s(seed) {}
    Rat next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        long num = static_cast<long>((s >> 33) % 15) - 7;
        long den = 1 + static_cast<long>((s >> 21) % 7);
        return Rat(num, den);
    }
};

bool table_annihilates_all(const GroupCase& cse, const Params& ps, const SpectralTable& t,
                           int rows_window) {
    for (const auto& [src, d] : relation_instances(cse, rows_window + 1))
        if (!row_residual(cse, ps, src, d, t).is_zero()) return false;
    return true;
}

bool params_are_polar(const GroupCase& cse, const Params& ps, int window) {
    // Any vanishing (r+rho)_{a'+2k} inside the window makes t_real singular.
    Rat x = ps.r + cse.rho();
    if (!x.is_integer()) return false;
    long m = x.to_long();
    return m <= 0 && -m <= 2 * window;
}

} // namespace

TEST_CASE("spectral_real frozen values") {
    GroupCase cse = GroupCase::real(3);
    Params zero{Rat(0), Rat(0)};
    CHECK(spectral_real(cse, zero, PairIndex::real(0, 0)) == Rat(1));
    CHECK(spectral_real(cse, zero, PairIndex::real(1, 1)) == Rat(1, 2));
    CHECK(spectral_real(cse, zero, PairIndex::real(2, 0)) == Rat(5, 8));
    Params generic{Rat(1, 3), Rat(1, 5)};
    CHECK(spectral_real(cse, generic, PairIndex::real(0, 0)) == Rat(1));
}

TEST_CASE("spectral_real equals the propagation oracle at generic parameters") {
    RatGen gen(7);
    for (GroupCase cse : {GroupCase::real(3), GroupCase::real(4), GroupCase::real(5)}) {
        int done = 0;
        while (done < 6) {
            Params ps{gen.next(), gen.next()};
            if (params_are_polar(cse, ps, 10)) continue;
            SpectralTable oracle;
            try {
                oracle = propagate_real(cse, ps, 10);
            } catch (const PoleError&) {
                continue; // propagation barrier; skip this draw
            }
            for (const auto& [pr, want] : oracle.values)
                CHECK(spectral_real(cse, ps, pr) == want);
            ++done;
        }
    }
}

TEST_CASE("spectral_real satisfies both relations exactly") {
    RatGen gen(21);
    for (GroupCase cse : {GroupCase::real(3), GroupCase::real(4)}) {
        int done = 0;
        while (done < 8) {
            Params ps{gen.next(), gen.next()};
            if (params_are_polar(cse, ps, 13)) continue;
            SpectralTable t = build_table_real(cse, ps, 13);
            CHECK(table_annihilates_all(cse, ps, t, 12));
            ++done;
        }
    }
}

TEST_CASE("restriction degeneration: t == 1 on the line r' = r + 1/2") {
    RatGen gen(31);
    GroupCase cse = GroupCase::real(4);
    for (int trial = 0; trial < 10; ++trial) {
        Rat r = gen.next();
        Params ps{r, r + Rat(1, 2)};
        if (params_are_polar(cse, ps, 8)) continue;
        for (const auto& pr : lattice_pairs(cse, 8))
            CHECK(spectral_real(cse, ps, pr) == Rat(1));
    }
}

TEST_CASE("spectral_real pole reporting") {
    GroupCase cse = GroupCase::real(3);
    // r = -rho - 1 makes (r+rho)_{a'+2k} vanish from k with a'+2k >= 2.
    Params ps{Rat(-2), Rat(1, 3)};
    CHECK_THROWS_AS(spectral_real(cse, ps, PairIndex::real(4, 0)), PoleError);
}

TEST_CASE("entire renormalization: vanishing locus is exactly L_even") {
    GroupCase cse = GroupCase::real(3);
    const int window = 12;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) {
            Params ps{-cse.rho() - Rat(i), -cse.rho_prime() - Rat(j)};
            bool expect_zero = (i >= j) && ((i - j) % 2 == 0);
            bool all_zero = true;
            for (const auto& pr : lattice_pairs(cse, window))
                if (!spectral_real_entire(cse, ps, pr).is_zero()) {
                    all_zero = false;
                    break;
                }
            CHECK(all_zero == expect_zero);
            if (!expect_zero && i >= j && (i - j) % 2 == 1) {
                // The L_odd witness pair (i+1, j): only one summand survives.
                CHECK(!spectral_real_entire(cse, ps, PairIndex::real(i + 1, j)).is_zero());
            }
        }
}

TEST_CASE("entire renormalization is Gamma(r+rho) times t at regular integer shifts") {
    GroupCase cse = GroupCase::real(4);
    RatGen gen(5);
    for (long m = 1; m <= 4; ++m) {
        Params ps{Rat(m) - cse.rho(), gen.next()};
        for (const auto& pr : lattice_pairs(cse, 8)) {
            Rat lhs = spectral_real(cse, ps, pr);
            Rat rhs = factorial(static_cast<unsigned>(m - 1)) *
                      spectral_real_entire(cse, ps, pr);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("singular-line renormalization t2") {
    GroupCase cse = GroupCase::real(3);
    // j = 0: vanishes identically beyond alpha' = 0.
    for (int i : {0, 2, 4}) {
        Rat r = -cse.rho() - Rat(i);
        for (const auto& pr : lattice_pairs(cse, 8))
            if (pr.alpha_prime() > 0)
                CHECK(spectral_real_singular_line(cse, r, 0, pr).is_zero());
        CHECK(!spectral_real_singular_line(cse, r, 0, PairIndex::real(0, 0)).is_zero());
    }
    // The t2 table solves both relations at the L_even point (exactly).
    for (auto [i, j] : {std::pair{2, 0}, std::pair{3, 1}, std::pair{2, 2}}) {
        Rat r = -cse.rho() - Rat(i);
        Params ps{r, -cse.rho_prime() - Rat(j)};
        SpectralTable t;
        t.cse = cse;
        t.params = ps;
        t.window = 11;
        for (const auto& pr : lattice_pairs(cse, 11))
            t.values[pr] = spectral_real_singular_line(cse, r, j, pr);
        CHECK(table_annihilates_all(cse, ps, t, 10));
    }
    CHECK_THROWS_AS(spectral_real_singular_line(cse, Rat(-2), 0, PairIndex::real(0, 0)),
                    ParameterError); // i - j odd: value leaves the rationals
    CHECK_THROWS_AS(spectral_real_singular_line(cse, Rat(1, 3), 0, PairIndex::real(0, 0)),
                    ParameterError);
}

TEST_CASE("juhl eigenvalues: diagonal anchor and relation to t") {
    GroupCase cse = GroupCase::real(3);
    RatGen gen(13);
    for (int N = 0; N <= 3; ++N)
        for (int trial = 0; trial < 4; ++trial) {
            Rat r = gen.next();
            for (int a = 0; a <= 10; ++a) {
                Rat expect = pochhammer(r + cse.rho() + Rat(a), static_cast<unsigned>(2 * N));
                CHECK(juhl_eigenvalue(cse, r, N, PairIndex::real(a, a)) == expect);
            }
        }
    // t3 = Gamma(r'+rho')/Gamma(r+rho) * t on the line r'+rho' = r+rho+2N,
    // checked where the gamma ratio is a clean shift.
    for (int N = 0; N <= 2; ++N)
        for (int trial = 0; trial < 5; ++trial) {
            Rat r = gen.next();
            Params ps{r, r + Rat(1, 2) + Rat(2 * N)};
            if (params_are_polar(cse, ps, 9)) continue;
            Rat ratio;
            try {
                ratio = gamma_ratio_shift(r + cse.rho(), 2 * N);
            } catch (const PoleError&) {
                continue;
            }
            for (const auto& pr : lattice_pairs(cse, 9))
                CHECK(juhl_eigenvalue(cse, r, N, pr) == ratio * spectral_real(cse, ps, pr));
        }
}

TEST_CASE("complex spectral: frozen values and both variants") {
    GroupCase cse = GroupCase::complex(2);
    Params zero{Rat(0), Rat(0)};
    CHECK(spectral_complex(cse, zero, PairIndex::complex(0, 0, 0, 0)) == Rat(1));
    CHECK(spectral_complex(cse, zero, PairIndex::complex(1, 0, 1, 0)) == Rat(1, 2));
    // The discrepancy pair: corrected 1/2 vs printed 0.
    CHECK(spectral_complex(cse, zero, PairIndex::complex(1, 1, 0, 0)) == Rat(1, 2));
    CHECK(spectral_complex_printed(cse, zero, PairIndex::complex(1, 1, 0, 0)) == Rat(0));
    // Depth-1 values matched by hand from the relations.
    CHECK(spectral_complex(cse, zero, PairIndex::complex(2, 1, 1, 0)) == Rat(5, 16));
    CHECK(spectral_complex(cse, zero, PairIndex::complex(1, 2, 0, 1)) == Rat(5, 16));
    CHECK(spectral_complex(cse, zero, PairIndex::complex(2, 2, 0, 0)) == Rat(11, 32));
}

TEST_CASE("complex calibration fixes gamma = 1 (2^k factor dropped)") {
    CalibrationReport rep = calibrate_complex_prefactor();
    CHECK(rep.gamma == Rat(1));
    CHECK(rep.corrected_max_abs_residual.is_zero());
    CHECK(!rep.printed_max_abs_residual.is_zero());
    bool found = false;
    for (auto& [pr, pairvals] : rep.oracle_vs_printed)
        if (pr == PairIndex::complex(1, 1, 0, 0)) {
            CHECK(pairvals.first == Rat(1, 2));
            CHECK(pairvals.second == Rat(0));
            found = true;
        }
    CHECK(found);
}

TEST_CASE("corrected complex closed form satisfies all four relations") {
    RatGen gen(41);
    for (GroupCase cse : {GroupCase::complex(2), GroupCase::complex(3)}) {
        int done = 0;
        while (done < 6) {
            Params ps{gen.next(), gen.next()};
            SpectralTable t;
            try {
                t = build_table_complex(cse, ps, 9, true);
            } catch (const PoleError&) {
                continue;
            }
            CHECK(table_annihilates_all(cse, ps, t, 8));
            ++done;
        }
    }
}

TEST_CASE("printed complex variant: up/diagonal rows hold, down rows recorded") {
    GroupCase cse = GroupCase::complex(2);
    Params zero{Rat(0), Rat(0)};
    SpectralTable t = build_table_complex(cse, zero, 9, false);
    bool some_down_nonzero = false;
    for (const auto& [src, d] : relation_instances(cse, 9)) {
        Rat res = row_residual(cse, zero, src, d, t);
        if (d == Direction::Q1Up || d == Direction::Q2Up) {
            CHECK(res.is_zero());
        } else if (!res.is_zero()) {
            some_down_nonzero = true;
        }
    }
    CHECK(some_down_nonzero);
}

TEST_CASE("complex restriction degeneration at r' = r + 1") {
    RatGen gen(61);
    GroupCase cse = GroupCase::complex(2);
    int done = 0;
    while (done < 10) {
        Rat r = gen.next();
        Params ps{r, r + Rat(1)};
        bool ok = true;
        try {
            for (const auto& pr : lattice_pairs(cse, 7))
                if (spectral_complex(cse, ps, pr) != Rat(1)) ok = false;
        } catch (const PoleError&) {
            continue;
        }
        CHECK(ok);
        ++done;
    }
}

TEST_CASE("plus-family spectrum") {
    GroupCase cse = GroupCase::complex(2);
    // q2 > j kills the value through (-j)_{q2}.
    CHECK(spectral_complex_plus(cse, 2, 1, PairIndex::complex(0, 2, 0, 2)).is_zero());
    CHECK(spectral_complex_plus(cse, 2, 1, PairIndex::complex(2, 2, 2, 2)).is_zero());
    // Vanishing on the finite part: q1 > j with alpha2 <= i.
    CHECK(spectral_complex_plus(cse, 2, 0, PairIndex::complex(2, 1, 1, 0)).is_zero());
    // Nonzero on the plus quotient: q1 > i, q2 <= j, p = q1 + q2.
    for (auto [i, j] : {std::pair{1, 0}, std::pair{2, 1}, std::pair{3, 1}})
        for (int q1 = i + 1; q1 <= i + 3; ++q1)
            for (int q2 = 0; q2 <= j; ++q2) {
                Rat expect = pochhammer(Rat(q1 - i), static_cast<unsigned>(i - j)) *
                             pochhammer(Rat(-j), static_cast<unsigned>(q2)) /
                             pochhammer(Rat(-i), static_cast<unsigned>(q2));
                CHECK(spectral_complex_plus(cse, i, j,
                                            PairIndex::complex(q1, q2, q1, q2)) == expect);
                CHECK(!expect.is_zero());
            }
    CHECK_THROWS_AS(spectral_complex_plus(cse, 1, 0, PairIndex::complex(2, 2, 2, 2)),
                    SupportError);
}

TEST_CASE("funk-hecke constant: odd parity and base value") {
    // Odd alpha - alpha' gives exactly zero.
    CHECK(funk_hecke_constant(3, 3, 0, 0.2, 0.1) == 0.0);
    // alpha = alpha' = 0 closed form.
    double r = 0.2, rp = 0.1;
    int n = 3;
    double expect = std::pow(2.0, r - rp + 0.5) * std::pow(M_PI, 0.5 * (n - 2)) *
                    gamma_float(0.25 * (2 * r + 2 * rp + 1)) *
                    gamma_float(0.25 * (2 * r - 2 * rp + 1)) / gamma_float(r + 0.5 * (n - 1));
    CHECK(funk_hecke_constant(n, 0, 0, r, rp) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("unitary weight values and asymptotics") {
    GroupCase cse = GroupCase::real(3);
    for (int a = 0; a <= 5; ++a)
        CHECK(unitary_weight(cse, false, 0.0, a) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(unitary_weight(cse, false, 0.5, 0) == doctest::Approx(2.0).epsilon(1e-13));
    double r = -0.7;
    for (int a = 0; a <= 200; a += 17) {
        double v = unitary_weight(cse, false, r, a) / std::pow(1.0 + a, -2.0 * r);
        CHECK(v >= 0.1);
        CHECK(v <= 10.0);
    }
}

TEST_CASE("boundedness profile domain and basic behavior") {
    CHECK_THROWS_AS(boundedness_profile(3, 0.5, 0, 5, 10), ParameterError);
    CHECK_THROWS_AS(boundedness_profile(3, -0.7, 1, 5, 10), ParameterError); // r' = 1.8 > 0
    auto prof = boundedness_profile(3, -0.7, 0, 5, 50);
    CHECK(prof.normalized[0] > 0.0);
    CHECK(prof.sup > 0.0);
    // Single term ell = 0, alpha' = 0 is positive.
    auto tiny = boundedness_profile(3, -0.7, 0, 0, 0);
    CHECK(tiny.normalized[0] > 0.0);
}
