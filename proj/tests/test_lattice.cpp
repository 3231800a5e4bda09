#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "sbo/lattice.hpp"
#include "sbo/spectral.hpp"

using namespace sbo;

namespace {

// Deterministic small rationals for property sweeps.
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

} // namespace

TEST_CASE("GroupCase constants") {
    GroupCase re = GroupCase::real(5);
    CHECK(re.rho() == Rat(2));
    CHECK(re.rho_prime() == Rat(3, 2));
    CHECK(re.rho() - re.rho_prime() == Rat(1, 2));
    GroupCase cx = GroupCase::complex(3);
    CHECK(cx.rho() == Rat(3));
    CHECK(cx.rho_prime() == Rat(2));
    CHECK(cx.rho() - cx.rho_prime() == Rat(1));
    CHECK_THROWS_AS(GroupCase::real(2), ParameterError);
    CHECK_THROWS_AS(GroupCase::complex(1), ParameterError);
}

TEST_CASE("PairIndex validation, parsing, reduced coordinates") {
    CHECK_THROWS_AS(PairIndex::real(3, 0), ParameterError);  // odd parity
    CHECK_THROWS_AS(PairIndex::real(1, 2), ParameterError);  // a' > a
    CHECK_THROWS_AS(PairIndex::complex(2, 1, 1, 1), ParameterError); // defect mismatch
    PairIndex p = PairIndex::parse(Family::Real, "4,2");
    CHECK(p.alpha() == 4);
    CHECK(p.alpha_prime() == 2);
    CHECK(p.str() == "4,2");
    PairIndex q = PairIndex::parse(Family::Complex, "2,1;1,0");
    CHECK(q.p() == 3);
    CHECK(q.q1() == 1);
    CHECK(q.q2() == 0);
    CHECK(q.str() == "2,1;1,0");
}

TEST_CASE("sigma eigenvalues") {
    GroupCase re = GroupCase::real(3);
    CHECK(sigma(re, 0) == Rat(0));
    CHECK(sigma(re, 2) == Rat(6));
    CHECK(sigma_prime(re, 2) == Rat(4));
    GroupCase cx = GroupCase::complex(2);
    CHECK(sigma(cx, 1, 1) == Rat(8));
    CHECK(sigma_prime(cx, 1, 0) == Rat(2));
}

TEST_CASE("lambda closed formulas: spot values") {
    GroupCase re = GroupCase::real(4);
    auto up = lambda_closed(re, PairIndex::real(3, 1), Direction::APrimeUp);
    CHECK(up[0].second == Rat(3 + 1 + 2, 2 * 3 + 2)); // (a+a'+n-2)/(2a+n-2)
    CHECK(up[1].second == Rat(2, 8));
    auto diag = lambda_closed(re, PairIndex::real(2, 2), Direction::APrimeUp);
    CHECK(diag[1].second.is_zero()); // a = a' kills the down-left neighbor
    GroupCase cx = GroupCase::complex(3);
    auto q1up = lambda_closed(cx, PairIndex::complex(2, 1, 1, 0), Direction::Q1Up);
    CHECK(q1up[0].second == Rat(1 + 1 + 3 - 1, 2 + 1 + 3 - 1)); // (a1'+a2+n-1)/(a1+a2+n-1)
}

TEST_CASE("lambda identities and agreement of both sources") {
    for (GroupCase cse : {GroupCase::real(3), GroupCase::real(4), GroupCase::real(5)}) {
        for (int a = 0; a <= 12; ++a)
            for (int b = a % 2; b <= a; b += 2) {
                PairIndex pr = PairIndex::real(a, b);
                for (Direction d : directions_for(cse)) {
                    if (!direction_valid(cse, pr, d)) continue;
                    auto closed = lambda_closed(cse, pr, d);
                    auto lemma = lambda_from_lemma(cse, pr, d);
                    Rat sum(0), weighted(0);
                    for (int i = 0; i < 2; ++i) {
                        CHECK(closed[i].second == lemma[i].second);
                        sum += closed[i].second;
                        weighted += closed[i].second *
                                    (sigma(cse, closed[i].first.a1, closed[i].first.a2) -
                                     sigma(cse, pr.a1, pr.a2));
                    }
                    CHECK(sum == Rat(1));
                    Rat target = sigma_prime(cse, closed[0].first.b1, closed[0].first.b2) -
                                 sigma_prime(cse, pr.b1, pr.b2) +
                                 Rat(2) * (cse.rho() - cse.rho_prime());
                    CHECK(weighted == target);
                }
            }
    }
    for (GroupCase cse : {GroupCase::complex(2), GroupCase::complex(3)}) {
        for (const auto& pr : lattice_pairs(cse, 12)) {
            for (Direction d : directions_for(cse)) {
                if (!direction_valid(cse, pr, d)) continue;
                auto closed = lambda_closed(cse, pr, d);
                auto lemma = lambda_from_lemma(cse, pr, d);
                Rat sum(0);
                for (int i = 0; i < 2; ++i) {
                    CHECK(closed[i].second == lemma[i].second);
                    sum += closed[i].second;
                }
                CHECK(sum == Rat(1));
            }
        }
    }
}

TEST_CASE("adjacency symmetry of the structural stencil") {
    // (alpha;alpha') <-> (beta;beta') realized by nonzero lambda is symmetric.
    GroupCase cse = GroupCase::real(4);
    auto reverse_dir = [](Direction d) {
        return d == Direction::APrimeUp ? Direction::APrimeDown : Direction::APrimeUp;
    };
    for (int a = 0; a <= 8; ++a)
        for (int b = a % 2; b <= a; b += 2) {
            PairIndex pr = PairIndex::real(a, b);
            for (Direction d : directions_for(cse)) {
                if (!direction_valid(cse, pr, d)) continue;
                for (auto& [nb, lam] : lambda_closed(cse, pr, d)) {
                    if (lam.is_zero()) continue;
                    bool found = false;
                    Direction rd = reverse_dir(d);
                    REQUIRE(direction_valid(cse, nb, rd));
                    for (auto& [back, lam2] : lambda_closed(cse, nb, rd))
                        if (back == pr && !lam2.is_zero()) found = true;
                    CHECK(found);
                }
            }
        }
}

TEST_CASE("relation_row frozen example and structural zeros") {
    // n=3, (0,0), direction up, r=r'=0: enforces t_{1,1} = (1/2) t_{0,0}.
    GroupCase cse = GroupCase::real(3);
    Params ps{Rat(0), Rat(0)};
    auto row = relation_row(cse, ps, PairIndex::real(0, 0), Direction::APrimeUp);
    REQUIRE(row.size() == 3);
    CHECK(row[0].first == PairIndex::real(0, 0));
    CHECK(row[1].first == PairIndex::real(1, 1));
    CHECK(row[0].second / -row[1].second == Rat(1, 2));
    CHECK(row[2].second.is_zero()); // off-lattice neighbor retained at 0

    // Complex n=2, (p,q1,q2) = (1,1,0), direction q1-1, r=r'=0:
    // enforces 2 t_{2,0,0} = -1 + 2 (with t_{0,0,0}=1, t_{1,1,0}=1/2).
    GroupCase cx = GroupCase::complex(2);
    auto crow = relation_row(cx, ps, PairIndex::complex(1, 0, 1, 0), Direction::Q1Down);
    // Row terms: src (1,0;1,0), neighbors (0,0;0,0) and (1,1;0,0).
    Rat src, c00, c200;
    for (auto& [key, coeff] : crow) {
        if (key == PairIndex::complex(1, 0, 1, 0)) src = coeff;
        if (key == PairIndex::complex(0, 0, 0, 0)) c00 = coeff;
        if (key == PairIndex::complex(1, 1, 0, 0)) c200 = coeff;
    }
    // src * (1/2) + c00 * 1 + c200 * t_{2,0,0} = 0  =>  t_{2,0,0} = 1/2.
    Rat t200 = -(src * Rat(1, 2) + c00) / c200;
    CHECK(t200 == Rat(1, 2));
}

TEST_CASE("all-ones table annihilates rows exactly when r' - r = rho - rho'") {
    RatGen gen(99);
    for (GroupCase cse : {GroupCase::real(3), GroupCase::real(4), GroupCase::complex(2),
                          GroupCase::complex(3)}) {
        for (int trial = 0; trial < 10; ++trial) {
            Rat r = gen.next();
            Params on{r, r + cse.rho() - cse.rho_prime()};
            Params off{r, r + cse.rho() - cse.rho_prime() + Rat(1, 3)};
            bool all_zero_on = true;
            bool all_zero_off = true;
            for (const auto& [src, d] : relation_instances(cse, 6)) {
                Rat acc_on(0), acc_off(0);
                for (auto& [key, coeff] : relation_row(cse, on, src, d)) acc_on += coeff;
                for (auto& [key, coeff] : relation_row(cse, off, src, d)) acc_off += coeff;
                if (!acc_on.is_zero()) all_zero_on = false;
                if (!acc_off.is_zero()) all_zero_off = false;
            }
            CHECK(all_zero_on);
            CHECK(!all_zero_off);
        }
    }
}

TEST_CASE("singular set membership") {
    GroupCase re = GroupCase::real(3);
    auto c1 = singular_set_membership(re, {Rat(-1), Rat(-1, 2)});
    CHECK(c1.kind == SingularClass::LEven);
    CHECK(c1.i == 0);
    CHECK(c1.j == 0);
    auto c2 = singular_set_membership(re, {Rat(-2), Rat(-1, 2)});
    CHECK(c2.kind == SingularClass::LOdd);
    CHECK(c2.i == 1);
    CHECK(c2.j == 0);
    CHECK(singular_set_membership(re, {Rat(-1), Rat(-3, 2)}).kind == SingularClass::Generic);
    CHECK(singular_set_membership(re, {Rat(1, 3), Rat(-1, 2)}).kind == SingularClass::Generic);

    GroupCase cx = GroupCase::complex(2);
    CHECK(singular_set_membership(cx, {Rat(-2), Rat(-3)}).kind == SingularClass::Generic);
    auto c3 = singular_set_membership(cx, {Rat(-4), Rat(-1)});
    CHECK(c3.kind == SingularClass::LComplex);
    CHECK(c3.i == 1);
    CHECK(c3.j == 0);
}

TEST_CASE("support masks") {
    GroupCase re = GroupCase::real(3);
    CHECK(support_contains(re, {CompositionFactor::F, 2}, 2));
    CHECK(!support_contains(re, {CompositionFactor::F, 2}, 3));
    CHECK(support_contains(re, {CompositionFactor::T, 2}, 3));
    CHECK(support_contains(re, CompositionFactor::full(), 100));
    GroupCase cx = GroupCase::complex(2);
    CHECK(support_contains(cx, {CompositionFactor::Tplus, 1}, 2, 1));
    CHECK(!support_contains(cx, {CompositionFactor::Tplus, 1}, 1, 2));
    CHECK(support_contains(cx, {CompositionFactor::Tminus, 1}, 1, 2));
    CHECK(CompositionFactor::parse("T+(1)").kind == CompositionFactor::Tplus);
    CHECK(CompositionFactor::parse("F(3)").index == 3);
    CHECK_THROWS_AS(support_contains(re, {CompositionFactor::Tplus, 1}, 2),
                    ParameterError);
}

TEST_CASE("lattice enumeration counts") {
    GroupCase re = GroupCase::real(3);
    CHECK(lattice_pairs(re, 10).size() == 36);
    GroupCase cx = GroupCase::complex(2);
    std::size_t count = 0;
    for (int a1 = 0; a1 <= 4; ++a1)
        for (int a2 = 0; a2 <= 4; ++a2) count += std::min(a1, a2) + 1;
    CHECK(lattice_pairs(cx, 4).size() == count);
}
