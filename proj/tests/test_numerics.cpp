#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "sbo/gamma.hpp"
#include "sbo/rational.hpp"

using namespace sbo;

TEST_CASE("Rat arithmetic stays in lowest terms with positive denominator") {
    Rat a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
    CHECK((Rat(2, 3) * Rat(9, 4)) == Rat(3, 2));
    CHECK((Rat(1, 7) - Rat(1, 7)).is_zero());
    CHECK((Rat(5, 3) / Rat(10, 9)) == Rat(3, 2));
    CHECK_THROWS_AS(Rat(1) / Rat(0), PoleError);
    CHECK_THROWS_AS(Rat(1, 0), PoleError);
}

TEST_CASE("Rat serialization round-trips p/q and p forms") {
    CHECK(Rat::parse("3/4").str() == "3/4");
    CHECK(Rat::parse("-3/4").str() == "-3/4");
    CHECK(Rat::parse("12").str() == "12");
    CHECK(Rat::parse("-6/4") == Rat(-3, 2));
    CHECK(Rat(7).str() == "7");
    CHECK_THROWS_AS(Rat::parse("x/2"), ParameterError);
    CHECK_THROWS_AS(Rat::parse("1/"), ParameterError);
    CHECK_THROWS_AS(Rat::parse("1/0"), PoleError);
}

TEST_CASE("pochhammer basics") {
    CHECK(pochhammer(Rat(1, 2), 0) == Rat(1));
    CHECK(pochhammer(Rat(1, 2), 2) == Rat(3, 4));
    CHECK(pochhammer(Rat(-2), 4).is_zero());
}

TEST_CASE("pochhammer splitting identity") {
    // (x)_{j+k} = (x)_j (x+j)_k on a deterministic sample of rationals.
    std::uint64_t s = 12345;
    auto rnd = [&]() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        long num = static_cast<long>((s >> 33) % 19) - 9;
        long den = 1 + static_cast<long>((s >> 21) % 7);
        return Rat(num, den);
    };
    for (int trial = 0; trial < 50; ++trial) {
        Rat x = rnd();
        unsigned j = static_cast<unsigned>((s >> 11) % 6);
        unsigned k = static_cast<unsigned>((s >> 7) % 6);
        CHECK(pochhammer(x, j + k) ==
              pochhammer(x, j) * pochhammer(x + Rat(static_cast<long>(j)), k));
    }
}

TEST_CASE("gamma_ratio_shift") {
    CHECK(gamma_ratio_shift(Rat(1, 2), 1) == Rat(1, 2));
    CHECK(gamma_ratio_shift(Rat(3, 2), -1) == Rat(2));
    CHECK_THROWS_AS(gamma_ratio_shift(Rat(-1), 1), PoleError);
    // Gamma(2)/Gamma(-2) has the meromorphic value (a)_m = 0.
    CHECK(gamma_ratio_shift(Rat(-2), 4).is_zero());
    // Gamma(-3)/Gamma(-1) = 1/((-3)(-2)) by the same identity.
    CHECK(gamma_ratio_shift(Rat(-1), -2) == Rat(1, 6));
    // Joint poles with a clean limit ratio: Gamma(-1)/Gamma(0) -> -1.
    CHECK(gamma_ratio_shift(Rat(0), -1) == Rat(-1));
    // A zero factor lands in the denominator: Gamma(0)/Gamma(1).
    CHECK_THROWS_AS(gamma_ratio_shift(Rat(1), -1), PoleError);
}

TEST_CASE("gamma_ratio_limit on simple poles") {
    CHECK(gamma_ratio_limit(Rat(0), Rat(1), Rat(0), Rat(1)) == Rat(1));
    CHECK(gamma_ratio_limit(Rat(-1), Rat(1), Rat(0), Rat(1)) == Rat(-1));
    CHECK(gamma_ratio_limit(Rat(-2), Rat(1), Rat(-1), Rat(2)) == Rat(-1));
    CHECK_THROWS_AS(gamma_ratio_limit(Rat(-2), Rat(1), Rat(1, 2), Rat(1)), NotBothPoles);
    CHECK_THROWS_AS(gamma_ratio_limit(Rat(-2), Rat(0), Rat(-1), Rat(1)), ParameterError);
}

TEST_CASE("gamma_ratio_limit matches the log-gamma ratio at small epsilon") {
    const double eps = 1e-6;
    struct Case {
        long a0, b0;
        long ca_num, ca_den, cb_num, cb_den;
    } cases[] = {{0, 0, 1, 1, 1, 1},
                 {-1, 0, 1, 1, 1, 1},
                 {-2, -1, 1, 1, 2, 1},
                 {-3, -1, 1, 2, 1, 1},
                 {-4, -2, 2, 1, 3, 1}};
    for (auto c : cases) {
        Rat ca(c.ca_num, c.ca_den), cb(c.cb_num, c.cb_den);
        Rat lim = gamma_ratio_limit(Rat(c.a0), ca, Rat(c.b0), cb);
        double num = log_gamma_float(c.a0 + ca.to_double() * eps) -
                     log_gamma_float(c.b0 + cb.to_double() * eps);
        double approx = std::exp(num);
        CHECK(std::abs(approx - std::abs(lim.to_double())) <=
              1e-4 * std::abs(lim.to_double()));
    }
}

TEST_CASE("ApproxReal compares only through its tolerance") {
    ApproxReal a{1.0, 1e-6};
    CHECK(a.matches(1.0 + 5e-7));
    CHECK(!a.matches(1.0 + 5e-6));
    CHECK(a.matches_rel(1.0 - 9e-7));
    CHECK(ApproxReal{3e-9, 1e-8}.is_negligible());
    CHECK(!ApproxReal{3e-7, 1e-8}.is_negligible());
}

TEST_CASE("gamma_float classical values and functional equation") {
    CHECK(gamma_float(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_float(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_float(1.5) == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_float(0.0), PoleError);
    CHECK_THROWS_AS(gamma_float(-3.0), PoleError);
    for (double x = 0.5; x <= 49.0; x += 0.485) {
        double lhs = gamma_float(x + 1.0);
        double rhs = x * gamma_float(x);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    }
}
