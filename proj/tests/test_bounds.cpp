#include "a2a/bounds.hpp"
#include "a2a/dft.hpp"
#include "a2a/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace a2a;
using namespace a2a::bounds;

TEST_CASE("c1 lower bound examples") {
    CHECK(c1_lower_universal(9, 2) == 2);
    CHECK(c1_lower_universal(1, 3) == 0);
    CHECK(c1_lower_universal(5, 1) == 3);
    CHECK(c1_lower_universal(1024, 1) == 10);
    CHECK(c1_lower_universal(1025, 1) == 11);
}

TEST_CASE("c1 lower bound against floating log on exact powers and neighbours") {
    for (std::size_t p = 1; p <= 7; ++p) {
        std::size_t v = 1;
        for (std::size_t t = 0; t < 6; ++t, v *= p + 1) {
            CHECK(c1_lower_universal(v, p) == t);
            CHECK(c1_lower_universal(v + 1, p) == t + 1);
        }
    }
}

TEST_CASE("c2 lower bound examples") {
    const auto a = c2_lower_universal(4, 1);
    CHECK(a.real == doctest::Approx(2.0));
    CHECK(a.ceiling == 2);
    const auto b = c2_lower_universal(9, 2);
    CHECK(b.real == doctest::Approx(2.0));
    CHECK(b.ceiling == 2);
    const auto c = c2_lower_universal(1024, 1);
    CHECK(c.real == doctest::Approx(44.736).epsilon(1e-4));
    CHECK(c.ceiling == 45);
    CHECK_THROWS_AS((void)c2_lower_universal(1, 1), Error);
}

TEST_CASE("c2 ceiling matches the quadratic-formula root") {
    for (std::size_t p = 1; p <= 8; ++p) {
        for (std::size_t K = 2; K <= 3000; K += (K < 200 ? 1 : 37)) {
            const long double P = p;
            const long double b = -P * (P - 2);
            const long double c = 2.0L * (1.0L - K);
            const long double root = (-b + std::sqrt(b * b - 4 * P * P * c)) / (2 * P * P);
            const auto got = c2_lower_universal(K, p);
            CHECK(got.real == doctest::Approx(static_cast<double>(root)));
            // Away from integer roots the ceiling is unambiguous.
            if (std::fabs(root - std::round(root)) > 1e-9) {
                CHECK(got.ceiling == static_cast<std::size_t>(std::ceil(root)));
            } else {
                CHECK(got.ceiling == static_cast<std::size_t>(std::llround(root)));
            }
        }
    }
}

TEST_CASE("predictions") {
    CHECK(predict_costs(9, 2, Algorithm::Universal) == CostPair{2, 2});
    const PrimeField f17(17), f13(13);
    CHECK(predict_costs(16, 3, Algorithm::Dft, &f17) == CostPair{2, 2});
    CHECK(predict_costs(6, 1, Algorithm::Vandermonde, &f13) == CostPair{3, 3});
    CHECK(predict_costs(5, 1, Algorithm::Universal) == CostPair{3, 4});
    CHECK_THROWS_AS((void)predict_costs(6, 1, Algorithm::Dft, &f13), Error);
    CHECK_THROWS_AS((void)predict_costs(6, 1, Algorithm::Dft), Error);
}

TEST_CASE("predicted universal cost against the bound for large K") {
    const auto pred = predict_costs(1024, 1, Algorithm::Universal);
    CHECK(pred.c2 == 62);
    const double ratio = pred.c2 / c2_lower_universal(1024, 1).real;
    CHECK(ratio <= std::sqrt(2.0));
}

TEST_CASE("matrix-specific c1 bound") {
    const PrimeField f(17);
    std::vector<std::uint64_t> ones(81, 1);
    CHECK(specific_c1_lower(MatrixFq::from_values(PrimeField(13), 9, 9, ones), 9, 2) == 2);
    CHECK(specific_c1_lower(MatrixFq::identity(f, 9), 9, 2) == 0);
    CHECK(specific_c1_lower(dft_matrix(f, 16), 16, 3) == 2);
}

TEST_CASE("bound report collects what applies") {
    const PrimeField f(17);
    const auto r = bound_report(16, 3, &f);
    CHECK(r.c1_lower == 2);
    CHECK(r.c2_lower == 2);
    REQUIRE(r.dft.has_value());
    CHECK(*r.dft == CostPair{2, 2});
    REQUIRE(r.vandermonde.has_value());
    const auto s = bound_report(6, 1, &f);
    CHECK_FALSE(s.dft.has_value());
    const auto one = bound_report(1, 1);
    CHECK(one.c1_lower == 0);
}
