#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "reference.hpp"
#include "sepfi/errors.hpp"
#include "sepfi/quantum_fisher.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("QFI matches high-precision reference values")
{
    // 50-digit evaluations of the three-state eigenproblem, frozen.
    struct Row { double q, d, value; };
    const std::vector<Row> rows{
        {0.3, 1e-3, 0.29999994750001313}, {0.3, 0.05, 0.2998688320056206},
        {0.3, 0.2, 0.29792089534912675},  {0.3, 1.0, 0.25911295888875124},
        {0.3, 2.0, 0.2227453173539971},   {0.3, 5.0, 0.29746627894620115},
        {0.1, 2.0, 0.06689085029457019},  {0.5, 2.0, 0.408030139707139},
    };
    for (const auto& r : rows) {
        INFO("q=" << r.q << " d=" << r.d);
        CHECK_THAT(sepfi::qfi({r.q, r.d}), WithinRel(r.value, 1e-12));
    }
}

TEST_CASE("QFI agrees with the numerical three-state eigenproblem")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uq(0.02, 0.98), ud(0.1, 6.0);
    for (int i = 0; i < 300; ++i) {
        const double q = uq(rng), d = ud(rng);
        INFO("q=" << q << " d=" << d);
        CHECK_THAT(sepfi::qfi({q, d}), WithinRel(ref::qfi_three_state(q, d), 1e-9));
    }
}

TEST_CASE("the small-d path and the literal coefficient path coincide where both are accurate")
{
    sepfi::QfiOptions literal;
    literal.regularize_small_d = false;
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double d : {0.01, 0.02, 0.049}) {
            CHECK_THAT(sepfi::qfi({q, d}), WithinRel(sepfi::qfi({q, d}, literal), 1e-8));
        }
        // No jump across the switch point.
        CHECK_THAT(sepfi::qfi({q, 0.05 - 1e-9}), WithinAbs(sepfi::qfi({q, 0.05 + 1e-9}), 1e-10));
    }
}

TEST_CASE("QFI tends to q as the sources merge")
{
    for (double q : {0.1, 0.3, 0.7, 0.9}) {
        for (double d : {1e-8, 1e-6, 1e-4}) {
            CHECK_THAT(sepfi::qfi({q, d}), WithinAbs(q, 1e-7));
        }
    }
    CHECK_THROWS_AS(sepfi::qfi({0.3, 0.0}), sepfi::DomainError);
}

TEST_CASE("term decomposition")
{
    const auto t = sepfi::qfi_terms({0.3, 1.5});
    CHECK_THAT(t.cross[0][0], WithinAbs(0.0, 1e-14));
    CHECK_THAT(t.cross[1][1], WithinAbs(0.0, 1e-14));
    CHECK_THAT(t.cross[0][1], WithinRel(t.cross[1][0], 1e-14));
    CHECK(t.cross[0][1] <= 0.0);
    CHECK(t.classical[0] >= 0.0);
    CHECK(t.coherence[1] >= 0.0);
    CHECK_THAT(t.total(), WithinRel(sepfi::qfi({0.3, 1.5}), 1e-15));
}

TEST_CASE("QFI shape: minimum near d = 2, recovery towards q at large d")
{
    std::vector<double> grid;
    for (int i = 0; i <= 490; ++i) grid.push_back(0.1 + 0.01 * i);
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto c = sepfi::qfi_curve(q, grid);
        const auto it = std::min_element(c.points.begin(), c.points.end(),
                                         [](auto a, auto b) { return a.value < b.value; });
        CHECK(it->d > 1.9);
        CHECK(it->d < 2.1);
        CHECK_THAT(sepfi::qfi({q, 12.0}), WithinAbs(q, 1e-6));
    }
}

TEST_CASE("QFI is increasing in q and shifts by 1 - 2q under q -> 1 - q")
{
    for (double d : {0.3, 1.0, 2.0, 3.5}) {
        double prev = 0.0;
        for (double q = 0.05; q < 0.96; q += 0.05) {
            const double v = sepfi::qfi({q, d});
            CHECK(v > prev);
            prev = v;
        }
        // Swapping which source moves changes F by exactly 1 - 2q.
        for (double q : {0.1, 0.2, 0.3, 0.45}) {
            CHECK_THAT(sepfi::qfi({1.0 - q, d}) - sepfi::qfi({q, d}), WithinAbs(1.0 - 2.0 * q, 1e-12));
        }
    }
}

TEST_CASE("precision limit and curve validation")
{
    CHECK_THAT(sepfi::precision_limit(0.25), WithinRel(2.0, 1e-15));
    CHECK_THROWS_AS(sepfi::qfi_curve(0.3, std::vector<double>{}), sepfi::DomainError);
    CHECK_THROWS_AS(sepfi::qfi_curve(0.3, std::vector<double>{1.0, 0.5}), sepfi::DomainError);
    CHECK_THROWS_AS(sepfi::qfi_curve(0.3, std::vector<double>{0.0, 0.5}), sepfi::DomainError);
    CHECK(sepfi::parse_curve_kind("grid-oracle-QFI") == sepfi::CurveKind::GridOracleQfi);
    CHECK(sepfi::to_string(sepfi::CurveKind::CfiZero) == "CFI-zero");
    CHECK_THROWS_AS(sepfi::parse_curve_kind("qfi"), sepfi::DomainError);
}
