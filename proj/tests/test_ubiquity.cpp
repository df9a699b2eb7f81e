#include <doctest.h>

#include <cmath>
#include <vector>

#include "dda/errors.hpp"
#include "dda/ubiquity.hpp"

using namespace dda;

TEST_CASE("resonant function basics") {
    QuasinormWeights v = QuasinormWeights::uniform(2);
    ResonantFunction F{{3, -2}, 1};
    CHECK(F.height(v) == doctest::Approx(3.0));
    ResonantFunction zero{{0, 0}, 5};
    CHECK_THROWS_AS(zero.height(v), input_error);

    auto M = MongeManifold::veronese(2);
    const std::vector<double> x{0.5};
    CHECK(F.eval(M, Shift::zero(), x) == doctest::Approx(1.0 + 1.5 - 0.5));
    CHECK(F.gradient(M, Shift::zero(), x)[0] == doctest::Approx(3.0 - 2.0));
}

TEST_CASE("curve surfaces keep the localized roots when dominance holds") {
    auto M = MongeManifold::veronese(2);
    Box U0 = Box::interval(-0.9, 0.9);
    // x - 1/2 + x^2 * 0: a = (1,0) shifted to put the root at 1/2
    ResonantFunction F{{2, 0}, -1};
    auto S = trim_resonant(F, Shift::zero(), M, U0, 0.1, 0.01);
    REQUIRE(S.extra_ok);
    REQUIRE(S.points.size() == 1);
    CHECK(S.points[0][0] == doctest::Approx(0.5).epsilon(1e-9));

    // a = (1,0) with a0 = 0: single zero at the origin
    ResonantFunction G{{1, 0}, 0};
    auto SG = trim_resonant(G, Shift::zero(), M, U0, 0.1, 0.01);
    REQUIRE(SG.points.size() == 1);
    CHECK(SG.points[0][0] == doctest::Approx(0.0).epsilon(1e-9));

    // x^2 - 1/4 has dominated first derivative near x = 0: (extra) fails on U0
    ResonantFunction H{{0, 4}, -1};
    auto SH = trim_resonant(H, Shift::zero(), M, U0, 0.1, 0.01);
    CHECK(!SH.extra_ok);
    CHECK(SH.empty());
    // untrimmed, both roots +-1/2 survive
    auto SHraw = trim_resonant(H, Shift::zero(), M, U0, 0.1, 0.01, 1024, false);
    REQUIRE(SHraw.points.size() == 2);
    CHECK(SHraw.points[0][0] == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(SHraw.points[1][0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("sphere patch pathology: point zero set trims to nothing") {
    auto M = MongeManifold::sphere_patch(Box::square(-0.5, 0.5));
    Box U0 = Box::square(-0.4, 0.4);
    // F = f3 - 1 vanishes exactly at the pole (0, 0)
    ResonantFunction F{{0, 0, 1}, -1};

    // the raw zero set is (numerically) a cluster around one point
    auto raw = trim_resonant(F, Shift::zero(), M, U0, 0.1, 0.01, 512, false);
    for (const auto& pt : raw.points) {
        CHECK(std::abs(pt[0]) < 0.02);
        CHECK(std::abs(pt[1]) < 0.02);
    }

    // trimmed: no 3 rho-ball fits in a point's projection, so R_F is empty
    auto trimmed = trim_resonant(F, Shift::zero(), M, U0, 0.1, 0.01, 512, true);
    CHECK(trimmed.empty());

    // a fiber grid coarser than rho/2 is refused
    CHECK_THROWS_AS(trim_resonant(F, Shift::zero(), M, U0, 0.1, 0.001, 128, true),
                    resolution_error);
}

TEST_CASE("delta neighborhood membership") {
    auto M = MongeManifold::veronese(2);
    Box U0 = Box::interval(-0.9, 0.9);
    ResonantFunction F{{2, 0}, -1};  // root at 1/2
    auto S = trim_resonant(F, Shift::zero(), M, U0, 0.1, 0.01);

    const std::vector<double> on{0.5};
    const std::vector<double> near{0.52};
    CHECK(delta_neighborhood_member(on, S, 1e-6));
    CHECK(!delta_neighborhood_member(on, S, 0.0));  // strict
    CHECK(delta_neighborhood_member(near, S, 0.05));
    CHECK(!delta_neighborhood_member(near, S, 0.01));

    ResonantSurface empty;
    CHECK(!delta_neighborhood_member(on, empty, 1.0));

    // monotone in r on random points
    for (int k = 0; k < 50; ++k) {
        const std::vector<double> x{-0.9 + 1.8 * k / 49.0};
        bool prev = false;
        for (double r : {0.001, 0.01, 0.1, 1.0}) {
            const bool now = delta_neighborhood_member(x, S, r);
            CHECK(now >= prev);
            prev = now;
        }
    }
}

TEST_CASE("intersection conditions on a generic curve surface") {
    auto M = MongeManifold::veronese(2);
    Box U0 = Box::interval(-0.9, 0.9);
    ResonantFunction F{{2, 0}, -1};
    auto S = trim_resonant(F, Shift::zero(), M, U0, 0.1, 0.05);
    REQUIRE(!S.empty());

    const double rho_t = 0.04;
    const double lambdas[] = {rho_t / 2.0, rho_t / 4.0, rho_t / 8.0};
    auto rep = check_intersection_conditions(S, rho_t, lambdas, 1);
    CHECK(!rep.vacuous);
    CHECK(rep.c1 == doctest::Approx(1.0));
    CHECK(rep.c2 == doctest::Approx(3.0 / 0.1));
    CHECK(rep.lower_ok);
    CHECK(rep.upper_ok);
    CHECK(rep.to_json().find("\"lower_ok\": true") != std::string::npos);

    ResonantSurface empty;
    empty.p = 0.1;
    auto vac = check_intersection_conditions(empty, rho_t, lambdas, 1);
    CHECK(vac.vacuous);
    CHECK(vac.lower_ok);
    CHECK(vac.upper_ok);
}

TEST_CASE("point-like zero set violates the lower intersection condition") {
    auto M = MongeManifold::sphere_patch(Box::square(-0.5, 0.5));
    Box U0 = Box::square(-0.4, 0.4);
    ResonantFunction F{{0, 0, 1}, -1};
    auto raw = trim_resonant(F, Shift::zero(), M, U0, 0.1, 0.01, 512, false);
    REQUIRE(!raw.empty());

    // lhs ~ lambda^2 against rhs ~ lambda rho: the ratio collapses as lambda
    // shrinks, which is exactly what the trimming is for
    const double rho_t = 0.2;
    const double lambdas[] = {rho_t / 16.0};
    auto rep = check_intersection_conditions(raw, rho_t, lambdas, 1);
    CHECK(!rep.lower_ok);
    CHECK(rep.min_ratio_lower < 0.95 * rep.c1);
}

TEST_CASE("covering property at a dyadic scale") {
    auto M = MongeManifold::veronese(2);
    Box U0 = Box::interval(-0.9, 0.9);
    QuasinormWeights v = QuasinormWeights::uniform(2);
    PaperConstants consts(2, 1, M.certify_c0(), 0.5, v.v1());

    auto rep = estimate_covering_property(M, Shift::zero(), U0, 4, v, consts, 200, 2024);
    CHECK(rep.samples == 200);
    CHECK(rep.failures == 0);
    const long long outside = rep.samples - rep.in_dirichlet;
    CHECK(outside > 0);
    CHECK(rep.constructed == outside);
    CHECK(rep.covered == outside);  // the construction is a proof: 100%
    CHECK(rep.fraction == 1.0);
    CHECK(rep.floor == doctest::Approx(0.25));
    CHECK(rep.to_json().find("\"fraction\": 1.0") != std::string::npos);

    auto damped = estimate_covering_property(M, Shift::zero(), U0, 4, v, consts, 100, 7, 0.5);
    CHECK(damped.floor == doctest::Approx(0.125));

    CHECK_THROWS_AS(
        estimate_covering_property(M, Shift::zero(), U0, 0, v, consts, 100, 7), input_error);
}
