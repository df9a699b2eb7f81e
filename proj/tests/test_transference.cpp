#include <doctest.h>

#include <cmath>
#include <vector>

#include "dda/errors.hpp"
#include "dda/lattice.hpp"
#include "dda/transference.hpp"

using namespace dda;

TEST_CASE("exponent helpers") {
    const int t[] = {1, 3};
    CHECK(abs_t(t) == 3);
    CHECK(sum_t(t) == 4);
    CHECK(log2_Psi0(t) == -4);
    CHECK(log2_phi(0.1, t) == doctest::Approx(0.3));
    CHECK(r_scale(t, 2, 1, 2.0) == doctest::Approx(std::sqrt(12.0) * std::exp2(1.5)));
    const int neg[] = {-1, 2};
    CHECK_THROWS_AS(abs_t(neg), input_error);
}

TEST_CASE("phi psi0 product decays faster than 2^{-(3/4)|t|}") {
    // every nonzero index with |t| <= 20, all weights delta in {0, 0.10, 0.24}
    for (int t1 = 0; t1 <= 20; ++t1) {
        for (int t2 = 0; t2 <= 20; ++t2) {
            if (t1 == 0 && t2 == 0) continue;
            const int t[] = {t1, t2};
            for (int dc : {0, 10, 24}) CHECK(phi_psi0_below_three_quarters(t, dc));
        }
    }
    const int z[] = {0, 0};
    CHECK(!phi_psi0_below_three_quarters(z, 0));  // fails only at t = 0
    const int t[] = {1, 1};
    CHECK_THROWS_AS(phi_psi0_below_three_quarters(t, 25), input_error);
}

TEST_CASE("dyadic bracket") {
    const int t[] = {0, 2};
    const long long in1[] = {1, 5};
    const long long in2[] = {0, -7};
    const long long out1[] = {2, 5};
    const long long out2[] = {1, 8};
    CHECK(dyadic_bracket(in1, t));
    CHECK(dyadic_bracket(in2, t));  // max(1,|0|) = 1 sits in [1,2)
    CHECK(!dyadic_bracket(out1, t));
    CHECK(!dyadic_bracket(out2, t));
}

TEST_CASE("I-membership basics") {
    auto M = MongeManifold::veronese(2);
    const double C0 = 2.0;
    const int t[] = {0, 2};
    const std::vector<double> x{0.25};

    TransferencePoint bad{{2, 5}, 0};  // bracket violated in the first slot
    CHECK(!in_I(x, t, bad, 100.0, M, Shift::zero(), C0));
    TransferencePoint ok{{1, 4}, 0};
    CHECK(!in_I(x, t, ok, 0.0, M, Shift::zero(), C0));  // strict inequalities

    // x + 4x^2 - 1 has a zero near 0.39; huge eps makes value and gradient pass
    TransferencePoint zero{{1, 4}, -1};
    auto poly = [](double s) { return s + 4.0 * s * s - 1.0; };
    auto dpoly = [](double s) { return 1.0 + 8.0 * s; };
    const double root = root_localize(poly, dpoly, 0.39, 0.2, 0.6, 2.0);
    const std::vector<double> xr{root};
    CHECK(in_I(xr, t, zero, 64.0, M, Shift::zero(), C0));
    CHECK(!in_I(xr, t, zero, 0.0, M, Shift::zero(), C0));
}

TEST_CASE("I and H memberships are monotone in eps") {
    auto M = MongeManifold::veronese(2);
    const double C0 = 2.0;
    const int t[] = {1, 2};
    TransferencePoint alpha{{2, 5}, 0};
    const std::vector<double> x{0.1};
    bool prev_i = false, prev_h = false;
    for (double eps : {0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
        const bool bi = in_I(x, t, alpha, eps, M, Shift::zero(), C0);
        const bool bh = in_H(x, t, alpha, eps, M, C0);
        CHECK(bi >= prev_i);
        CHECK(bh >= prev_h);
        prev_i = bi;
        prev_h = bh;
    }
}

TEST_CASE("H-membership basics") {
    auto M = MongeManifold::veronese(2);
    const double C0 = 2.0;
    const int t[] = {1, 2};
    const std::vector<double> x{0.0};

    // a = 0 with a0 != 0 is excluded whenever |t| >= 2 and eps <= 1:
    // |a0| >= 1 while the allowance 2 eps Psi0 <= 2^{-2}
    TransferencePoint unit{{0, 0}, 1};
    CHECK(!in_H(x, t, unit, 1.0, M, C0));
    TransferencePoint toobig{{8, 1}, 0};  // 8 >= 2^{1+2}
    CHECK(!in_H(x, t, toobig, 100.0, M, C0));
    TransferencePoint small{{1, 2}, 0};
    CHECK(in_H(x, t, small, 100.0, M, C0));
}

TEST_CASE("intersection property holds on constructed doubly-member samples") {
    auto M = MongeManifold::veronese(2);
    for (int k : {2, 4, 6}) {
        const int t[] = {k / 2, k};
        auto rep = verify_intersection_property(M, Shift::zero(), t, 0.1, 1000, 555 + k);
        CHECK(rep.pass);
        CHECK(rep.constructed > 100);
        CHECK(rep.passes == rep.constructed);
        CHECK(rep.zero_diff_pairs == 0);
    }
}

TEST_CASE("intersection verifier edge cases") {
    auto M = MongeManifold::veronese(2);
    const int t[] = {1, 3};
    auto vac = verify_intersection_property(M, Shift::zero(), t, 0.0, 0, 1);
    CHECK(vac.pass);  // trials = 0 is a vacuous pass
    CHECK(vac.constructed == 0);
    CHECK(vac.note.find("vacuous") != std::string::npos);

    const int low[] = {0, 1};
    CHECK_THROWS_AS(verify_intersection_property(M, Shift::zero(), low, 0.1, 10, 1),
                    input_error);
    CHECK_THROWS_AS(verify_intersection_property(M, Shift::zero(), t, 0.3, 10, 1),
                    input_error);

    // a constant shift below the value allowance still constructs samples
    const int big[] = {2, 5};
    const double margin = 0.1 * std::exp2(double(log2_Psi0(big)));
    auto shifted =
        verify_intersection_property(M, Shift::constant(margin), big, 0.2, 1000, 77);
    CHECK(shifted.pass);
    CHECK(shifted.constructed > 100);
    CHECK(shifted.to_json().find("\"pass\": true") != std::string::npos);
}
