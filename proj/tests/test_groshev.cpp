#include <doctest.h>

#include <cmath>

#include "dda/errors.hpp"
#include "dda/groshev.hpp"

using namespace dda;

namespace {

MultivariableApproxFunction power_psi(double tau, int n) {
    return MultivariableApproxFunction(PowerLaw{tau}, QuasinormWeights::uniform(n));
}

} // namespace

TEST_CASE("convergence classifier on power laws") {
    CHECK(classify_convergence_sum(power_psi(3.0, 2), 2).verdict == Verdict::Converges);
    CHECK(classify_convergence_sum(power_psi(2.0, 2), 2).verdict == Verdict::Diverges);
    CHECK(classify_convergence_sum(power_psi(1.0, 3), 3).verdict == Verdict::Diverges);
}

TEST_CASE("convergence classifier on the log-refined boundary") {
    QuasinormWeights v = QuasinormWeights::uniform(3);
    MultivariableApproxFunction psi32(PowerLog{3.0, 2.0}, v);
    auto rep = classify_convergence_sum(psi32, 3);
    CHECK(rep.verdict == Verdict::Converges);
    // block sums behave like k^{-2}: check the computed blocks directly
    REQUIRE(rep.blocks.size() >= 40);
    for (int k = 10; k < 39; ++k) {
        const double sk = rep.blocks[k].second * double(k) * double(k);
        const double sk1 = rep.blocks[k + 1].second * double(k + 1) * double(k + 1);
        CHECK(sk1 == doctest::Approx(sk).epsilon(0.25));
    }
    MultivariableApproxFunction psi3h(PowerLog{3.0, 0.5}, v);
    CHECK(classify_convergence_sum(psi3h, 3).verdict == Verdict::Diverges);
}

TEST_CASE("power-law block sums follow the geometric envelope") {
    for (int n = 1; n <= 3; ++n) {
        for (double tau : {1.0, 2.5}) {
            auto rep = classify_convergence_sum(power_psi(tau, n), n);
            const double base = std::log2(rep.blocks[5].second);
            for (int k = 5; k < 40; ++k) {
                const double predicted = base + (k - 5) * (n - tau);
                CHECK(std::abs(std::log2(rep.blocks[k].second) - predicted) <= 2.0);
            }
        }
    }
}

TEST_CASE("divergence classifier on power laws") {
    CHECK(classify_divergence_sum(power_psi(3.0, 2), 2, 1, 0.75).verdict ==
          Verdict::Diverges);  // boundary exponent exactly zero
    CHECK(classify_divergence_sum(power_psi(3.0, 2), 2, 1, 0.8).verdict ==
          Verdict::Converges);
    CHECK(classify_divergence_sum(power_psi(4.0, 3), 3, 2, 1.7).verdict ==
          Verdict::Diverges);  // 1.7 < 1 + 4/5
    CHECK_THROWS_AS(classify_divergence_sum(power_psi(3.0, 2), 2, 1, 0.0), input_error);
}

TEST_CASE("divergence classifier is monotone in s") {
    auto psi = power_psi(3.0, 2);
    bool seen_diverge = false;
    for (double s = 0.95; s > 0.05; s -= 0.1) {
        const bool div = classify_divergence_sum(psi, 2, 1, s).verdict == Verdict::Diverges;
        if (div) seen_diverge = true;
        if (seen_diverge) CHECK(div);  // once divergent, smaller s stays divergent
    }
    CHECK(seen_diverge);
}

TEST_CASE("the two classifiers agree in the Lebesgue case s = m") {
    for (int m = 1; m <= 2; ++m) {
        for (int n = m; n <= 3; ++n) {
            for (double tau : {0.5, 1.0, double(n), double(n) + 0.5, double(n) + 2.0}) {
                auto psi = power_psi(tau, n);
                const bool conv_div =
                    classify_convergence_sum(psi, n).verdict == Verdict::Diverges;
                const bool div_div =
                    classify_divergence_sum(psi, n, m, double(m)).verdict == Verdict::Diverges;
                CHECK(conv_div == div_div);
            }
        }
    }
}

TEST_CASE("table families get honest verdicts") {
    QuasinormWeights v = QuasinormWeights::uniform(2);
    Table flat;
    Table cubic;
    for (int k = 0; k <= 61; ++k) {
        const double t = std::pow(2.0, k);
        flat.t.push_back(t);
        flat.y.push_back(0.3);
        cubic.t.push_back(t);
        cubic.y.push_back(std::pow(t, -3.0));
    }
    MultivariableApproxFunction psi_flat(flat, v);
    MultivariableApproxFunction psi_cubic(cubic, v);
    CHECK(classify_convergence_sum(psi_flat, 2).verdict == Verdict::Diverges);
    CHECK(classify_convergence_sum(psi_cubic, 2).verdict == Verdict::Converges);

    // slowly varying boundary-with-log table: neither envelope certifies
    Table slow;
    for (int k = 0; k <= 61; ++k) {
        slow.t.push_back(std::pow(2.0, k));
        slow.y.push_back(std::pow(2.0, -2.0 * k) / (k + 1.0));
    }
    MultivariableApproxFunction psi_slow(slow, v);
    CHECK(classify_convergence_sum(psi_slow, 2).verdict == Verdict::Undecided);
}

TEST_CASE("critical exponent formula") {
    bool warn = false;
    CHECK(critical_exponent(1, 2, 3.0, &warn) == doctest::Approx(0.75));
    CHECK(!warn);
    CHECK(critical_exponent(2, 3, 3.0, &warn) == doctest::Approx(2.0));
    CHECK(!warn);
    CHECK(critical_exponent(1, 2, 5.0, &warn) == doctest::Approx(0.5));
    CHECK(!warn);
    critical_exponent(1, 3, 2.0, &warn);
    CHECK(warn);
}

TEST_CASE("criterion report serializes to JSON") {
    auto rep = classify_convergence_sum(power_psi(3.0, 2), 2);
    const std::string j = rep.to_json();
    CHECK(j.find("\"verdict\": \"Converges\"") != std::string::npos);
    CHECK(j.find("\"kind\": \"ConvergencePart\"") != std::string::npos);
    CHECK(j.find("\"blocks\"") != std::string::npos);
}
