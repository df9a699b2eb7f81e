#include "dda/transference.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "dda/errors.hpp"

namespace dda {

int abs_t(std::span<const int> t) {
    int m = 0;
    for (int ti : t) {
        if (ti < 0) throw input_error("transference index: t_i must be >= 0");
        m = std::max(m, ti);
    }
    return m;
}

long long sum_t(std::span<const int> t) {
    long long s = 0;
    for (int ti : t) s += ti;
    return s;
}

long long log2_Psi0(std::span<const int> t) { return -sum_t(t); }

double log2_phi(double delta, std::span<const int> t) { return delta * abs_t(t); }

double r_scale(std::span<const int> t, int n, int m, double C0) {
    return std::sqrt(2.0 * (n + 1) * m * C0) * std::exp2(abs_t(t) / 2.0);
}

bool phi_psi0_below_three_quarters(std::span<const int> t, int delta_centi) {
    if (delta_centi < 0 || delta_centi >= 25)
        throw input_error("phi_psi0 comparison: delta must be in [0, 1/4) in hundredths");
    const long long at = abs_t(t);
    // delta |t| - sum t < -(3/4)|t|, scaled by 400 to stay integral
    return 4LL * delta_centi * at + 300LL * at < 400LL * sum_t(t);
}

bool dyadic_bracket(std::span<const long long> a, std::span<const int> t) {
    if (a.size() != t.size()) throw input_error("dyadic bracket: length mismatch");
    for (size_t i = 0; i < a.size(); ++i) {
        const long long mag = std::max<long long>(1, std::abs(a[i]));
        if (mag < (1LL << t[i]) || mag >= (1LL << (t[i] + 1))) return false;
    }
    return true;
}

namespace {

double value_at(const MongeManifold& M, const Shift* theta, std::span<const double> x,
                const TransferencePoint& alpha) {
    const auto f = M.eval(x);
    double s = double(alpha.a0) + (theta ? theta->eval(x) : 0.0);
    for (size_t i = 0; i < alpha.a.size(); ++i) s += double(alpha.a[i]) * f[i];
    return s;
}

double grad_sup_at(const MongeManifold& M, const Shift* theta, std::span<const double> x,
                   const TransferencePoint& alpha) {
    const auto g = M.gradient(x);
    const int m = M.m();
    std::vector<double> tg(m, 0.0);
    if (theta) tg = theta->gradient(x);
    double sup = 0.0;
    for (int d = 0; d < m; ++d) {
        double gd = tg[d];
        for (int i = 0; i < M.n(); ++i) gd += double(alpha.a[i]) * g[size_t(i) * m + d];
        sup = std::max(sup, std::abs(gd));
    }
    return sup;
}

} // namespace

bool in_I(std::span<const double> x, std::span<const int> t, const TransferencePoint& alpha,
          double eps, const MongeManifold& M, const Shift& theta, double C0) {
    if (static_cast<int>(t.size()) != M.n()) throw input_error("in_I: index length mismatch");
    if (static_cast<int>(alpha.a.size()) != M.n())
        throw input_error("in_I: coefficient length mismatch");
    if (!dyadic_bracket(alpha.a, t)) return false;
    const double psi0 = std::exp2(double(log2_Psi0(t)));
    if (!(std::abs(value_at(M, &theta, x, alpha)) < eps * psi0)) return false;
    TransferencePoint hom{alpha.a, 0};
    return grad_sup_at(M, &theta, x, hom) < eps * r_scale(t, M.n(), M.m(), C0);
}

bool in_H(std::span<const double> x, std::span<const int> t, const TransferencePoint& alpha,
          double eps, const MongeManifold& M, double C0) {
    if (static_cast<int>(t.size()) != M.n()) throw input_error("in_H: index length mismatch");
    if (static_cast<int>(alpha.a.size()) != M.n())
        throw input_error("in_H: coefficient length mismatch");
    for (size_t i = 0; i < alpha.a.size(); ++i)
        if (!(std::abs(alpha.a[i]) < (1LL << (t[i] + 2)))) return false;
    const double psi0 = std::exp2(double(log2_Psi0(t)));
    if (!(std::abs(value_at(M, nullptr, x, alpha)) < 2.0 * eps * psi0)) return false;
    return grad_sup_at(M, nullptr, x, alpha) < 2.0 * eps * r_scale(t, M.n(), M.m(), C0);
}

std::string IntersectionReport::to_json() const {
    nlohmann::json j;
    j["trials"] = trials;
    j["constructed"] = constructed;
    j["passes"] = passes;
    j["zero_diff_pairs"] = zero_diff_pairs;
    j["pass"] = pass;
    j["note"] = note;
    j["counterexamples"] = nlohmann::json::array();
    return j.dump(2);
}

IntersectionReport verify_intersection_property(const MongeManifold& M, const Shift& theta,
                                                std::span<const int> t, double delta,
                                                long long trials, uint64_t seed) {
    if (M.m() != 1) throw input_error("intersection verifier: only curves are supported");
    if (static_cast<int>(t.size()) != M.n())
        throw input_error("intersection verifier: index length mismatch");
    if (abs_t(t) < 2) throw input_error("intersection verifier: need |t| >= 2");
    if (!(delta >= 0.0 && delta < 0.25))
        throw input_error("intersection verifier: delta in [0, 1/4)");
    {
        // the sampler jitters around a point where the curve components vanish
        const std::vector<double> origin(M.m(), 0.0);
        for (double fi : M.eval(origin))
            if (fi != 0.0)
                throw input_error("intersection verifier: curve must vanish at the origin");
    }

    const int n = M.n();
    const double C0 = std::max(M.certify_c0(), 1.0);
    const double eps = std::exp2(log2_phi(delta, t));
    const double psi0 = std::exp2(double(log2_Psi0(t)));
    const double r = r_scale(t, n, M.m(), C0);

    IntersectionReport rep;
    rep.trials = trials;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    long long counterexamples = 0;
    for (long long trial = 0; trial < trials; ++trial) {
        TransferencePoint alpha, alpha2;
        alpha.a.assign(n, 0);
        std::vector<long long> diff(n, 0);
        bool feasible = true;
        double coef_sum = 1.0;
        for (int i = 0; i < n; ++i) {
            const long long lo = 1LL << t[i];
            const long long hi = (1LL << (t[i] + 1)) - 1;
            long long mag, step = 0;
            if (i == n - 1) {
                // room for a strictly positive octave-preserving difference
                if (hi - 1 < lo) { feasible = false; break; }
                mag = lo + static_cast<long long>(unit(rng) * double(hi - 1 - lo + 1));
                step = 1 + static_cast<long long>(unit(rng) * double(std::min<long long>(3, hi - mag)));
            } else if (t[i] == 0) {
                mag = static_cast<long long>(unit(rng) * 2.0);  // 0 or 1
                step = 0;
            } else {
                mag = lo + static_cast<long long>(unit(rng) * double(hi - lo + 1));
                step = 0;
            }
            const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
            alpha.a[i] = static_cast<long long>(sign) * mag;
            diff[i] = static_cast<long long>(sign) * step;
            coef_sum += double(mag + step);
        }
        if (!feasible) continue;
        alpha2.a = alpha.a;
        for (int i = 0; i < n; ++i) alpha2.a[i] += diff[i];
        if (alpha2.a == alpha.a) continue;

        // gradient headroom at the origin comes from the low-order coefficient
        if (!(std::abs(double(alpha.a[0])) + 1.0 < 0.5 * eps * r)) continue;

        const double theta0 = theta.eval(std::vector<double>(1, 0.0));
        if (!(std::abs(theta0) < 0.25 * eps * psi0)) continue;

        const double x_cap = std::min(0.45, 0.2 * eps * psi0 / coef_sum);
        const double x1 = (unit(rng) < 0.5 ? -1.0 : 1.0) * x_cap * (0.2 + 0.8 * unit(rng));
        const std::vector<double> x{x1};

        if (!in_I(x, t, alpha, eps, M, theta, C0)) continue;
        if (!in_I(x, t, alpha2, eps, M, theta, C0)) continue;
        ++rep.constructed;

        // the difference must satisfy the subtracted system and land in H
        TransferencePoint dd{diff, alpha2.a0 - alpha.a0};
        bool ok = std::abs(value_at(M, nullptr, x, dd)) < 2.0 * eps * psi0;
        ok = ok && grad_sup_at(M, nullptr, x, dd) < 2.0 * eps * r;
        for (int i = 0; i < n; ++i) ok = ok && std::abs(diff[i]) < (1LL << (t[i] + 2));
        ok = ok && in_H(x, t, dd, eps, M, C0);
        if (ok) ++rep.passes;
        else ++counterexamples;

        // pairs differing only in a0 can never be doubly member
        TransferencePoint shifted{alpha.a, alpha.a0 + 1};
        if (in_I(x, t, shifted, eps, M, theta, C0)) ++rep.zero_diff_pairs;
    }

    rep.pass = counterexamples == 0 && rep.zero_diff_pairs == 0;
    if (rep.constructed == 0)
        rep.note = "vacuous: no doubly-member sample constructed within the trial budget";
    else
        rep.note = "constructed " + std::to_string(rep.constructed) + " doubly-member samples";
    return rep;
}

} // namespace dda
