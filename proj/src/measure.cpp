#include "dda/measure.hpp"

#include <algorithm>
#include <cmath>

#include "dda/errors.hpp"
#include "dda/lattice.hpp"

namespace dda {

namespace {

struct WitnessCandidate {
    std::vector<long long> a;
    double psi;       // Psi(a)
    bool always;      // psi >= 1/2: every point admits this tuple
};

// Tuples in the height window, largest allowance first for early exit.
std::vector<WitnessCandidate> collect_candidates(const MultivariableApproxFunction& Psi,
                                                 double H_lo, double H_hi) {
    const auto& v = Psi.weights();
    std::vector<WitnessCandidate> out;
    HeightEnumerator en(H_hi, v);
    std::vector<long long> a;
    while (en.next(a)) {
        const double h = eval_quasinorm(std::span<const long long>(a), v);
        if (h <= H_lo) continue;
        const double p = Psi(std::span<const long long>(a));
        out.push_back({a, p, p >= 0.5});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const WitnessCandidate& l, const WitnessCandidate& r) {
                         return l.psi > r.psi;
                     });
    return out;
}

bool has_witness(const MongeManifold& M, const Shift& theta,
                 const std::vector<WitnessCandidate>& cands, const std::vector<double>& x) {
    const auto f = M.eval(x);
    const double th = theta.eval(x);
    for (const auto& c : cands) {
        if (c.always) return true;
        double s = th;
        for (size_t i = 0; i < c.a.size(); ++i) s += double(c.a[i]) * f[i];
        if (dist_to_integer(s) < c.psi) return true;
    }
    return false;
}

} // namespace

MeasureEstimate fraction_with_witness_in(const MongeManifold& M, const Shift& theta,
                                         const MultivariableApproxFunction& Psi, const Box& B,
                                         double H_lo, double H_hi, long long N, uint64_t seed,
                                         int workers) {
    if (N < 1000) throw input_error("fraction_with_witness_in: need N >= 1000");
    const auto cands = collect_candidates(Psi, H_lo, H_hi);
    return estimate_fraction(B, N, seed, workers, [&](const std::vector<double>& x) {
        return has_witness(M, theta, cands, x);
    });
}

MeasureEstimate estimate_approximable_fraction(const MongeManifold& M, const Shift& theta,
                                               const MultivariableApproxFunction& Psi,
                                               const Box& B, double H, long long N,
                                               uint64_t seed, int workers) {
    return fraction_with_witness_in(M, theta, Psi, B, 0.5, H, N, seed, workers);
}

std::vector<DichotomyRow> dichotomy_experiment(const MongeManifold& M, const Shift& theta,
                                               const QuasinormWeights& v,
                                               std::span<const double> taus,
                                               std::span<const double> H_schedule,
                                               DichotomyMode mode, const Box& B, long long N,
                                               uint64_t seed, int workers) {
    std::vector<DichotomyRow> rows;
    for (double tau : taus) {
        DichotomyRow row;
        row.tau = tau;
        MultivariableApproxFunction Psi(PowerLaw{tau}, v);
        for (double H : H_schedule) {
            const double lo = mode == DichotomyMode::Cumulative ? 0.5 : H;
            const double hi = mode == DichotomyMode::Cumulative ? H : 2.0 * H;
            const auto est =
                fraction_with_witness_in(M, theta, Psi, B, lo, hi, N, seed, workers);
            row.fractions.emplace_back(H, est.fraction);
        }
        row.trend = row.fractions.back().second - row.fractions.front().second;
        rows.push_back(std::move(row));
    }
    return rows;
}

GoodTestResult good_function_test(const std::function<double(const std::vector<double>&)>& g,
                                  const Box& B, double C, double alpha,
                                  std::span<const double> eps_grid, int grid_per_dim) {
    if (B.dim() < 1 || B.dim() > 2)
        throw input_error("good_function_test: only m <= 2 is supported");
    if (grid_per_dim < (1 << 10))
        throw input_error("good_function_test: need at least 2^10 grid points per dimension");

    const int m = B.dim();
    const long long total =
        m == 1 ? grid_per_dim : static_cast<long long>(grid_per_dim) * grid_per_dim;
    std::vector<double> vals(static_cast<size_t>(total));
    std::vector<double> x(m);
    double sup = 0.0;
    for (long long k = 0; k < total; ++k) {
        long long rem = k;
        for (int d = 0; d < m; ++d) {
            const long long i = rem % grid_per_dim;
            rem /= grid_per_dim;
            x[d] = B.lo[d] + (B.hi[d] - B.lo[d]) * (i + 0.5) / double(grid_per_dim);
        }
        vals[static_cast<size_t>(k)] = std::abs(g(x));
        sup = std::max(sup, vals[static_cast<size_t>(k)]);
    }

    GoodTestResult res;
    res.sup = sup;
    res.pass = true;
    if (sup == 0.0) return res;  // identically zero: nothing to test

    std::sort(vals.begin(), vals.end());
    for (double eps : eps_grid) {
        if (!(eps > 0.0 && eps <= 1.0)) throw input_error("good_function_test: eps in (0,1]");
        const auto below =
            std::lower_bound(vals.begin(), vals.end(), eps * sup) - vals.begin();
        const double measure_fraction = double(below) / double(total);
        const double allowance = C * std::pow(eps, alpha);
        const double ratio = measure_fraction / allowance;
        if (ratio > res.worst_ratio) {
            res.worst_ratio = ratio;
            res.worst_eps = eps;
        }
        if (measure_fraction > 1.05 * allowance) res.pass = false;
    }
    return res;
}

NiceTestResult nice_test(const MongeManifold& M, const Box& B, double delta,
                         const QuasinormWeights& v, std::span<const double> Qs, long long N,
                         uint64_t seed, int workers, double C_config) {
    if (Qs.empty()) throw input_error("nice_test: empty Q schedule");
    NiceTestResult res;
    for (double Q : Qs) {
        const auto est = estimate_fraction(B, N, seed, workers, [&](const std::vector<double>& x) {
            return dirichlet_member(x, M, Q, delta, v).member;
        });
        res.fractions.emplace_back(Q, est.fraction);
    }
    const size_t tail_start = res.fractions.size() / 2;
    for (size_t i = tail_start; i < res.fractions.size(); ++i)
        res.tail_max = std::max(res.tail_max, res.fractions[i].second);
    res.bound = C_config * delta;
    res.within = res.tail_max <= res.bound;
    return res;
}

BkmCheckResult bkm_bound_check(const MongeManifold& M, const Shift& theta, const Box& B,
                               std::span<const long long> a, double delta, int grid_per_dim,
                               bool enforce_gradient) {
    if (!(delta > 0.0)) throw input_error("bkm_bound_check: delta must be positive");
    if (static_cast<int>(a.size()) != M.n())
        throw input_error("bkm_bound_check: coefficient length mismatch");
    const int m = M.m();
    const int n = M.n();

    BkmCheckResult res;
    // second-derivative bound over the box, for every component of (f, theta)
    double L = 0.0;
    {
        const int kGrid = 65;
        std::vector<double> x(m);
        std::vector<int> idx(m, 0);
        const long long total = m == 1 ? kGrid : static_cast<long long>(kGrid) * kGrid;
        for (long long k = 0; k < total; ++k) {
            long long rem = k;
            for (int d = 0; d < m; ++d) {
                const long long i = rem % kGrid;
                rem /= kGrid;
                x[d] = B.lo[d] + (B.hi[d] - B.lo[d]) * i / double(kGrid - 1);
            }
            for (int c = 0; c < n; ++c)
                for (double h : M.hessian(c, x)) L = std::max(L, std::abs(h));
            for (double h : theta.hessian(x)) L = std::max(L, std::abs(h));
        }
    }
    res.L = L;
    double r = (B.hi[0] - B.lo[0]) / 2.0;
    for (int d = 1; d < m; ++d) r = std::min(r, (B.hi[d] - B.lo[d]) / 2.0);
    res.r = r;
    long long qn = 1;
    for (long long c : a) qn = std::max(qn, std::abs(c));
    res.qnorm = double(qn);
    res.threshold = std::sqrt(double(n + 1) * m * L * res.qnorm);
    res.applicable = L > 0.0 && res.qnorm >= 1.0 / (4.0 * (n + 1) * L * r * r);
    if (!res.applicable) return res;

    const long long total =
        m == 1 ? grid_per_dim : static_cast<long long>(grid_per_dim) * grid_per_dim;
    long long hits = 0;
    std::vector<double> x(m);
    for (long long k = 0; k < total; ++k) {
        long long rem = k;
        for (int d = 0; d < m; ++d) {
            const long long i = rem % grid_per_dim;
            rem /= grid_per_dim;
            x[d] = B.lo[d] + (B.hi[d] - B.lo[d]) * (i + 0.5) / double(grid_per_dim);
        }
        const auto f = M.eval(x);
        const auto grad = M.gradient(x);
        const auto tg = theta.gradient(x);
        double s = theta.eval(x);
        for (int i = 0; i < n; ++i) s += double(a[i]) * f[i];
        if (!(dist_to_integer(s) < delta)) continue;
        if (enforce_gradient) {
            double gsup = 0.0;
            for (int d = 0; d < m; ++d) {
                double gd = tg[d];
                for (int i = 0; i < n; ++i) gd += double(a[i]) * grad[size_t(i) * m + d];
                gsup = std::max(gsup, std::abs(gd));
            }
            if (gsup < res.threshold) continue;
        }
        ++hits;
    }
    res.fraction = double(hits) / double(total);
    res.ratio = res.fraction / delta;
    return res;
}

} // namespace dda
