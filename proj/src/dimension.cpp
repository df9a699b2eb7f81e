#include "dda/dimension.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "dda/errors.hpp"
#include "dda/groshev.hpp"
#include "dda/lattice.hpp"

namespace dda {

namespace {

struct TruncationCandidate {
    std::vector<long long> a;
    double psi;
    double lip;  // gradient bound for a.f + theta over the domain
};

} // namespace

long long cover_truncated_set(const MongeManifold& M, const Shift& theta,
                              const MultivariableApproxFunction& Psi, double H, double e) {
    const int m = M.m();
    if (m < 1 || m > 2) throw input_error("cover_truncated_set: only m <= 2 is supported");
    if (!(e > 0.0) || !(H >= 1.0)) throw input_error("cover_truncated_set: need e > 0, H >= 1");
    const Box& U = M.domain();
    const double C0 = M.certify_c0();
    const double theta_lip = theta.is_zero() ? 0.0 : theta.sup_c0(U);

    std::vector<TruncationCandidate> cands;
    {
        HeightEnumerator en(H, Psi.weights());
        std::vector<long long> a;
        while (en.next(a)) {
            double l1 = 0.0;
            for (long long c : a) l1 += double(std::abs(c));
            cands.push_back({a, Psi(std::span<const long long>(a)), C0 * l1 + theta_lip});
        }
        std::stable_sort(cands.begin(), cands.end(),
                         [](const TruncationCandidate& l, const TruncationCandidate& r) {
                             return l.psi > r.psi;
                         });
    }

    std::vector<long long> cells(m);
    long long total = 1;
    for (int d = 0; d < m; ++d) {
        cells[d] = std::max<long long>(
            1, std::llround(std::ceil((U.hi[d] - U.lo[d]) / e - 1e-9)));
        if (total > (1LL << 26) / cells[d])
            throw capacity_error("cover_truncated_set: too many boxes at this scale");
        total *= cells[d];
    }

    long long occupied = 0;
    std::vector<double> x(m);
    for (long long k = 0; k < total; ++k) {
        long long rem = k;
        for (int d = 0; d < m; ++d) {
            x[d] = U.lo[d] + (rem % cells[d] + 0.5) * e;
            rem /= cells[d];
        }
        const auto f = M.eval(x);
        const double th = theta.eval(x);
        for (const auto& c : cands) {
            double s = th;
            for (size_t i = 0; i < c.a.size(); ++i) s += double(c.a[i]) * f[i];
            if (dist_to_integer(s) < c.psi + 0.5 * m * e * c.lip) {
                ++occupied;
                break;
            }
        }
    }
    return occupied;
}

double truncation_height(double e, double tau, double H_cap) {
    if (!(e > 0.0 && tau > 0.0 && H_cap >= 1.0))
        throw input_error("truncation_height: need e > 0, tau > 0, H_cap >= 1");
    return std::min(H_cap, std::pow(e, -1.0 / (tau + 1.0)));
}

DimensionEstimate estimate_box_dimension(std::span<const double> scales,
                                         std::span<const long long> counts,
                                         double bound) {
    if (scales.size() != counts.size() || scales.size() < 5)
        throw input_error("estimate_box_dimension: need >= 5 matched scales");
    double emin = scales[0], emax = scales[0];
    for (double e : scales) {
        if (!(e > 0.0)) throw input_error("estimate_box_dimension: scales must be positive");
        emin = std::min(emin, e);
        emax = std::max(emax, e);
    }
    if (std::log2(emax / emin) < 3.0 - 1e-9)
        throw input_error("estimate_box_dimension: scales must span >= 3 octaves");

    DimensionEstimate est;
    est.scales.assign(scales.begin(), scales.end());
    est.counts.assign(counts.begin(), counts.end());
    est.bound = bound;

    const size_t k = scales.size();
    bool degenerate = true;
    for (size_t i = 1; i < k; ++i) degenerate = degenerate && counts[i] == counts[0];
    if (degenerate) return est;  // slope 0, reliable stays false

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < k; ++i) {
        if (counts[i] < 1) throw input_error("estimate_box_dimension: counts must be >= 1");
        const double xi = -std::log2(scales[i]);
        const double yi = std::log2(double(counts[i]));
        sx += xi; sy += yi; sxx += xi * xi; sxy += xi * yi; syy += yi * yi;
    }
    const double nk = double(k);
    const double vxx = sxx - sx * sx / nk;
    const double vyy = syy - sy * sy / nk;
    const double vxy = sxy - sx * sy / nk;
    est.slope = vxy / vxx;
    est.r2 = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 0.0;
    est.reliable = est.r2 >= 0.98;
    return est;
}

DimensionEstimate truncated_dimension_experiment(const MongeManifold& M, const Shift& theta,
                                                 const QuasinormWeights& v, double tau,
                                                 double psi_scale, double H_cap, int k_min,
                                                 int k_max) {
    if (k_min >= k_max) throw input_error("truncated_dimension_experiment: k_min < k_max");
    std::vector<double> scales;
    std::vector<long long> counts;
    for (int k = k_min; k <= k_max; ++k) {
        const double e = std::exp2(-k);
        const double H = truncation_height(e, tau, H_cap);
        MultivariableApproxFunction Psi(PowerLaw{tau, psi_scale}, v);
        scales.push_back(e);
        counts.push_back(cover_truncated_set(M, theta, Psi, H, e));
    }
    return estimate_box_dimension(scales, counts, critical_exponent(M.m(), M.n(), tau));
}

long long cover_function_graph(const std::function<double(double)>& g, double lo, double hi,
                               double e) {
    if (!(e > 0.0 && hi > lo)) throw input_error("cover_function_graph: need e > 0, hi > lo");
    const long long cols = std::max<long long>(
        1, std::llround(std::ceil((hi - lo) / e - 1e-9)));
    long long boxes = 0;
    for (long long c = 0; c < cols; ++c) {
        const double a = lo + c * e;
        const double b = std::min(hi, a + e);
        double vmin = g(a), vmax = vmin;
        for (int s = 1; s <= 16; ++s) {
            const double val = g(a + (b - a) * s / 16.0);
            vmin = std::min(vmin, val);
            vmax = std::max(vmax, val);
        }
        boxes += std::llround(std::floor(vmax / e)) - std::llround(std::floor(vmin / e)) + 1;
    }
    return boxes;
}

std::string DimensionEstimate::to_json() const {
    nlohmann::json j;
    j["scales"] = scales;
    j["counts"] = counts;
    j["slope"] = slope;
    j["r2"] = r2;
    j["bound"] = bound;
    j["reliable"] = reliable;
    return j.dump(2);
}

} // namespace dda
