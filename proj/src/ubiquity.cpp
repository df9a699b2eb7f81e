#include "dda/ubiquity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "dda/errors.hpp"
#include "dda/lattice.hpp"

namespace dda {

double ResonantFunction::height(const QuasinormWeights& v) const {
    bool nonzero = false;
    for (long long c : a) nonzero = nonzero || c != 0;
    if (!nonzero) throw input_error("resonant function: coefficients must not all be zero");
    return eval_quasinorm(std::span<const long long>(a), v);
}

double ResonantFunction::eval(const MongeManifold& M, const Shift& theta,
                              std::span<const double> x) const {
    if (static_cast<int>(a.size()) != M.n())
        throw input_error("resonant function: coefficient length mismatch");
    const auto f = M.eval(x);
    double s = double(a0) + theta.eval(x);
    for (size_t i = 0; i < a.size(); ++i) s += double(a[i]) * f[i];
    return s;
}

std::vector<double> ResonantFunction::gradient(const MongeManifold& M, const Shift& theta,
                                               std::span<const double> x) const {
    const auto g = M.gradient(x);
    const int m = M.m();
    auto out = theta.gradient(x);
    for (int d = 0; d < m; ++d)
        for (int i = 0; i < M.n(); ++i) out[d] += double(a[i]) * g[size_t(i) * m + d];
    return out;
}

namespace {

// Bisects a sign-change bracket of s -> (F + theta)(s, rest) down to the
// floating-point noise floor; the first-coordinate dominance condition keeps
// the fiber restriction monotone, so the root is unique in the bracket.
double fiber_root(const ResonantFunction& F, const Shift& theta, const MongeManifold& M,
                  double lo, double hi, const std::vector<double>& rest) {
    auto eval1 = [&](double s) {
        std::vector<double> x{s};
        x.insert(x.end(), rest.begin(), rest.end());
        return F.eval(M, theta, x);
    };
    double flo = eval1(lo), fhi = eval1(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval1(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// All roots along the first coordinate over a fixed fiber.
std::vector<double> roots_on_fiber(const ResonantFunction& F, const Shift& theta,
                                   const MongeManifold& M, double lo1, double hi1,
                                   const std::vector<double>& rest, int scan) {
    std::vector<double> roots;
    auto eval1 = [&](double s) {
        std::vector<double> x{s};
        x.insert(x.end(), rest.begin(), rest.end());
        return F.eval(M, theta, x);
    };
    double prev_s = lo1, prev_f = eval1(lo1);
    for (int k = 1; k <= scan; ++k) {
        const double s = lo1 + (hi1 - lo1) * k / double(scan);
        const double fs = eval1(s);
        if (prev_f == 0.0)
            roots.push_back(prev_s);
        else if (fs != 0.0 && (fs < 0.0) != (prev_f < 0.0))
            roots.push_back(fiber_root(F, theta, M, prev_s, s, rest));
        prev_s = s;
        prev_f = fs;
    }
    if (prev_f == 0.0) roots.push_back(prev_s);
    return roots;
}

double sup_dist(std::span<const double> x, const std::vector<double>& pt) {
    double d = 0.0;
    for (size_t i = 0; i < pt.size(); ++i) d = std::max(d, std::abs(x[i] - pt[i]));
    return d;
}

double dist_to_surface(std::span<const double> x, const ResonantSurface& S, double cutoff) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pt : S.points) {
        best = std::min(best, sup_dist(x, pt));
        if (best < cutoff) break;
    }
    return best;
}

} // namespace

ResonantSurface trim_resonant(const ResonantFunction& F, const Shift& theta,
                              const MongeManifold& M, const Box& U0, double p,
                              double rho_at_beta, int fibers, bool trim) {
    const int m = M.m();
    if (m < 1 || m > 2) throw input_error("trim_resonant: only m <= 2 is supported");
    if (!(p > 0.0 && p < 1.0)) throw input_error("trim_resonant: p must lie in (0,1)");
    if (!(rho_at_beta > 0.0)) throw input_error("trim_resonant: rho must be positive");
    if (fibers < 2) throw input_error("trim_resonant: need at least 2 fibers");

    ResonantSurface S;
    S.F = F;
    S.m = m;
    S.p = p;
    S.rho_beta = rho_at_beta;
    S.trimmed = trim;
    S.fiber_pitch = (U0.hi[m - 1] - U0.lo[m - 1]) / fibers;
    if (m == 2 && S.fiber_pitch > rho_at_beta / 2.0)
        throw resolution_error("trim_resonant: fiber pitch exceeds rho/2; refine the grid");

    // first-coordinate dominance on a grid over U0
    S.extra_ok = true;
    {
        const int kGrid = 65;
        std::vector<double> x(m);
        const long long total = m == 1 ? kGrid : static_cast<long long>(kGrid) * kGrid;
        for (long long k = 0; k < total && S.extra_ok; ++k) {
            long long rem = k;
            for (int d = 0; d < m; ++d) {
                const long long i = rem % kGrid;
                rem /= kGrid;
                x[d] = U0.lo[d] + (U0.hi[d] - U0.lo[d]) * i / double(kGrid - 1);
            }
            const auto g = F.gradient(M, theta, x);
            double sup = 0.0;
            for (double gd : g) sup = std::max(sup, std::abs(gd));
            if (!(std::abs(g[0]) > p * sup)) S.extra_ok = false;
        }
    }
    if (trim && !S.extra_ok) return S;  // empty by definition

    if (m == 1) {
        for (double r : roots_on_fiber(F, theta, M, U0.lo[0], U0.hi[0], {}, fibers))
            S.points.push_back({r});
        // the projection lives in R^0: the trimmed set keeps everything or nothing
        return S;
    }

    const int nf = fibers + 1;  // endpoint-inclusive grid hits the midpoint exactly
    std::vector<double> root1(nf, 0.0);
    std::vector<bool> occupied(nf, false);
    std::vector<double> x2s(nf, 0.0);
    for (int j = 0; j < nf; ++j) {
        x2s[j] = U0.lo[1] + (U0.hi[1] - U0.lo[1]) * j / double(fibers);
        const auto roots =
            roots_on_fiber(F, theta, M, U0.lo[0], U0.hi[0], {x2s[j]}, 128);
        if (!roots.empty()) {
            occupied[j] = true;
            root1[j] = roots.front();  // dominance makes the fiber root unique
        }
    }

    // maximal runs of occupied fibers; keep the middle of each run, shrunk by
    // 1.5 rho at both ends (the union of half-balls of interior 3 rho-balls)
    std::vector<std::pair<double, double>> keep;
    if (trim) {
        int j = 0;
        while (j < nf) {
            if (!occupied[j]) { ++j; continue; }
            int e = j;
            while (e + 1 < nf && occupied[e + 1]) ++e;
            const double A = x2s[j], B = x2s[e];
            if (B - A >= 6.0 * rho_at_beta)
                keep.emplace_back(A + 1.5 * rho_at_beta, B - 1.5 * rho_at_beta);
            j = e + 1;
        }
    }
    for (int j2 = 0; j2 < nf; ++j2) {
        if (!occupied[j2]) continue;
        if (trim) {
            bool inside = false;
            for (const auto& [a, b] : keep) inside = inside || (x2s[j2] > a && x2s[j2] < b);
            if (!inside) continue;
        }
        S.points.push_back({root1[j2], x2s[j2]});
    }
    return S;
}

bool delta_neighborhood_member(std::span<const double> x, const ResonantSurface& S, double r) {
    if (S.empty() || !(r > 0.0)) return false;
    return dist_to_surface(x, S, r) < r;
}

std::string IntersectionConditionsReport::to_json() const {
    nlohmann::json j;
    j["vacuous"] = vacuous;
    j["c1"] = c1;
    j["c2"] = c2;
    j["min_ratio_lower"] = min_ratio_lower;
    j["max_ratio_upper"] = max_ratio_upper;
    j["lower_ok"] = lower_ok;
    j["upper_ok"] = upper_ok;
    j["pitch"] = pitch;
    return j.dump(2);
}

IntersectionConditionsReport check_intersection_conditions(const ResonantSurface& S,
                                                           double rho_t,
                                                           std::span<const double> lambdas,
                                                           int ball_samples) {
    IntersectionConditionsReport rep;
    const int m = S.m;
    const double vm = std::exp2(m);  // supremum-norm unit-ball volume
    rep.c1 = std::exp2(-2.0 * m + 3.0) / vm;
    rep.c2 = 3.0 * m * std::exp2(m) / (S.p * vm);
    if (S.empty()) {
        rep.vacuous = true;
        rep.lower_ok = rep.upper_ok = true;
        return rep;
    }
    if (!(rho_t > 0.0)) throw input_error("check_intersection_conditions: rho must be positive");
    if (ball_samples < 1) throw input_error("check_intersection_conditions: need >= 1 ball");

    rep.min_ratio_lower = std::numeric_limits<double>::infinity();
    rep.max_ratio_upper = 0.0;

    const size_t stride = std::max<size_t>(1, S.points.size() / ball_samples);
    const int gamma = m - 1;
    for (size_t ci = 0; ci < S.points.size(); ci += stride) {
        const auto& c = S.points[ci];
        for (double lam : lambdas) {
            if (!(lam > 0.0 && lam <= rho_t))
                throw input_error("check_intersection_conditions: lambda in (0, rho]");
            const double pitch = m == 1 ? lam / 64.0 : lam / 16.0;
            rep.pitch = pitch;
            const double ball_vol = std::pow(2.0 * lam, m);

            // lower bound: |B(c, rho/2) /\ Delta(R_F, lambda)|
            {
                const double half = rho_t / 2.0;
                const long long cells = std::llround(std::ceil(2.0 * half / pitch));
                long long hits = 0;
                std::vector<double> x(m);
                const long long total = m == 1 ? cells : cells * cells;
                for (long long k = 0; k < total; ++k) {
                    long long rem = k;
                    for (int d = 0; d < m; ++d) {
                        x[d] = c[d] - half + (rem % cells + 0.5) * pitch;
                        rem /= cells;
                    }
                    if (dist_to_surface(x, S, lam) < lam) ++hits;
                }
                const double lhs = double(hits) * std::pow(pitch, m);
                const double rhs = ball_vol * std::pow(rho_t / lam, gamma);
                rep.min_ratio_lower = std::min(rep.min_ratio_lower, lhs / rhs);
            }

            // upper bound: |B /\ B(c, 3 rho) /\ Delta(R_F, 3 lambda)| with a
            // surface-centred ball B of radius rho <= 3 rho
            {
                const double rB = rho_t;
                const long long cells = std::llround(std::ceil(2.0 * rB / pitch));
                long long hits = 0;
                std::vector<double> x(m);
                const long long total = m == 1 ? cells : cells * cells;
                for (long long k = 0; k < total; ++k) {
                    long long rem = k;
                    for (int d = 0; d < m; ++d) {
                        x[d] = c[d] - rB + (rem % cells + 0.5) * pitch;
                        rem /= cells;
                    }
                    if (sup_dist(x, c) >= 3.0 * rho_t) continue;
                    if (dist_to_surface(x, S, 3.0 * lam) < 3.0 * lam) ++hits;
                }
                const double lhs = double(hits) * std::pow(pitch, m);
                const double rhs = ball_vol * std::pow(rB / lam, gamma);
                rep.max_ratio_upper = std::max(rep.max_ratio_upper, lhs / rhs);
            }
        }
    }
    rep.lower_ok = rep.min_ratio_lower >= 0.95 * rep.c1;
    rep.upper_ok = rep.max_ratio_upper <= 1.05 * rep.c2;
    return rep;
}

std::string CoveringReport::to_json() const {
    nlohmann::json j;
    j["samples"] = samples;
    j["in_dirichlet"] = in_dirichlet;
    j["constructed"] = constructed;
    j["covered"] = covered;
    j["failures"] = failures;
    j["fraction"] = fraction;
    j["floor"] = floor;
    return j.dump(2);
}

CoveringReport estimate_covering_property(const MongeManifold& M, const Shift& theta,
                                          const Box& U0, int t, const QuasinormWeights& v,
                                          const PaperConstants& consts, long long N,
                                          uint64_t seed, double omega) {
    if (M.m() != 1) throw input_error("estimate_covering_property: only curves are supported");
    if (t < 1 || t > 40) throw input_error("estimate_covering_property: t in [1, 40]");
    if (N < 1) throw input_error("estimate_covering_property: need N >= 1");
    if (!(omega >= 0.0 && omega < 1.0))
        throw input_error("estimate_covering_property: omega in [0, 1)");

    const double Q = std::exp2(t);
    const double rho_Q = consts.rho(Q);
    CoveringReport rep;
    rep.samples = N;
    rep.floor = std::exp2(-double(M.m()) - 1.0) * (1.0 - omega);

    // concentric half of U0
    const double mid = 0.5 * (U0.lo[0] + U0.hi[0]);
    const double quarter = 0.25 * (U0.hi[0] - U0.lo[0]);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    for (long long k = 0; k < N; ++k) {
        const std::vector<double> x{mid + quarter * unit(rng)};
        if (dirichlet_member(x, M, Q, consts.delta, v).member) {
            ++rep.in_dirichlet;
            continue;
        }
        try {
            const auto cr = successive_minima_construct(x, M, theta, Q, consts, v);
            ++rep.constructed;
            ResonantFunction F{cr.a, cr.a0};
            auto g = [&](double s) { return F.eval(M, theta, std::vector<double>{s}); };
            auto dg = [&](double s) {
                return F.gradient(M, theta, std::vector<double>{s})[0];
            };
            // the construction certifies |g(x)| <= (n+1) C2 Q^{-n} and
            // |g'(x)| >= Q^{v1}; the zero therefore sits within rho(Q)
            const double root = root_localize(g, dg, x[0], x[0] - 4.0 * rho_Q,
                                              x[0] + 4.0 * rho_Q,
                                              0.5 * std::pow(Q, consts.v1));
            if (std::abs(root - x[0]) < rho_Q) ++rep.covered;
        } catch (const construction_error&) {
            ++rep.failures;
        } catch (const localization_error&) {
            ++rep.failures;
        }
    }
    const long long outside = rep.samples - rep.in_dirichlet;
    rep.fraction = outside == 0 ? 0.0 : double(rep.covered) / double(outside);
    return rep;
}

} // namespace dda
