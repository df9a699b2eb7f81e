#include "dda/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "dda/errors.hpp"

namespace dda {

namespace {

constexpr long long kMaxLimit = (1LL << 31);

long long coordinate_limit(double Q, double vi) {
    // Largest k with k^{1/vi} <= Q, consistent with eval_quasinorm's pow calls.
    if (!(Q >= 0.0)) return 0;
    double approx = std::pow(Q, vi);
    if (approx > double(kMaxLimit))
        throw capacity_error("height box: Q^{v_i} exceeds the integer range");
    long long L = static_cast<long long>(std::floor(approx));
    while (L > 0 && std::pow(double(L), 1.0 / vi) > Q) --L;
    while (std::pow(double(L + 1), 1.0 / vi) <= Q) ++L;
    return L;
}

} // namespace

HeightBox HeightBox::make(double Q, const QuasinormWeights& v) {
    if (!(Q >= 1.0)) throw input_error("height box: Q must be >= 1");
    HeightBox box;
    box.limits.reserve(v.n());
    for (int i = 0; i < v.n(); ++i) box.limits.push_back(coordinate_limit(Q, v[i]));
    // capacity check on the full product
    __int128 prod = 1;
    for (long long L : box.limits) {
        prod *= static_cast<__int128>(2 * L + 1);
        if (prod > (__int128(1) << 62))
            throw capacity_error("height box: enumeration count overflows");
    }
    return box;
}

long long HeightBox::count() const {
    __int128 prod = 1;
    for (long long L : limits) prod *= static_cast<__int128>(2 * L + 1);
    return static_cast<long long>(prod - 1);
}

HeightEnumerator::HeightEnumerator(double Q, const QuasinormWeights& v)
    : box_(HeightBox::make(Q, v)) {
    cur_.resize(box_.limits.size());
}

bool HeightEnumerator::next(std::vector<long long>& out) {
    const int n = static_cast<int>(box_.limits.size());
    if (done_) return false;
    if (!started_) {
        for (int i = 0; i < n; ++i) cur_[i] = -box_.limits[i];
        started_ = true;
    } else {
        int i = n - 1;
        while (i >= 0 && cur_[i] == box_.limits[i]) {
            cur_[i] = -box_.limits[i];
            --i;
        }
        if (i < 0) {
            done_ = true;
            return false;
        }
        ++cur_[i];
    }
    if (std::all_of(cur_.begin(), cur_.end(), [](long long c) { return c == 0; })) {
        return next(out);  // skip the origin
    }
    out = cur_;
    return true;
}

std::vector<std::vector<long long>> enumerate_heights(double Q, const QuasinormWeights& v) {
    HeightEnumerator en(Q, v);
    if (en.box().count() > (1LL << 26))
        throw capacity_error("enumerate_heights: list would exceed desk scale");
    std::vector<std::vector<long long>> out;
    out.reserve(static_cast<size_t>(en.box().count()));
    std::vector<long long> a;
    while (en.next(a)) out.push_back(a);
    return out;
}

long long nearest_integer_completion(double s) {
    return -static_cast<long long>(std::nearbyint(s));
}

double dist_to_integer(double s) {
    return std::abs(s - std::nearbyint(s));
}

namespace {

double dot_f(std::span<const long long> a, const std::vector<double>& f) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += double(a[i]) * f[i];
    return s;
}

} // namespace

Witness best_dual_approx(std::span<const double> x, const MongeManifold& M,
                         const Shift& theta, double Q, const QuasinormWeights& v) {
    const auto f = M.eval(x);
    const double th = theta.eval(x);
    HeightEnumerator en(Q, v);
    std::vector<long long> a;
    Witness best;
    bool have = false;
    while (en.next(a)) {
        const double s = dot_f(a, f) + th;
        const double err = dist_to_integer(s);
        // Enumeration is lexicographic, so the first tuple achieving the
        // minimum (within the tie tolerance) is the lexicographically least.
        if (!have || err < best.err - 1e-12) {
            best.a = a;
            best.a0 = nearest_integer_completion(s);
            best.err = err;
            best.height = eval_quasinorm(std::span<const long long>(a), v);
            have = true;
        }
    }
    if (!have) throw input_error("best_dual_approx: empty height box");
    best.x.assign(x.begin(), x.end());
    return best;
}

DirichletResult dirichlet_member(std::span<const double> x, const MongeManifold& M,
                                 double Q, double delta, const QuasinormWeights& v) {
    if (!(Q > 1.0)) throw input_error("dirichlet_member: Q must be > 1");
    if (!(delta > 0.0)) throw input_error("dirichlet_member: delta must be > 0");
    const auto f = M.eval(x);
    const double bound = delta * std::pow(Q, -double(M.n()));
    DirichletResult res;
    HeightEnumerator en(Q, v);
    std::vector<long long> a;
    while (en.next(a)) {
        const double s = dot_f(a, f);
        const double err = dist_to_integer(s);
        if (err < bound) {
            Witness w;
            w.a = a;
            w.a0 = nearest_integer_completion(s);
            w.x.assign(x.begin(), x.end());
            w.err = err;
            w.height = eval_quasinorm(std::span<const long long>(a), v);
            res.member = true;
            res.witness = std::move(w);
            return res;
        }
    }
    // Dirichlet's theorem: the set is everything once delta >= 1.
    res.member = (delta >= 1.0);
    return res;
}

std::vector<Witness> witnesses_in_block(std::span<const double> x, const MongeManifold& M,
                                        const Shift& theta,
                                        const MultivariableApproxFunction& Psi,
                                        double H_lo, double H_hi) {
    if (!(H_lo >= 0.5 && H_lo < H_hi))
        throw input_error("witnesses_in_block: need 0.5 <= H_lo < H_hi");
    const auto f = M.eval(x);
    const double th = theta.eval(x);
    const auto& v = Psi.weights();
    std::vector<Witness> out;
    HeightEnumerator en(H_hi, v);
    std::vector<long long> a;
    while (en.next(a)) {
        const double h = eval_quasinorm(std::span<const long long>(a), v);
        if (h <= H_lo) continue;
        const double psi_a = Psi(std::span<const long long>(a));
        const double s = dot_f(a, f) + th;
        const double err = dist_to_integer(s);
        if (psi_a >= 0.5 || err < psi_a) {
            Witness w;
            w.a = a;
            w.a0 = nearest_integer_completion(s);
            w.x.assign(x.begin(), x.end());
            w.err = err;
            w.height = h;
            out.push_back(std::move(w));
        }
    }
    return out;
}

int integer_rank(std::vector<std::vector<long long>> rows) {
    if (rows.empty()) return 0;
    const size_t cols = rows.front().size();
    std::vector<std::vector<__int128>> m(rows.size(), std::vector<__int128>(cols));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j) m[i][j] = rows[i][j];
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < m.size(); ++col) {
        size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        for (size_t i = rank + 1; i < m.size(); ++i) {
            if (m[i][col] == 0) continue;
            const __int128 g = m[rank][col];
            const __int128 h = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] = m[i][j] * g - m[rank][j] * h;
            // keep magnitudes in range by dividing out the row gcd
            __int128 d = 0;
            for (size_t j = col; j < cols; ++j) {
                __int128 a = m[i][j] < 0 ? -m[i][j] : m[i][j];
                while (a != 0) {
                    __int128 t = d % a;
                    d = a;
                    a = t;
                }
            }
            if (d > 1)
                for (size_t j = col; j < cols; ++j) m[i][j] /= d;
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

namespace {

// Solves the (n+1)x(n+1) system with partial pivoting; throws on singularity
// or a large residual.
std::vector<double> solve_system(std::vector<std::vector<double>> A, std::vector<double> b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t i = col + 1; i < n; ++i)
            if (std::abs(A[i][col]) > std::abs(A[piv][col])) piv = i;
        if (std::abs(A[piv][col]) < 1e-14)
            throw construction_error("interpolation system is singular");
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (size_t i = col + 1; i < n; ++i) {
            const double fac = A[i][col] / A[col][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= fac * A[col][j];
            b[i] -= fac * b[col];
        }
    }
    std::vector<double> xs(n);
    for (size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (size_t j = ii + 1; j < n; ++j) s -= A[ii][j] * xs[j];
        xs[ii] = s / A[ii][ii];
    }
    return xs;
}

} // namespace

ConstructionResult successive_minima_construct(std::span<const double> x,
                                               const MongeManifold& M, const Shift& theta,
                                               double Q, const PaperConstants& consts,
                                               const QuasinormWeights& v) {
    const int n = M.n();
    const int m = M.m();
    if (v.n() != n) throw input_error("construct: weights do not match manifold");
    if (!(Q >= 2.0)) throw input_error("construct: Q must be >= 2");

    // Precondition: x outside the Dirichlet set at the configured delta.
    if (dirichlet_member(x, M, Q, consts.delta, v).member)
        throw precondition_error("construct: x lies in the Dirichlet set Phi_v(Q,delta)");

    const auto f = M.eval(x);
    const auto grad = M.gradient(x);  // n x m
    const double th = theta.eval(x);
    const auto th_grad = theta.gradient(x);

    const double value_bound = consts.C2 * std::pow(Q, -double(n));

    // Step 1: n+1 linearly independent integer vectors in the C2-dilated body.
    std::vector<std::vector<long long>> basis;  // entries (a0, a1, ..., an)
    {
        // Enumerate |a_i| <= C2 Q^{v_i} directly.
        std::vector<long long> lim(n);
        __int128 total = 1;
        for (int i = 0; i < n; ++i) {
            const double cap = consts.C2 * std::pow(Q, v[i]);
            if (cap > double(1LL << 26)) throw capacity_error("construct: dilated box too large");
            lim[i] = static_cast<long long>(std::floor(cap + 1e-9));
            total *= static_cast<__int128>(2 * lim[i] + 1);
        }
        if (total > (__int128(1) << 30)) throw capacity_error("construct: dilated box too large");

        // Collect every candidate in the dilated body, then prefer the ones
        // with the smallest v-height: the greedy pick then tracks the true
        // successive minima, keeping the derivative sums in the bounds below.
        std::vector<std::pair<double, std::vector<long long>>> candidates;
        std::vector<long long> a(n, 0);
        for (int i = 0; i < n; ++i) a[i] = -lim[i];
        bool running = true;
        while (running) {
            const double s = dot_f(a, f);
            const long long a0_lo = static_cast<long long>(std::ceil(-s - value_bound));
            const long long a0_hi = static_cast<long long>(std::floor(-s + value_bound));
            for (long long a0 = a0_lo; a0 <= a0_hi; ++a0) {
                std::vector<long long> cand(n + 1);
                cand[0] = a0;
                for (int i = 0; i < n; ++i) cand[i + 1] = a[i];
                if (std::all_of(cand.begin(), cand.end(), [](long long c) { return c == 0; }))
                    continue;
                const double h = eval_quasinorm(std::span<const long long>(a), v);
                candidates.emplace_back(h, std::move(cand));
            }
            int i = n - 1;
            while (i >= 0 && a[i] == lim[i]) {
                a[i] = -lim[i];
                --i;
            }
            if (i < 0) running = false;
            else ++a[i];
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const auto& l, const auto& r) { return l.first < r.first; });
        for (auto& [h, cand] : candidates) {
            if (static_cast<int>(basis.size()) == n + 1) break;
            auto trial = basis;
            trial.push_back(cand);
            if (integer_rank(trial) == static_cast<int>(trial.size()))
                basis.push_back(std::move(cand));
        }
    }
    if (static_cast<int>(basis.size()) != n + 1)
        throw construction_error("construct: fewer than n+1 independent vectors in dilated body");

    // Step 2: the interpolation system in eta.
    const double qv1 = std::pow(Q, v.v1());
    std::vector<double> Fval(n + 1), Fd1(n + 1);
    for (int j = 0; j <= n; ++j) {
        double val = double(basis[j][0]);
        double d1 = 0.0;
        for (int i = 0; i < n; ++i) {
            val += double(basis[j][i + 1]) * f[i];
            d1 += double(basis[j][i + 1]) * grad[static_cast<size_t>(i) * m + 0];
        }
        Fval[j] = val;
        Fd1[j] = d1;
    }
    double sum_abs_d1 = 0.0;
    for (int j = 0; j <= n; ++j) sum_abs_d1 += std::abs(Fd1[j]);

    std::vector<std::vector<double>> A(n + 1, std::vector<double>(n + 1));
    std::vector<double> rhs(n + 1);
    for (int j = 0; j <= n; ++j) {
        A[0][j] = Fval[j];
        A[1][j] = Fd1[j];
    }
    rhs[0] = -th;
    rhs[1] = qv1 + sum_abs_d1 - th_grad[0];
    for (int i = 2; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) A[i][j] = double(basis[j][i]);  // coefficient of f_i
        rhs[i] = 0.0;
    }
    const auto eta = solve_system(A, rhs);

    // residual check
    double rhs_norm = 0.0, res_norm = 0.0;
    for (int i = 0; i <= n; ++i) {
        double s = 0.0;
        for (int j = 0; j <= n; ++j) s += A[i][j] * eta[j];
        res_norm = std::max(res_norm, std::abs(s - rhs[i]));
        rhs_norm = std::max(rhs_norm, std::abs(rhs[i]));
    }
    if (res_norm > 1e-8 * (rhs_norm + 1.0))
        throw construction_error("construct: interpolation residual too large");

    // Step 3: round and assemble F.
    ConstructionResult out;
    out.basis = basis;
    out.eta = eta;
    out.rounding.resize(n + 1);
    for (int j = 0; j <= n; ++j) out.rounding[j] = static_cast<long long>(std::floor(eta[j]));
    out.a.assign(n, 0);
    out.a0 = 0;
    for (int j = 0; j <= n; ++j) {
        out.a0 += out.rounding[j] * basis[j][0];
        for (int i = 0; i < n; ++i) out.a[i] += out.rounding[j] * basis[j][i + 1];
    }

    out.value_at_x = double(out.a0) + dot_f(out.a, f) + th;
    out.deriv1_at_x = th_grad[0];
    double grad_sup = 0.0;
    for (int d = 0; d < m; ++d) {
        double gd = th_grad[d];
        for (int i = 0; i < n; ++i) gd += double(out.a[i]) * grad[static_cast<size_t>(i) * m + d];
        if (d == 0) out.deriv1_at_x = gd;
        grad_sup = std::max(grad_sup, std::abs(gd));
    }

    out.height = eval_quasinorm(std::span<const long long>(out.a), v);

    // Postconditions (with a small relative slack for float roundoff).
    const double tol = 1e-9;
    out.vb1 = std::abs(out.value_at_x) <= (n + 1) * consts.C2 * std::pow(Q, -double(n)) * (1 + tol);
    out.vb2 = std::abs(out.deriv1_at_x) >= qv1 * (1 - tol);
    out.vb3 = std::abs(out.deriv1_at_x) <= (2.0 * n * consts.C0 + 1.0) * qv1 * (1 + tol);
    out.vb4 = std::abs(double(out.a[0])) <= consts.C3 * std::pow(Q, v.v1()) * (1 + tol);
    for (int i = 1; i < n; ++i)
        out.vb4 = out.vb4 &&
                  std::abs(double(out.a[i])) <= (n + 1) * consts.C2 * std::pow(Q, v[i]) * (1 + tol);
    out.extra_at_x = std::abs(out.deriv1_at_x) > consts.p * grad_sup;

    double c_max = std::pow(consts.C3, 1.0 / v.v1());
    for (int i = 1; i < n; ++i)
        c_max = std::max(c_max, std::pow((n + 1) * consts.C2, 1.0 / v[i]));
    out.kappa0 = 1.0 / std::max(c_max, 1.0);
    out.kappa0_star = out.kappa0 * std::pow(1.0 + (n + 1) * consts.C0, -1.0 / v.v1());
    out.beta = out.kappa0 * out.height;
    out.sandwich = (out.beta <= Q * (1 + tol)) && (out.beta >= out.kappa0_star * Q * (1 - tol));
    return out;
}

double root_localize(const std::function<double(double)>& f,
                     const std::function<double(double)>& fprime,
                     double x1, double lo, double hi, double d) {
    if (!(d > 0.0)) throw input_error("root_localize: d must be positive");
    if (!(lo < hi) || x1 < lo || x1 > hi)
        throw input_error("root_localize: x1 must lie in [lo, hi]");
    const int kGrid = 257;
    for (int i = 0; i < kGrid; ++i) {
        const double t = lo + (hi - lo) * i / double(kGrid - 1);
        if (std::abs(fprime(t)) < d)
            throw localization_error("root_localize: |f'| < d on the interval");
    }
    const double f1 = f(x1);
    if (f1 == 0.0) return x1;
    const double radius = std::abs(f1) / d;
    if (x1 - radius < lo || x1 + radius > hi)
        throw localization_error("root_localize: ball around x1 exits the interval");
    // f is strictly monotone here; the root lies on the side where f decreases
    // toward zero.
    const double dir = (f1 > 0.0) == (fprime(x1) > 0.0) ? -1.0 : 1.0;
    double a = x1, b = x1 + dir * radius;
    double fa = f1, fb = f(b);
    if (fa * fb > 0.0) {
        // Derivative bound guarantees a sign change within the radius; if the
        // other side carries it, use that.
        b = x1 - dir * radius;
        fb = f(b);
        if (fa * fb > 0.0)
            throw localization_error("root_localize: no sign change within radius");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (std::abs(fm) <= 1e-12) return mid;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

} // namespace dda
