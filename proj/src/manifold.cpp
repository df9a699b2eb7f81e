#include "dda/manifold.hpp"

#include <algorithm>
#include <cmath>

#include "dda/errors.hpp"

namespace dda {

bool Box::contains(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

double Box::diameter() const {
    double d = 0.0;
    for (int i = 0; i < dim(); ++i) d = std::max(d, hi[i] - lo[i]);
    return d;
}

MongeManifold::MongeManifold(Kind kind, int n, Box domain, std::string name,
                             std::vector<std::vector<double>> coeffs)
    : kind_(kind), n_(n), domain_(std::move(domain)), name_(std::move(name)),
      coeffs_(std::move(coeffs)) {}

MongeManifold MongeManifold::veronese(int n, Box domain) {
    if (n < 1) throw input_error("veronese: n must be >= 1");
    if (domain.dim() != 1) throw input_error("veronese: domain must be an interval");
    return MongeManifold(Kind::Veronese, n, std::move(domain),
                         "veronese(n=" + std::to_string(n) + ")");
}

MongeManifold MongeManifold::sphere_patch(Box domain) {
    if (domain.dim() != 2) throw input_error("sphere_patch: domain must be planar");
    for (int i = 0; i < 2; ++i)
        if (std::max(std::abs(domain.lo[i]), std::abs(domain.hi[i])) > 0.7)
            throw input_error("sphere_patch: domain must stay inside the unit cap");
    return MongeManifold(Kind::SpherePatch, 3, std::move(domain), "sphere_patch");
}

MongeManifold MongeManifold::paraboloid(Box domain) {
    if (domain.dim() != 2) throw input_error("paraboloid: domain must be planar");
    return MongeManifold(Kind::Paraboloid, 3, std::move(domain), "paraboloid");
}

MongeManifold MongeManifold::identity(int n, Box domain) {
    if (domain.dim() != n) throw input_error("identity: domain dimension must equal n");
    return MongeManifold(Kind::Identity, n, std::move(domain),
                         "identity(n=" + std::to_string(n) + ")");
}

MongeManifold MongeManifold::curve(std::vector<std::vector<double>> component_coeffs,
                                   Box domain) {
    if (domain.dim() != 1) throw input_error("curve: domain must be an interval");
    const int n = 1 + static_cast<int>(component_coeffs.size());
    return MongeManifold(Kind::Curve, n, std::move(domain), "curve",
                         std::move(component_coeffs));
}

void MongeManifold::check_domain(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != m())
        throw input_error("manifold: point dimension mismatch");
    if (!domain_.contains(x)) throw domain_error("manifold: point outside U");
    if (kind_ == Kind::SpherePatch && x[0] * x[0] + x[1] * x[1] >= 1.0)
        throw domain_error("sphere_patch: x1^2 + x2^2 >= 1");
}

namespace {
double poly_eval(const std::vector<double>& c, double x, int deriv) {
    // Horner on the deriv-th derivative's coefficient sequence.
    double r = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= deriv; --k) {
        double fac = 1.0;
        for (int j = 0; j < deriv; ++j) fac *= double(k - j);
        r = r * x + c[k] * fac;
    }
    return r;
}
} // namespace

std::vector<double> MongeManifold::eval(std::span<const double> x) const {
    check_domain(x);
    std::vector<double> f(n_);
    for (int i = 0; i < m(); ++i) f[i] = x[i];
    switch (kind_) {
        case Kind::Veronese:
            for (int i = 1; i < n_; ++i) f[i] = f[i - 1] * x[0];
            break;
        case Kind::SpherePatch:
            f[2] = std::sqrt(1.0 - x[0] * x[0] - x[1] * x[1]);
            break;
        case Kind::Paraboloid:
            f[2] = x[0] * x[0] + x[1] * x[1];
            break;
        case Kind::Identity:
            break;
        case Kind::Curve:
            for (int i = 1; i < n_; ++i) f[i] = poly_eval(coeffs_[i - 1], x[0], 0);
            break;
    }
    return f;
}

std::vector<double> MongeManifold::gradient(std::span<const double> x) const {
    check_domain(x);
    std::vector<double> g(static_cast<size_t>(n_) * m(), 0.0);
    for (int i = 0; i < m(); ++i) g[static_cast<size_t>(i) * m() + i] = 1.0;
    switch (kind_) {
        case Kind::Veronese:
            for (int i = 1; i < n_; ++i) g[i] = double(i + 1) * std::pow(x[0], i);
            break;
        case Kind::SpherePatch: {
            const double s = std::sqrt(1.0 - x[0] * x[0] - x[1] * x[1]);
            g[4] = -x[0] / s;
            g[5] = -x[1] / s;
            break;
        }
        case Kind::Paraboloid:
            g[4] = 2.0 * x[0];
            g[5] = 2.0 * x[1];
            break;
        case Kind::Identity:
            break;
        case Kind::Curve:
            for (int i = 1; i < n_; ++i) g[i] = poly_eval(coeffs_[i - 1], x[0], 1);
            break;
    }
    return g;
}

std::vector<double> MongeManifold::hessian(int comp, std::span<const double> x) const {
    check_domain(x);
    if (comp < 0 || comp >= n_) throw input_error("hessian: bad component index");
    std::vector<double> h(static_cast<size_t>(m()) * m(), 0.0);
    if (comp < m()) return h;  // coordinate components are linear
    switch (kind_) {
        case Kind::Veronese:
            h[0] = double(comp + 1) * double(comp) * std::pow(x[0], comp - 1);
            break;
        case Kind::SpherePatch: {
            const double u = 1.0 - x[0] * x[0] - x[1] * x[1];
            const double s = std::sqrt(u);
            h[0] = -(u + x[0] * x[0]) / (u * s);
            h[1] = h[2] = -x[0] * x[1] / (u * s);
            h[3] = -(u + x[1] * x[1]) / (u * s);
            break;
        }
        case Kind::Paraboloid:
            h[0] = h[3] = 2.0;
            break;
        case Kind::Identity:
            break;
        case Kind::Curve:
            h[0] = poly_eval(coeffs_[comp - 1], x[0], 2);
            break;
    }
    return h;
}

double MongeManifold::certify_c0() const {
    const int per_dim = (m() == 1) ? 1025 : 1025;
    double c0 = 0.0;
    std::vector<double> x(m());
    std::vector<int> idx(m(), 0);
    const int total = (m() == 1) ? per_dim : per_dim * per_dim;
    for (int k = 0; k < total; ++k) {
        int rem = k;
        for (int d = 0; d < m(); ++d) {
            const int i = rem % per_dim;
            rem /= per_dim;
            x[d] = domain_.lo[d] + (domain_.hi[d] - domain_.lo[d]) * i / double(per_dim - 1);
        }
        const auto f = eval(x);
        const auto g = gradient(x);
        for (double t : f) c0 = std::max(c0, std::abs(t));
        for (double t : g) c0 = std::max(c0, std::abs(t));
        for (int c = m(); c < n_; ++c)
            for (double t : hessian(c, x)) c0 = std::max(c0, std::abs(t));
    }
    return c0;
}

Shift::Shift(std::vector<double> coeffs, std::string name)
    : coeffs_(std::move(coeffs)), name_(std::move(name)) {}

Shift Shift::zero() { return Shift({}, "zero"); }

Shift Shift::constant(double c) {
    return Shift({c}, "const(" + std::to_string(c) + ")");
}

Shift Shift::poly(std::vector<double> coeffs) {
    return Shift(std::move(coeffs), "poly");
}

bool Shift::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

double Shift::eval(std::span<const double> x) const {
    if (coeffs_.empty()) return 0.0;
    if (coeffs_.size() > 1 && x.empty())
        throw input_error("shift: polynomial shift needs a point");
    return poly_eval(coeffs_, x.empty() ? 0.0 : x[0], 0);
}

std::vector<double> Shift::gradient(std::span<const double> x) const {
    std::vector<double> g(x.size(), 0.0);
    if (coeffs_.size() > 1) g[0] = poly_eval(coeffs_, x[0], 1);
    return g;
}

std::vector<double> Shift::hessian(std::span<const double> x) const {
    std::vector<double> h(x.size() * x.size(), 0.0);
    if (coeffs_.size() > 2) h[0] = poly_eval(coeffs_, x[0], 2);
    return h;
}

double Shift::sup_c0(const Box& domain) const {
    const int kGrid = 1025;
    double c0 = 0.0;
    std::vector<double> x(domain.dim());
    for (int i = 0; i < kGrid; ++i) {
        x[0] = domain.lo[0] + (domain.hi[0] - domain.lo[0]) * i / double(kGrid - 1);
        for (int d = 1; d < domain.dim(); ++d) x[d] = domain.lo[d];
        c0 = std::max(c0, std::abs(eval(x)));
        for (double t : gradient(x)) c0 = std::max(c0, std::abs(t));
        for (double t : hessian(x)) c0 = std::max(c0, std::abs(t));
    }
    return c0;
}

} // namespace dda
