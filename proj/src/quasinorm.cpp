#include "dda/quasinorm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dda/errors.hpp"

namespace dda {

QuasinormWeights::QuasinormWeights(std::vector<double> v) {
    if (v.empty()) throw input_error("quasinorm weights: empty tuple");
    const int n = static_cast<int>(v.size());
    double sum = 0.0;
    for (double w : v) {
        if (!(w > 0.0) || !std::isfinite(w))
            throw input_error("quasinorm weights: every v_i must be positive and finite");
        sum += w;
    }
    if (std::abs(sum - n) > 1e-9)
        throw input_error("quasinorm weights: sum v_i must equal n (got " +
                          std::to_string(sum) + " for n=" + std::to_string(n) + ")");
    perm_.resize(v.size());
    std::iota(perm_.begin(), perm_.end(), 0);
    std::stable_sort(perm_.begin(), perm_.end(),
                     [&v](int i, int j) { return v[i] > v[j]; });
    v_.reserve(v.size());
    for (int p : perm_) v_.push_back(v[p]);
}

QuasinormWeights QuasinormWeights::uniform(int n) {
    if (n < 1) throw input_error("quasinorm weights: n must be >= 1");
    return QuasinormWeights(std::vector<double>(n, 1.0));
}

std::vector<double> QuasinormWeights::reorder(std::span<const double> original) const {
    if (static_cast<int>(original.size()) != n())
        throw input_error("quasinorm reorder: length mismatch");
    std::vector<double> out(original.size());
    for (int k = 0; k < n(); ++k) out[k] = original[perm_[k]];
    return out;
}

namespace {
template <class T>
double quasinorm_impl(std::span<const T> a, const QuasinormWeights& v) {
    if (static_cast<int>(a.size()) != v.n())
        throw input_error("quasinorm: tuple length does not match weights");
    double best = 0.0;
    for (int i = 0; i < v.n(); ++i) {
        const double m = std::abs(static_cast<double>(a[i]));
        if (m == 0.0) continue;
        best = std::max(best, std::pow(m, 1.0 / v[i]));
    }
    return best;
}
} // namespace

double eval_quasinorm(std::span<const double> a, const QuasinormWeights& v) {
    return quasinorm_impl(a, v);
}

double eval_quasinorm(std::span<const long long> a, const QuasinormWeights& v) {
    return quasinorm_impl(a, v);
}

} // namespace dda
