#ifndef DDA_QUASINORM_HPP
#define DDA_QUASINORM_HPP

#include <span>
#include <vector>

namespace dda {

// Exponent n-tuple v with v_i > 0 and sum v_i = n, defining the weighted
// quasinorm |y|_v = max_i |y_i|^{1/v_i}.  Coordinates are reordered on
// construction so that v_1 = max_i v_i; permutation() maps stored position
// k to the original input position.  All vector arguments elsewhere in the
// library are understood in the reordered coordinate system.
class QuasinormWeights {
public:
    explicit QuasinormWeights(std::vector<double> v);

    static QuasinormWeights uniform(int n);

    int n() const { return static_cast<int>(v_.size()); }
    double v1() const { return v_.front(); }
    double operator[](int i) const { return v_[i]; }
    const std::vector<double>& exponents() const { return v_; }
    const std::vector<int>& permutation() const { return perm_; }

    // Applies the recorded permutation to a vector given in input order.
    std::vector<double> reorder(std::span<const double> original) const;

private:
    std::vector<double> v_;    // non-increasing
    std::vector<int> perm_;
};

double eval_quasinorm(std::span<const double> a, const QuasinormWeights& v);
double eval_quasinorm(std::span<const long long> a, const QuasinormWeights& v);

} // namespace dda

#endif
