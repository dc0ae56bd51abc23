#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fraclab {

enum class Sign : int { Plus = +1, Minus = -1 };

inline Sign opposite(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

/// (i x)_0^alpha := |x|^alpha exp(i pi alpha/2 sgn x), with the Minus sign
/// conjugating the phase. Value at x = 0 is 1 for alpha = 0 and 0 otherwise.
inline std::complex<double> signed_power(double x, double alpha, Sign sign) {
    if (alpha < 0.0) throw std::domain_error("signed_power: alpha must be >= 0");
    if (alpha == 0.0) return {1.0, 0.0};
    if (x == 0.0) return {0.0, 0.0};
    const double sgn = x > 0.0 ? 1.0 : -1.0;
    const double phase = static_cast<int>(sign) * std::numbers::pi * alpha * 0.5 * sgn;
    return std::polar(std::pow(std::abs(x), alpha), phase);
}

/// Derivative order alpha = (alpha_1, ..., alpha_d) with the derived
/// per-component quantities:
///   floor part   bar(a)   = floor(a)
///   frac part    tilde(a) = a - bar(a)
///   remainder    a*       = tilde(a) + min(bar(a),1) * [tilde(a) == 0]
/// a* lies in [0,1] and vanishes iff a = 0.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<double> alphas) : alphas_(std::move(alphas)) {
        if (alphas_.empty()) throw std::domain_error("MultiIndex: empty order");
        for (double a : alphas_) {
            if (!(a >= 0.0) || !std::isfinite(a))
                throw std::domain_error("MultiIndex: components must be finite and >= 0");
            total_ += a;
        }
    }
    MultiIndex(std::initializer_list<double> alphas)
        : MultiIndex(std::vector<double>(alphas)) {}

    std::size_t dim() const noexcept { return alphas_.size(); }
    double operator[](std::size_t l) const { return alphas_.at(l); }
    const std::vector<double>& components() const noexcept { return alphas_; }

    /// |alpha| = sum of components.
    double total() const noexcept { return total_; }

    static double floor_part(double a) { return std::floor(a); }
    static double frac_part(double a) { return a - std::floor(a); }
    static bool is_integer(double a) { return frac_part(a) == 0.0; }

    static double star(double a) {
        const double bar = floor_part(a);
        const double tilde = a - bar;
        return tilde + (tilde == 0.0 ? std::min(bar, 1.0) : 0.0);
    }

    /// Indices with integer order (the set I of the divergence analysis).
    std::vector<std::size_t> integer_components() const {
        std::vector<std::size_t> idx;
        for (std::size_t l = 0; l < alphas_.size(); ++l)
            if (is_integer(alphas_[l])) idx.push_back(l);
        return idx;
    }

    /// Sum of the integer-order components.
    double integer_component_sum() const {
        double s = 0.0;
        for (double a : alphas_)
            if (is_integer(a)) s += a;
        return s;
    }

private:
    std::vector<double> alphas_;
    double total_ = 0.0;
};

} // namespace fraclab
