#pragma once

#include <string>

namespace fraclab {

enum class Family { FBM, BiFBM, SubFBM };

/// Which Gaussian process family a one-dimensional component follows, plus
/// its parameters. Components of a d-dimensional process are independent
/// copies. The self-similarity index is hurst(): H0*K0 for bi-fBm, H
/// otherwise. fBm is represented directly but coincides with BiFBM(H, 1).
class ProcessKind {
public:
    static ProcessKind fbm(double H);
    static ProcessKind bifbm(double H0, double K0);
    static ProcessKind subfbm(double H);

    Family family() const noexcept { return family_; }
    double hurst() const noexcept { return hurst_; }
    /// Only meaningful for BiFBM.
    double h0() const noexcept { return h0_; }
    double k0() const noexcept { return k0_; }

    std::string name() const;
    std::string to_json() const;
    static ProcessKind from_json(const std::string& json_text);

private:
    ProcessKind(Family f, double h0, double k0, double hurst)
        : family_(f), h0_(h0), k0_(k0), hurst_(hurst) {}
    Family family_;
    double h0_;    // H for fbm/subfbm, H0 for bifbm
    double k0_;    // 1 unless bifbm
    double hurst_; // derived self-similarity index
};

/// E[X^1_t X^1_s] for one component. Symmetric in (t, s); requires t,s >= 0.
double cov(const ProcessKind& kind, double t, double s);

/// E[(X^1_t - X^1_s)^2], evaluated from the covariance.
double increment_var(const ProcessKind& kind, double t, double s);

} // namespace fraclab
