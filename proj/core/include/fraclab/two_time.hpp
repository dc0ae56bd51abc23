#pragma once

#include <string>

#include "fraclab/process.hpp"

namespace fraclab {

/// The scalar bundle attached to a time pair 0 < s < t and a smoothing
/// level eps:
///   A = cov(t,t) + eps          C = cov(s,s) + eps
///   B = cov(t,s)                D = A - 2B + C
///   Delta = A*C - B^2           G = sqrt(D / Delta)
///   M = max(|A - B|, |C - B|)
/// eps = 0 is allowed for pure-covariance checks.
struct TwoTimeStats {
    double t = 0, s = 0, eps = 0;
    double A = 0, B = 0, C = 0, D = 0, G = 0, Delta = 0, M = 0;
};

TwoTimeStats two_time_stats(const ProcessKind& kind, double t, double s, double eps);

/// Empirical SLND constants for one process kind: kappa is the lower
/// conditional-variance constant, big_k the upper increment constant.
/// The source records whether they were estimated or supplied.
struct SlndConstants {
    double kappa = 0;
    double big_k = 0;
    enum class Source { Empirical, UserSupplied } source = Source::UserSupplied;
    std::string provenance; // generating scan config, JSON text

    std::string to_json() const;
    static SlndConstants from_json(const std::string& text);
};

} // namespace fraclab
