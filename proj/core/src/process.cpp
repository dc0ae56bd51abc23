#include "fraclab/process.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fraclab {

ProcessKind ProcessKind::fbm(double H) {
    if (!(H > 0.0 && H < 1.0))
        throw std::domain_error("fbm: H must lie in (0,1)");
    return ProcessKind(Family::FBM, H, 1.0, H);
}

ProcessKind ProcessKind::bifbm(double H0, double K0) {
    if (!(H0 > 0.0 && H0 < 1.0))
        throw std::domain_error("bifbm: H0 must lie in (0,1)");
    if (!(K0 > 0.0 && K0 <= 1.0))
        throw std::domain_error("bifbm: K0 must lie in (0,1]");
    return ProcessKind(Family::BiFBM, H0, K0, H0 * K0);
}

ProcessKind ProcessKind::subfbm(double H) {
    if (!(H > 0.0 && H < 1.0))
        throw std::domain_error("subfbm: H must lie in (0,1)");
    return ProcessKind(Family::SubFBM, H, 1.0, H);
}

std::string ProcessKind::name() const {
    switch (family_) {
        case Family::FBM: return "fbm";
        case Family::BiFBM: return "bifbm";
        case Family::SubFBM: return "subfbm";
    }
    return "?";
}

std::string ProcessKind::to_json() const {
    nlohmann::json j;
    j["family"] = name();
    j["H"] = hurst_;
    if (family_ == Family::BiFBM) {
        j["H0"] = h0_;
        j["K0"] = k0_;
    }
    return j.dump();
}

ProcessKind ProcessKind::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "fbm") return fbm(j.at("H").get<double>());
    if (fam == "subfbm") return subfbm(j.at("H").get<double>());
    if (fam == "bifbm") return bifbm(j.at("H0").get<double>(), j.at("K0").get<double>());
    throw std::domain_error("ProcessKind::from_json: unknown family '" + fam + "'");
}

double cov(const ProcessKind& kind, double t, double s) {
    if (t < 0.0 || s < 0.0)
        throw std::domain_error("cov: times must be nonnegative");
    switch (kind.family()) {
        case Family::FBM: {
            const double h2 = 2.0 * kind.hurst();
            return 0.5 * (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::abs(t - s), h2));
        }
        case Family::BiFBM: {
            const double h20 = 2.0 * kind.h0();
            const double k0 = kind.k0();
            return std::exp2(-k0) *
                   (std::pow(std::pow(t, h20) + std::pow(s, h20), k0) -
                    std::pow(std::abs(t - s), 2.0 * kind.hurst()));
        }
        case Family::SubFBM: {
            const double h2 = 2.0 * kind.hurst();
            return std::pow(t, h2) + std::pow(s, h2) -
                   0.5 * (std::pow(t + s, h2) + std::pow(std::abs(t - s), h2));
        }
    }
    throw std::logic_error("cov: unreachable");
}

double increment_var(const ProcessKind& kind, double t, double s) {
    return cov(kind, t, t) - 2.0 * cov(kind, t, s) + cov(kind, s, s);
}

} // namespace fraclab
