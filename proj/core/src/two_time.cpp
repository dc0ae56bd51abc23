#include "fraclab/two_time.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fraclab/errors.hpp"

namespace fraclab {

TwoTimeStats two_time_stats(const ProcessKind& kind, double t, double s, double eps) {
    if (!(s > 0.0 && t > s))
        throw std::domain_error("two_time_stats: need 0 < s < t");
    if (eps < 0.0)
        throw std::domain_error("two_time_stats: eps must be >= 0");

    TwoTimeStats st;
    st.t = t;
    st.s = s;
    st.eps = eps;
    st.A = cov(kind, t, t) + eps;
    st.B = cov(kind, t, s);
    st.C = cov(kind, s, s) + eps;
    st.D = st.A - 2.0 * st.B + st.C;
    st.Delta = st.A * st.C - st.B * st.B;
    if (!(st.Delta > 0.0))
        throw NumericalError("two_time_stats: Delta <= 0 at (t=" + std::to_string(t) +
                             ", s=" + std::to_string(s) + ", eps=" + std::to_string(eps) + ")");
    st.G = std::sqrt(st.D / st.Delta);
    st.M = std::max(std::abs(st.A - st.B), std::abs(st.C - st.B));
    return st;
}

std::string SlndConstants::to_json() const {
    nlohmann::json j;
    j["kappa"] = kappa;
    j["big_k"] = big_k;
    j["source"] = source == Source::Empirical ? "empirical" : "user_supplied";
    if (!provenance.empty()) j["provenance"] = nlohmann::json::parse(provenance);
    return j.dump(2);
}

SlndConstants SlndConstants::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    SlndConstants c;
    c.kappa = j.at("kappa").get<double>();
    c.big_k = j.at("big_k").get<double>();
    c.source = j.at("source").get<std::string>() == "empirical" ? Source::Empirical
                                                                : Source::UserSupplied;
    if (j.contains("provenance")) c.provenance = j["provenance"].dump();
    return c;
}

} // namespace fraclab
