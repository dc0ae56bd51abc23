#include "detail/fft.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace fraclab::detail {

namespace {
std::mutex g_plan_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan> g_plans;

fftw_plan plan_for(std::size_t n, int direction) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    const auto key = std::make_pair(n, direction);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;
    // FFTW_UNALIGNED lets the cached plan run on any caller buffer.
    std::vector<std::complex<double>> scratch(n);
    fftw_plan p = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(scratch.data()),
        reinterpret_cast<fftw_complex*>(scratch.data()),
        direction < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    g_plans.emplace(key, p);
    return p;
}
} // namespace

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in,
                                      int direction) {
    if (in.empty()) return {};
    fftw_plan p = plan_for(in.size(), direction);
    std::vector<std::complex<double>> out(in.size());
    // const_cast is safe: FFTW does not modify the input of an out-of-place
    // c2c transform.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(
                            const_cast<std::complex<double>*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

} // namespace fraclab::detail
