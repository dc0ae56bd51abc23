#include "fraclab/parallel.hpp"

namespace fraclab {

unsigned& worker_count() noexcept {
    static unsigned workers = 0; // 0 = hardware concurrency
    return workers;
}

double pairwise_sum(const std::vector<double>& v) {
    // Recursive halving with an explicit small-base loop.
    struct Impl {
        static double run(const double* p, std::size_t n) {
            if (n <= 16) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += p[i];
                return s;
            }
            const std::size_t half = n / 2;
            return run(p, half) + run(p + half, n - half);
        }
    };
    return v.empty() ? 0.0 : Impl::run(v.data(), v.size());
}

} // namespace fraclab
