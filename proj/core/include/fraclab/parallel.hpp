#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace fraclab {

/// Process-wide worker-count knob. 0 means hardware concurrency.
unsigned& worker_count() noexcept;

/// Runs fn(chunk_index, begin, end) over fixed-size chunks of [0, n).
/// Chunk boundaries depend only on n (not on the worker count), so any
/// per-chunk accumulation combined in chunk order gives results that are
/// independent of the thread count.
template <typename Fn>
void for_each_chunk(std::size_t n, Fn&& fn, std::size_t chunk = 256) {
    if (n == 0) return;
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    unsigned workers = worker_count();
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_chunks));

    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            fn(c, c * chunk, std::min(n, (c + 1) * chunk));
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t c = w; c < n_chunks; c += workers)
                fn(c, c * chunk, std::min(n, (c + 1) * chunk));
        });
    }
    for (auto& t : pool) t.join();
}

/// Pairwise (cascade) summation in a fixed order; deterministic and more
/// accurate than naive left-to-right accumulation on long MC reductions.
double pairwise_sum(const std::vector<double>& v);

} // namespace fraclab
