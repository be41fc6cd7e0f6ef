#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace viadel {

/// splitmix64 step; good enough for probe draws and fully reproducible.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct Rng {
    std::uint64_t state = 1;
    double uniform() {
        return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

/// Worker count resolution: explicit request, else the VIADEL_WORKERS
/// environment variable, else hardware parallelism.
int resolve_workers(int requested);

/// Index-dispatched parallel loop. Results must be written to caller-owned
/// per-index slots, which keeps any reduction deterministic. Exceptions from
/// workers are rethrown (first one wins).
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    const auto nw = static_cast<std::size_t>(workers) < n
                        ? static_cast<std::size_t>(workers)
                        : n;
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t k = next.fetch_add(1);
                if (k >= n) return;
                try {
                    fn(k);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace viadel
