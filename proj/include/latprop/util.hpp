#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace latprop {

// Deterministic draws on top of mt19937_64. The standard distributions are
// implementation-defined, so map engine output by hand to keep byte-stable
// results across toolchains.
inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

inline long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long long>(rng() % span);
}

// Thread count for grid scans; LATPROP_THREADS overrides, default 1.
inline int scan_thread_count() {
    if (const char* env = std::getenv("LATPROP_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// Static slicing over [0, n); results must be written to disjoint slots so
// the outcome is independent of the thread count.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const auto workers = static_cast<std::size_t>(threads);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace latprop
