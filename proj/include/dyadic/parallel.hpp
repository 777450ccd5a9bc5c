#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace dyadic {

/// Worker cap from DYADIC_SPECTRA_THREADS, defaulting to the hardware count.
inline unsigned default_thread_count() {
    if (const char* env = std::getenv("DYADIC_SPECTRA_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(begin, end) over contiguous slices of [0, count). Each index is
/// handled by exactly one call, so per-index results are schedule independent.
template <class Body>
void parallel_for_ranges(std::size_t count, unsigned threads, Body&& body) {
    constexpr std::size_t kMinSlice = 64;
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, threads), (count + kMinSlice - 1) / kMinSlice);
    if (workers <= 1) {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t slice = (count + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t b = std::min(count, w * slice);
        const std::size_t e = std::min(count, b + slice);
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    body(std::size_t{0}, std::min(count, slice));
}

} // namespace dyadic
