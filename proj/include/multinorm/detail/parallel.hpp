#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace multinorm::detail {

// Process-wide worker count, set once by the CLI / caller. Defaults to 1 so
// that library use is deterministic without configuration.
inline std::size_t& thread_count() {
    static std::size_t n = 1;
    return n;
}

inline void set_thread_count(std::size_t n) { thread_count() = n == 0 ? 1 : n; }

// Deterministic parallel map over index chunks. Work is split into fixed
// chunks regardless of the worker count, each chunk produces its own result
// slot, and the caller merges slots in chunk order. Output therefore does not
// depend on how many threads ran.
template <typename ChunkFn>
void parallel_chunks(std::size_t total, std::size_t chunk_size, ChunkFn&& fn) {
    if (total == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t nchunks = (total + chunk_size - 1) / chunk_size;
    const std::size_t workers = std::min(thread_count(), nchunks);

    if (workers <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) {
            std::size_t lo = c * chunk_size;
            std::size_t hi = std::min(total, lo + chunk_size);
            fn(c, lo, hi);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t c = next.fetch_add(1);
                if (c >= nchunks) return;
                std::size_t lo = c * chunk_size;
                std::size_t hi = std::min(total, lo + chunk_size);
                fn(c, lo, hi);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace multinorm::detail
