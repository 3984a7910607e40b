#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace sqgrasp {

// Process-wide default worker count (0 = hardware concurrency).
unsigned default_threads();
void set_default_threads(unsigned n);
unsigned resolve_threads(unsigned requested);

// Runs fn(begin, end) over [0, n) split into fixed-size chunks pulled from a
// shared counter. Chunk boundaries do not depend on the worker count, so any
// per-chunk result combined in chunk order is reproducible across thread
// configurations.
template <typename Fn>
void parallel_chunks(std::size_t n, std::size_t chunk, Fn&& fn, unsigned threads = 0) {
    if (n == 0) return;
    if (chunk == 0) chunk = 1;
    const std::size_t num_chunks = (n + chunk - 1) / chunk;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), num_chunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < num_chunks; ++c) {
            const std::size_t begin = c * chunk;
            fn(begin, std::min(begin + chunk, n), c);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= num_chunks) return;
            const std::size_t begin = c * chunk;
            fn(begin, std::min(begin + chunk, n), c);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 0; t + 1 < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0, std::size_t chunk = 1024) {
    parallel_chunks(
        n, chunk,
        [&](std::size_t begin, std::size_t end, std::size_t) {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        },
        threads);
}

// Deterministic map-reduce: per-chunk partials are combined in chunk order,
// independent of how chunks were scheduled onto threads.
template <typename T, typename MapFn, typename CombineFn>
T chunked_reduce(std::size_t n, T init, MapFn&& map, CombineFn&& combine, unsigned threads = 0,
                 std::size_t chunk = 4096) {
    if (n == 0) return init;
    if (chunk == 0) chunk = 1;
    const std::size_t num_chunks = (n + chunk - 1) / chunk;
    std::vector<T> partials(num_chunks, init);
    parallel_chunks(
        n, chunk,
        [&](std::size_t begin, std::size_t end, std::size_t c) { partials[c] = map(begin, end); },
        threads);
    T acc = init;
    for (const T& part : partials) acc = combine(acc, part);
    return acc;
}

}  // namespace sqgrasp
