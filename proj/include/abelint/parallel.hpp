#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace abelint {

// Process-wide default parallelism budget, set once by the CLI harness.
int default_thread_count();
void set_default_thread_count(int n);

// Runs fn(i) for i in [0, count). Work items are independent and write only
// to their own slots, so the result is identical for every thread count.
// Tasks are handed out through an atomic cursor in fixed-size chunks.
inline void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn,
                         int threads = 0) {
    if (threads <= 0) threads = default_thread_count();
    if (threads <= 1 || count <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::int64_t chunk = 8;
    std::atomic<std::int64_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::int64_t begin = cursor.fetch_add(chunk);
            if (begin >= count) break;
            const std::int64_t end = std::min(begin + chunk, count);
            for (std::int64_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

} // namespace abelint
