#ifndef EWI_PARALLEL_HPP
#define EWI_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace ewi {

// process-wide worker count; 0 means hardware concurrency
inline std::atomic<int>& thread_count_ref() {
    static std::atomic<int> n{0};
    return n;
}

inline void set_thread_count(int n) { thread_count_ref().store(n); }

inline int effective_thread_count() {
    int n = thread_count_ref().load();
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

// Runs fn(begin, end) over a partition of [0, n). Each index lands in exactly
// one chunk, so per-element outputs are deterministic regardless of thread
// count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int workers = effective_thread_count();
    if (workers == 1 || n < 2) {
        if (n > 0) fn(0, n);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(n, static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    const std::size_t per = (n + chunks - 1) / chunks;
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t b = c * per;
        const std::size_t e = std::min(n, b + per);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& t : pool) t.join();
}

} // namespace ewi

#endif // EWI_PARALLEL_HPP
