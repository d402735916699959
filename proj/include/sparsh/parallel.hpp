#ifndef SPARSH_PARALLEL_HPP
#define SPARSH_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace sparsh {

namespace detail {
inline std::atomic<unsigned> &thread_count_storage() {
    static std::atomic<unsigned> count{1};
    return count;
}
} // namespace detail

/// Number of worker threads row-parallel kernels may use. Defaults to 1.
inline unsigned thread_count() { return detail::thread_count_storage().load(); }

inline void set_thread_count(unsigned n) {
    detail::thread_count_storage().store(n == 0 ? 1u : n);
}

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each.
/// Results must not depend on the partition; reductions stay sequential.
template <typename Fn>
void parallel_for_range(std::int64_t n, Fn &&fn) {
    const unsigned threads = thread_count();
    if (threads <= 1 || n < 4096) {
        fn(std::int64_t{0}, n);
        return;
    }
    const unsigned workers = static_cast<unsigned>(
        std::min<std::int64_t>(threads, std::max<std::int64_t>(1, n / 1024)));
    const std::int64_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        const std::int64_t begin = t * chunk;
        const std::int64_t end = std::min<std::int64_t>(begin + chunk, n);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto &th : pool) th.join();
}

} // namespace sparsh

#endif
