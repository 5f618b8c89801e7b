#ifndef CLASSEX_PARALLEL_HPP
#define CLASSEX_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace classex {

inline unsigned effective_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work is handed out
/// in chunks through a shared counter, so uneven task costs still balance.
/// The first exception thrown by any worker is rethrown on the caller.
template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, std::uint64_t chunk, Fn&& fn) {
    threads = effective_threads(threads);
    if (n == 0) return;
    if (threads <= 1 || n <= chunk) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    auto work = [&] {
        for (;;) {
            std::uint64_t lo = next.fetch_add(chunk);
            if (lo >= n || failed.load(std::memory_order_relaxed)) return;
            std::uint64_t hi = lo + chunk < n ? lo + chunk : n;
            try {
                for (std::uint64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    unsigned nworkers = threads;
    pool.reserve(nworkers);
    for (unsigned t = 0; t < nworkers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (failed.load() && err) std::rethrow_exception(err);
}

template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn&& fn) {
    std::uint64_t chunk = n / (4 * std::uint64_t(effective_threads(threads))) + 1;
    parallel_for(n, threads, chunk, std::forward<Fn>(fn));
}

}  // namespace classex

#endif
