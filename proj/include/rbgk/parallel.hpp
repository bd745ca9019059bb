#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace rbgk {

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end) over disjoint chunks of [0, n). Each chunk is processed
// sequentially inside fn, so results do not depend on the thread count as long
// as chunks write disjoint outputs.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    int nt = resolve_thread_count(threads);
    if (nt <= 1 || n <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    nt = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(nt), n));
    std::size_t chunk = (n + nt - 1) / nt;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        std::size_t lo = static_cast<std::size_t>(t) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace rbgk
