#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace ift {

/// Runs fn(0..n-1) over at most `threads` workers. With threads <= 1 the
/// calls happen inline. Chunking is static so results written by index are
/// deterministic regardless of the thread count.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    int t = std::max(1, threads);
    if (t == 1 || n == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    t = std::min(t, n);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += t) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace ift
