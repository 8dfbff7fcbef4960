#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace foamcalc {

// Computes out[i] = f(i) for i < n on up to `jobs` threads. Results land in
// index order, so any reduction over `out` is deterministic.
template <class T, class F>
std::vector<T> parallel_map(size_t n, int jobs, F&& f) {
    std::vector<T> out(n);
    if (jobs <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        for (;;) {
            size_t i = next++;
            if (i >= n || failed) return;
            try {
                out[i] = f(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int t = std::min<int>(jobs, static_cast<int>(n));
    for (int k = 0; k < t; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace foamcalc
