#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace tdiff::cli {

inline int worker_count(int requested) {
    if (requested > 0) return requested;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Evaluates f at every point on a small worker pool. Results keep the
/// input order; if several points throw, the lowest-indexed error wins so
/// failures do not depend on scheduling.
template <class F>
std::vector<double> parallel_map(const std::vector<double>& points, int threads, F&& f) {
    const std::size_t n = points.size();
    std::vector<double> values(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                values[i] = f(points[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int workers = static_cast<int>(std::min<std::size_t>(worker_count(threads), n));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return values;
}

}  // namespace tdiff::cli
