#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace gblab {

/// Runs body(begin, end) over contiguous blocks of [0, n) on up to `workers`
/// threads. Block boundaries depend only on n and workers; callers that write
/// to disjoint output slots get identical results for any worker count.
/// The first exception thrown by any block is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
    if (n == 0) return;
    const std::size_t nthreads = std::clamp<std::size_t>(workers, 1, n);
    if (nthreads == 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t) {
            const std::size_t begin = n * t / nthreads;
            const std::size_t end = n * (t + 1) / nthreads;
            pool.emplace_back([&, begin, end] {
                try {
                    body(begin, end);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

/// Fixed-shape pairwise summation; the result depends only on the input order.
template <class T>
T pairwise_sum(std::span<const T> values) {
    if (values.empty()) return T{};
    if (values.size() <= 8) {
        T acc{};
        for (const T& v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace gblab
