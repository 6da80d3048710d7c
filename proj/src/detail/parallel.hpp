#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace lacuna::detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
// visited exactly once, so results written per index do not depend on
// scheduling.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1u), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
}

}  // namespace lacuna::detail
