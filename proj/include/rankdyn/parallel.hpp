#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace rankdyn {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index owns
// its output slot, so results do not depend on scheduling; reductions happen
// afterwards in index order.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned workers = threads;
    if (static_cast<std::size_t>(workers) > count) workers = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace rankdyn
