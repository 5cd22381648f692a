#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tweetswing::detail {

/// Splits [0, count) into `jobs` contiguous ranges and calls fn(begin, end, slot)
/// for each, on its own thread when jobs > 1. Rethrows the first worker exception.
template <typename Fn>
void for_each_range(std::size_t count, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        fn(std::size_t{0}, count, 0u);
        return;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned slot = 0; slot < jobs; ++slot) {
        std::size_t begin = count * slot / jobs;
        std::size_t end = count * (slot + 1) / jobs;
        workers.emplace_back([&, begin, end, slot] {
            try {
                fn(begin, end, slot);
            } catch (...) {
                errors[slot] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace tweetswing::detail
