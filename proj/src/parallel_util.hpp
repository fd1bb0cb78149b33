#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace permround::detail {

/// Runs fn(worker_index, begin, end) over a static partition of [0, total).
/// Worker w always receives the same index range for a fixed thread count,
/// which is what makes seeded parallel runs reproducible.
template <typename Fn>
void parallel_chunks(std::size_t total, unsigned threads, Fn&& fn) {
    unsigned workers = std::max(1u, threads);
    if (total > 0 && total < static_cast<std::size_t>(workers)) {
        workers = static_cast<unsigned>(total);
    }
    if (workers == 1) {
        fn(0u, std::size_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t begin = total * w / workers;
            const std::size_t end = total * (w + 1) / workers;
            try {
                fn(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace permround::detail
