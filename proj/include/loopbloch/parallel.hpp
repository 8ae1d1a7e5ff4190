// parallel.hpp — index-ordered parallel map over a fixed-size work list

#pragma once

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

namespace loopbloch {

// Worker count: LOOPBLOCH_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
inline int thread_count() {
    if (const char* env = std::getenv("LOOPBLOCH_THREADS")) {
        int n = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::string_view(env).size(), n);
        if (ec == std::errc() && *ptr == '\0' && n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Evaluate f(0..n-1) across threads. Results keep index order, so output is
// identical for any worker count; the first exception wins and is rethrown.
template <typename F>
auto parallel_map(std::size_t n, F&& f) {
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<R> results(n);
    const std::size_t workers = std::min(static_cast<std::size_t>(thread_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) results[i] = f(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                results[i] = f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace loopbloch
