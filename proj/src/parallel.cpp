#include "spinchain/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spinchain {

int thread_count() {
    if (const char* env = std::getenv("SPINCHAIN_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<int>(std::min(n, 256L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {
// nested parallel_for calls (a sweep dispatching traces) degrade to serial
// in the worker instead of oversubscribing
thread_local bool inside_worker = false;
} // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = inside_worker
        ? 1u
        : static_cast<unsigned>(std::min(static_cast<std::size_t>(thread_count()), n));
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k) body(k);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        inside_worker = true;
        try {
            for (std::size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1))
                body(k);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
        inside_worker = false;
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace spinchain
