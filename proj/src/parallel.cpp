#include "sidkit/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace sidkit {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const char* env = std::getenv("SIDKIT_THREADS");
    if (env != nullptr && *env != '\0') {
        std::string s(env);
        if (s != "auto" && s != "0") {
            try {
                int n = std::stoi(s);
                if (n > 0) return n;
            } catch (...) {
                // fall through to hardware
            }
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, const std::function<void(int)>& f, int threads) {
    if (n <= 0) return;
    int workers = resolve_threads(threads);
    if (workers > n) workers = n;
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    std::atomic<bool> failed{false};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                int i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n || failed.load(std::memory_order_relaxed)) return;
                try {
                    f(i);
                } catch (...) {
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load()) throw std::runtime_error("parallel_for: worker failed");
}

}  // namespace sidkit
