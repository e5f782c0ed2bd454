#include "varlp/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace varlp {

namespace {
std::atomic<int> g_override{0};
}

int max_threads() {
    int o = g_override.load();
    if (o > 0) return o;
    if (const char* env = std::getenv("VARLP_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_max_threads(int n) { g_override.store(n); }

void parallel_for(int n, const std::function<void(int)>& body) {
    if (n <= 0) return;
    int workers = std::min(max_threads(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    std::atomic<int> next{0};
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace varlp
