#include "loopforge/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace loopforge {

int worker_count() {
    if (const char* env = std::getenv("LOOPFORGE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::uint64_t n, int threads,
                     const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
    if (n == 0) return;
    int workers = threads > 0 ? threads : worker_count();
    workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n));
    if (workers <= 1) {
        fn(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::uint64_t chunk = (n + static_cast<std::uint64_t>(workers) - 1) / static_cast<std::uint64_t>(workers);
    for (int w = 0; w < workers; ++w) {
        std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
        std::uint64_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(fn, begin, end, w);
    }
    for (auto& t : pool) t.join();
}

} // namespace loopforge
