#include "chenflow/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

namespace chenflow {

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::size_t block_count(std::size_t count, std::size_t block_size) {
    return (count + block_size - 1) / block_size;
}

void parallel_for_blocks(std::size_t count, std::size_t block_size, int workers,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    const std::size_t blocks = block_count(count, block_size);
    const int n_workers = std::min<std::size_t>(resolve_workers(workers), blocks ? blocks : 1);
    if (n_workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b)
            fn(b, b * block_size, std::min(count, (b + 1) * block_size));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t b = next.fetch_add(1);
                if (b >= blocks) return;
                try {
                    fn(b, b * block_size, std::min(count, (b + 1) * block_size));
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace chenflow
