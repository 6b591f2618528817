#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace permld {

inline int defaultThreadCount() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

struct ShardRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0; // half-open
};

// Splits [0, count) into exactly shardCount contiguous ranges (some possibly
// empty). The split depends only on (count, shardCount), never on the number
// of worker threads, so shard-local results are reproducible.
inline std::vector<ShardRange> makeShards(std::uint64_t count, int shardCount) {
    std::vector<ShardRange> shards(static_cast<std::size_t>(shardCount));
    const std::uint64_t base = count / static_cast<std::uint64_t>(shardCount);
    const std::uint64_t rem = count % static_cast<std::uint64_t>(shardCount);
    std::uint64_t pos = 0;
    for (int s = 0; s < shardCount; ++s) {
        const std::uint64_t len = base + (static_cast<std::uint64_t>(s) < rem ? 1 : 0);
        shards[static_cast<std::size_t>(s)] = {pos, pos + len};
        pos += len;
    }
    return shards;
}

// Runs fn(shard) for shard = 0..shardCount-1 on up to `threads` workers.
// Workers pull shard indices from a shared counter; determinism is the
// caller's responsibility and is achieved by writing results into
// shard-indexed slots and merging serially afterwards. The first exception
// thrown by any shard is rethrown on the calling thread.
inline void runShards(int shardCount, int threads, const std::function<void(int)>& fn) {
    if (shardCount <= 0) return;
    if (threads < 1) threads = 1;
    if (threads == 1 || shardCount == 1) {
        for (int s = 0; s < shardCount; ++s) fn(s);
        return;
    }
    std::atomic<int> nextShard{0};
    std::atomic<bool> failed{false};
    std::exception_ptr firstError;
    std::mutex errorMutex;
    auto worker = [&] {
        for (;;) {
            const int s = nextShard.fetch_add(1);
            if (s >= shardCount || failed.load()) return;
            try {
                fn(s);
            } catch (...) {
                std::lock_guard<std::mutex> lock(errorMutex);
                if (!firstError) firstError = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int workers = std::min(threads, shardCount);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (firstError) std::rethrow_exception(firstError);
}

} // namespace permld
