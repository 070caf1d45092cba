// Copyright (c) 2026 the ecmlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ECM_PARALLEL_HPP
#define ECM_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ecm {

// Splits [0, n) into a fixed number of chunks that does not depend on the
// thread count, runs the chunk body possibly concurrently, and lets the
// caller combine per-chunk results in chunk order. Results are therefore
// identical for any number of threads.
inline constexpr std::size_t parallel_chunk_count = 64;

template <typename ChunkFn>
void parallel_chunks(std::size_t n, unsigned threads, ChunkFn&& body) {
    if (n == 0) return;
    const std::size_t nchunks = n < parallel_chunk_count ? n : parallel_chunk_count;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    ranges.reserve(nchunks);
    for (std::size_t c = 0; c < nchunks; ++c) {
        const std::size_t lo = n * c / nchunks;
        const std::size_t hi = n * (c + 1) / nchunks;
        if (lo < hi) ranges.emplace_back(lo, hi);
    }
    if (threads <= 1 || ranges.size() == 1) {
        for (std::size_t c = 0; c < ranges.size(); ++c)
            body(c, ranges[c].first, ranges[c].second);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned nt = threads < ranges.size() ? threads : static_cast<unsigned>(ranges.size());
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t c = t; c < ranges.size(); c += nt)
                    body(c, ranges[c].first, ranges[c].second);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ecm

#endif  // ECM_PARALLEL_HPP
