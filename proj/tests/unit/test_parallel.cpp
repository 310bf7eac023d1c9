#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hbeam/parallel.hpp"

using namespace hbeam;

TEST(Parallel, VisitsEveryIndexOnce) {
    for (unsigned w : {1u, 2u, 5u}) {
        std::vector<std::atomic<int>> hits(97);
        parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; }, w);
        for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    }
    parallel_for(0, [](std::size_t) { FAIL(); }, 3);
}

TEST(Parallel, PropagatesExceptions) {
    EXPECT_THROW(parallel_for(
                     50,
                     [](std::size_t i) {
                         if (i == 17) throw std::runtime_error("boom");
                     },
                     4),
                 std::runtime_error);
}

TEST(Parallel, WorkerCountFromEnvironment) {
    setenv("HBEAM_WORKERS", "3", 1);
    EXPECT_EQ(worker_count(), 3u);
    unsetenv("HBEAM_WORKERS");
    EXPECT_GE(worker_count(), 1u);
}
