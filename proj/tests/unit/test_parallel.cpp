#include "graphent/parallel.hpp"

#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <string>
#include <vector>

using namespace graphent;

TEST_SUITE("parallel") {

TEST_CASE("every index runs exactly once")
{
    for (int threads : {1, 2, 7}) {
        std::vector<int> hits(100, 0);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits)
            CHECK(h == 1);
    }
    CHECK(default_threads() >= 1);
}

TEST_CASE("lowest failing index wins")
{
    auto fn = [](std::size_t i) {
        if (i == 13 || i == 41)
            throw std::runtime_error(std::to_string(i));
    };
    for (int threads : {1, 4})
        CHECK_THROWS_WITH(parallel_for(64, threads, fn), "13");
}

TEST_CASE("empty range is a no-op")
{
    std::atomic<int> calls = 0;
    parallel_for(0, 4, [&](std::size_t) { ++calls; });
    CHECK(calls == 0);
}

}
