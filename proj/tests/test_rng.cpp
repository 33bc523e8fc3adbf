#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <thread>
#include <vector>

#include "sharkswim/rng.hpp"

using sharkswim::RngStream;

TEST_CASE("identical (seed, stream) reproduces the identical sequence") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams differ") {
    RngStream a(42, 0), b(42, 1), c(43, 0);
    int equal_ab = 0, equal_ac = 0;
    for (int i = 0; i < 1000; ++i) {
        uint64_t x = a.next_u64();
        if (x == b.next_u64()) ++equal_ab;
        if (x == c.next_u64()) ++equal_ac;
    }
    CHECK(equal_ab == 0);
    CHECK(equal_ac == 0);
}

TEST_CASE("sequences are reproduced across threads") {
    std::vector<uint64_t> reference;
    {
        RngStream r(9, 3);
        for (int i = 0; i < 100; ++i) reference.push_back(r.next_u64());
    }
    std::vector<std::vector<uint64_t>> results(4);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&, t] {
            RngStream r(9, 3);
            for (int i = 0; i < 100; ++i) results[std::size_t(t)].push_back(r.next_u64());
        });
    for (auto& th : threads) th.join();
    for (const auto& seq : results) CHECK(seq == reference);
}

TEST_CASE("uniform stays in [0,1) and uniform_pos in (0,1)") {
    RngStream r(1, 1);
    for (int i = 0; i < 100000; ++i) {
        double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        double v = r.uniform_pos();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("uniform_below is unbiased across small ranges") {
    RngStream r(5, 5);
    const uint64_t bound = 7;
    std::vector<int64_t> counts(bound, 0);
    const int N = 140000;
    for (int i = 0; i < N; ++i) ++counts[r.uniform_below(bound)];
    for (uint64_t k = 0; k < bound; ++k) {
        double expect = double(N) / double(bound);
        CHECK(std::abs(double(counts[k]) - expect) < 5.0 * std::sqrt(expect));
    }
}

TEST_CASE("normal moments") {
    RngStream r(11, 0);
    const int N = 200000;
    double sum = 0.0, ss = 0.0;
    for (int i = 0; i < N; ++i) {
        double x = r.normal();
        sum += x;
        ss += x * x;
    }
    double mean = sum / N, var = ss / N - mean * mean;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(double(N)));
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / double(N)));
}
