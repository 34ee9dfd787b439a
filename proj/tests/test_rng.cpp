#include <doctest.h>

#include <map>

#include "tracx/rng.hpp"

using namespace tracx;

// Frozen reference vectors for the generators. Any change that alters these
// silently changes every seeded experiment, so they are pinned here.
TEST_CASE("splitmix64 reference vectors") {
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(s) == 0x6e789e6aa1b965f4ULL);
    CHECK(splitmix64(s) == 0x06c45d188009454fULL);
    s = 0x123456789abcdef0ULL;
    CHECK(splitmix64(s) == 0x161922c645ce50e8ULL);
}

TEST_CASE("xoshiro256** is deterministic across instances") {
    Rng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        all_equal = all_equal && (va == b.next_u64());
        any_diff = any_diff || (va != c.next_u64());
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("next_double stays in [0,1) and fills the range") {
    Rng rng(7);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double d = rng.next_double();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("below is unbiased enough and in range") {
    Rng rng(11);
    std::map<std::uint64_t, int> counts;
    const int n = 30000;
    for (int i = 0; i < n; ++i) ++counts[rng.below(6)];
    CHECK(counts.size() == 6);
    for (const auto& [k, c] : counts) {
        CHECK(k < 6);
        CHECK(c > n / 6 - n / 30);
        CHECK(c < n / 6 + n / 30);
    }
}

TEST_CASE("shuffle is a permutation and seed-stable") {
    std::vector<int> v(20);
    for (int i = 0; i < 20; ++i) v[static_cast<std::size_t>(i)] = i;
    auto w = v;
    Rng r1(5), r2(5);
    r1.shuffle(v);
    r2.shuffle(w);
    CHECK(v == w);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 20; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("derive_seed separates run streams") {
    const auto s0 = derive_seed(99, 0);
    const auto s1 = derive_seed(99, 1);
    CHECK(s0 != s1);
    CHECK(derive_seed(99, 0) == s0);
    Rng a(s0), b(s1);
    int same = 0;
    for (int i = 0; i < 32; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}
