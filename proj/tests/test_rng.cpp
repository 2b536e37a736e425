#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <vector>

#include "doctest.h"
#include "ssplab/rng.hpp"

using namespace ssplab;

TEST_CASE("same seed, same position, same draws") {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("named splits are order independent") {
    Rng root(9);
    Rng c1 = root.split("alpha");
    Rng c2 = root.split("beta");
    // consuming from one child does not move the other
    Rng root2(9);
    Rng c2_again = root2.split("beta");
    (void)root2.split("alpha");
    for (int i = 0; i < 100; ++i) (void)c1.next_u64();
    CHECK(c2.next_u64() == c2_again.next_u64());
    CHECK(root.split("alpha").next_u64() != root.split("beta").next_u64());
}

TEST_CASE("u01 stays in [0,1) and fills the range") {
    Rng rng(5);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_u01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("discrete sampling respects the distribution") {
    Rng rng(77);
    const std::vector<double> p{0.25, 0.0, 0.5, 0.25};
    std::array<long, 4> counts{};
    const long n = 200000;
    for (long i = 0; i < n; ++i) ++counts[rng.sample_discrete(p)];
    CHECK(counts[1] == 0);
    CHECK(std::abs(counts[0] / double(n) - 0.25) < 0.01);
    CHECK(std::abs(counts[2] / double(n) - 0.50) < 0.01);
    // deterministic row
    const std::vector<double> det{0.0, 1.0, 0.0};
    for (int i = 0; i < 50; ++i) CHECK(rng.sample_discrete(det) == 1);
}
