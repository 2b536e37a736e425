#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ssplab/kernels.hpp"
#include "ssplab/linalg.hpp"
#include "ssplab/rng.hpp"

using namespace ssplab;

TEST_CASE("ldlt solves a hand-checked SPD system") {
    Mat a(2, 2);
    a(0, 0) = 4;
    a(0, 1) = 1;
    a(1, 0) = 1;
    a(1, 1) = 3;
    LdltFactor f(a);
    const Vec x = f.solve({1.0, 2.0});
    // inverse of [[4,1],[1,3]] is 1/11 [[3,-1],[-1,4]]
    CHECK(x[0] == doctest::Approx((3.0 * 1 - 1.0 * 2) / 11.0));
    CHECK(x[1] == doctest::Approx((-1.0 * 1 + 4.0 * 2) / 11.0));
    CHECK(f.quad_inv(Vec{1.0, 0.0}) == doctest::Approx(3.0 / 11.0));
}

TEST_CASE("ldlt random SPD round trip") {
    Rng rng(3);
    const std::size_t n = 12;
    Mat a = Mat::identity(n);
    for (int r = 0; r < 30; ++r) {
        Vec v(n);
        for (double& x : v) x = rng.next_u01() - 0.5;
        kernels::rank1_update(a.a.data(), n, 1.0, v.data());
    }
    Vec b(n);
    for (double& x : b) x = rng.next_u01();
    LdltFactor f(a);
    const Vec x = f.solve(b);
    const Vec ax = mat_vec(a, x);
    for (std::size_t i = 0; i < n; ++i) CHECK(ax[i] == doctest::Approx(b[i]).epsilon(1e-10));
    // quadratic form equals x^T A^{-1} x computed through solve
    const Vec inv_b = f.solve(b);
    CHECK(f.quad_inv(b) == doctest::Approx(kernels::dot(b.data(), inv_b.data(), n)));
    CHECK(f.min_pivot() >= 1.0 - 1e-9);
}

TEST_CASE("ldlt rejects indefinite input") {
    Mat a(2, 2);
    a(0, 0) = 1;
    a(1, 1) = -1;
    CHECK_THROWS_AS(LdltFactor{a}, SsplabError);
}

TEST_CASE("lu handles pivoting and flags singularity") {
    Mat a(3, 3);
    // needs a row swap: zero on the first pivot
    a(0, 0) = 0;
    a(0, 1) = 2;
    a(0, 2) = 1;
    a(1, 0) = 1;
    a(1, 1) = 1;
    a(1, 2) = 1;
    a(2, 0) = 2;
    a(2, 1) = 0;
    a(2, 2) = 3;
    LuFactor f(a);
    REQUIRE_FALSE(f.singular());
    const Vec x = f.solve({5.0, 6.0, 13.0});
    const Vec ax = mat_vec(a, x);
    CHECK(ax[0] == doctest::Approx(5.0));
    CHECK(ax[1] == doctest::Approx(6.0));
    CHECK(ax[2] == doctest::Approx(13.0));

    Mat s(2, 2);
    s(0, 0) = 1;
    s(0, 1) = 2;
    s(1, 0) = 2;
    s(1, 1) = 4;
    LuFactor sing(s);
    CHECK(sing.singular());
    CHECK_THROWS_AS(sing.solve({1.0, 1.0}), SsplabError);
}

TEST_CASE("symmetrize and asymmetry measure") {
    Mat a(2, 2);
    a(0, 1) = 1.0;
    a(1, 0) = 3.0;
    CHECK(a.max_abs_asymmetry() == doctest::Approx(2.0));
    a.symmetrize();
    CHECK(a(0, 1) == doctest::Approx(2.0));
    CHECK(a(1, 0) == doctest::Approx(2.0));
    CHECK(a.max_abs_asymmetry() == 0.0);
}
