#include "sftlab/errors.hpp"
#include "sftlab/orbits.hpp"
#include "sftlab/zeta.hpp"

#include <doctest.h>

#include <cmath>

using namespace sftlab;

TEST_CASE("zeta inverse of the full 2-shift") {
    CHECK(zeta_inverse(2, 1, 0.0, 20).value == 1.0);
    // P_1=2, P_2=1, P_3=2
    double three = std::pow(0.75, 2) * (1 - 0.0625) * std::pow(1 - 1.0 / 64, 2);
    CHECK(zeta_inverse(2, 1, 0.25, 3).truncated_value == doctest::Approx(three).epsilon(1e-12));
    CHECK(three == doctest::Approx(0.51099).epsilon(1e-4));
    // the full product is 1 - 2 alpha
    auto z = zeta_inverse(2, 1, 0.25, 20);
    CHECK(z.value == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(std::abs(z.log_value - std::log(0.5)) <= z.tail_bound);
    for (double a : {0.1, 0.2, 0.3, 0.4}) {
        auto zz = zeta_inverse(2, 1, a, 30);
        CHECK(std::log(zz.value) - std::log(1 - 2 * a) >= 0);
        CHECK(std::log(zz.value) - std::log(1 - 2 * a) <= zz.tail_bound);
    }
}

TEST_CASE("zeta diverges at alpha |A| >= 1") {
    auto z = zeta_inverse(2, 1, 0.5, 20);
    CHECK(z.divergent);
    CHECK(z.value == 0.0);
    CHECK(std::isinf(z.tail_bound));
    CHECK(zeta_inverse(3, 2, 0.4, 4).divergent);
    CHECK(!zeta_inverse(3, 2, 0.3, 4).divergent);
    CHECK_THROWS_AS(zeta_inverse(2, 1, -0.1, 5), DomainError);
}

TEST_CASE("tail bounds cover the neglected factors") {
    for (int d = 1; d <= 2; ++d) {
        int big = d == 1 ? 30 : 8;
        for (double a : {0.05, 0.1, 0.2, 0.3}) {
            for (int j = 1; j < big; ++j) {
                auto z = zeta_inverse(2, d, a, j);
                auto far = zeta_inverse(2, d, a, big);
                double gap = std::log(z.truncated_value) - std::log(far.truncated_value);
                CHECK(gap >= -1e-15);
                CHECK(gap <= z.tail_bound * (1 + 1e-12));
                CHECK(z.tail_bound <= z.tail_bound_coarse * (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("independence bound is the truncation at n/2") {
    for (int n : {2, 5, 8, 9})
        for (double a : {0.1, 0.6, 0.9})
            CHECK(independence_upper_bound(2, 1, a, n) ==
                  doctest::Approx(zeta_inverse(2, 1, a, n / 2).truncated_value).epsilon(1e-14));
}
