#include <doctest.h>

#include <cmath>

#include "mpa/errors.hpp"
#include "mpa/growth.hpp"
#include "oracles.hpp"

using namespace mpa;

TEST_CASE("patch growth: zeros and the baseline stationary value") {
    CHECK(patch_growth(0.0, 0.4, 0.5) == 0.0);
    CHECK(patch_growth(0.5, 0.4, 0.5) == 0.0);
    // 0.4*0.21875*(1 - 0.21875/0.5) equals alpha*(r1-delta)*(r1+delta)/(4*r1)
    const double direct = patch_growth(0.21875, 0.4, 0.5);
    CHECK(direct == doctest::Approx(0.04921875).epsilon(1e-15));
    const double closed = 0.5 * (0.4 - 0.05) * (0.4 + 0.05) / (4.0 * 0.4);
    CHECK(std::fabs(direct - closed) <= 1e-16);
}

TEST_CASE("patch growth: domain errors") {
    CHECK_THROWS_AS(patch_growth(0.1, 0.4, 0.0), ValidationError);
    CHECK_THROWS_AS(patch_growth(0.1, 0.4, -1.0), ValidationError);
    CHECK_THROWS_AS(patch_growth(-0.1, 0.4, 0.5), ValidationError);
    CHECK_THROWS_AS(patch_growth_derivative(-0.1, 0.4, 0.5), ValidationError);
}

TEST_CASE("patch growth derivative: slope values") {
    CHECK(patch_growth_derivative(0.0, 0.4, 0.5) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(patch_growth_derivative(0.25, 0.4, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
    // at the closed-form reserve stock the slope equals the discount rate
    CHECK(patch_growth_derivative(0.21875, 0.4, 0.5) ==
          doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("patch growth derivative matches central differences") {
    testo::Rng rng(20240811ull);
    for (int i = 0; i < 100; ++i) {
        const double r = rng.uniform(0.05, 1.5);
        const double K = rng.uniform(0.1, 1.0);
        const double x = rng.uniform(0.01, K * 0.99);
        const double h = 1e-6 * std::max(1.0, x);
        const double fd = (patch_growth(x + h, r, K) - patch_growth(x - h, r, K)) / (2 * h);
        const double an = patch_growth_derivative(x, r, K);
        CHECK(std::fabs(fd - an) <= 1e-8 * std::max(1.0, std::fabs(an)));
    }
}

TEST_CASE("patch growth is strictly concave") {
    testo::Rng rng(77001ull);
    for (int i = 0; i < 50; ++i) {
        const double r = rng.uniform(0.05, 1.5);
        const double K = rng.uniform(0.2, 1.0);
        const double x = rng.uniform(0.05 * K, 0.95 * K);
        const double h = 0.01 * K;
        const double second = patch_growth(x + h, r, K) - 2.0 * patch_growth(x, r, K) +
                              patch_growth(x - h, r, K);
        CHECK(second < 0.0);
    }
}

TEST_CASE("shared field growth: zeros") {
    CHECK(shared_field_growth(0.3, 1.0, 0.28739) == 0.0);
    CHECK(shared_field_growth(0.0, 0.4, 0.28739) == 0.0);
    CHECK(shared_field_growth(0.875, 1.0, 0.28739) == 0.0);
    CHECK_THROWS_AS(shared_field_growth(0.5, 0.4, 0.3), ValidationError);  // x > z
    CHECK_THROWS_AS(shared_field_growth(0.5, 1.1, 0.3), ValidationError);  // z > 1
}

TEST_CASE("aggregate growth and the split identity") {
    CHECK(aggregate_growth(1.0, 0.3) == 0.0);
    CHECK(aggregate_growth(0.5, 0.3) == doctest::Approx(0.075).epsilon(1e-15));
    const double split =
        shared_field_growth(0.2, 0.5, 0.3) + shared_field_growth(0.3, 0.5, 0.3);
    CHECK(split == doctest::Approx(0.075).epsilon(1e-15));
    CHECK_THROWS_AS(aggregate_growth(1.5, 0.3), ValidationError);
    CHECK_THROWS_AS(aggregate_growth(-0.5, 0.3), ValidationError);
}

TEST_CASE("aggregation identity over random splits") {
    testo::Rng rng(912ull);
    for (int i = 0; i < 200; ++i) {
        const double z = rng.uniform(0.0, 1.0);
        const double x1 = z * rng.uniform01();
        const double x2 = z - x1;
        const double r = rng.uniform(0.05, 1.0);
        const double sum = shared_field_growth(x1, z, r) + shared_field_growth(x2, z, r);
        const double agg = aggregate_growth(z, r);
        // identical up to one rounding of the distributed product
        CHECK(std::fabs(sum - agg) <= 4.0 * 2.220446049250313e-16 * std::max(1.0, std::fabs(agg)));
    }
}
