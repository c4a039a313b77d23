#include "ballcover/derivatives.hpp"
#include "ballcover/errors.hpp"

#include "../support/generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace ballcover;

namespace {
Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }
Vector v3(double a, double b, double c) { return (Vector(3) << a, b, c).finished(); }
}  // namespace

TEST_SUITE("derivatives") {

TEST_CASE("closed forms") {
    auto d = rho_analytic(Space::lp(2, 2.0), v2(3, 4), v2(1, 0));
    CHECK(d.rho_plus == doctest::Approx(3.0));
    CHECK(d.rho_minus == doctest::Approx(3.0));

    d = rho_analytic(Space::lp(3, 1.0), v3(1, -2, 0), v3(1, 1, 1));
    CHECK(d.rho_plus == doctest::Approx(3.0));
    CHECK(d.rho_minus == doctest::Approx(-3.0));

    d = rho_analytic(Space::linf(2), v2(2, -2), v2(1, 3));
    CHECK(d.rho_plus == doctest::Approx(2.0));
    CHECK(d.rho_minus == doctest::Approx(-6.0));

    CHECK_THROWS_AS(rho_analytic(Space::lp(2, 2.0), v2(0, 0), v2(1, 0)), PreconditionError);
}

TEST_CASE("finite differences") {
    auto d = rho_finite_difference(Space::lp(2, 2.0), v2(1, 0), v2(0, 1));
    CHECK(std::abs(d.rho_plus) <= d.error_bound + 1e-12);
    CHECK(std::abs(d.rho_minus) <= d.error_bound + 1e-12);

    const Space l3 = Space::lp(2, 3.0);
    d = rho_finite_difference(l3, v2(1, 1), v2(1, 0));
    const auto a = rho_analytic(l3, v2(1, 1), v2(1, 0));
    CHECK(std::abs(d.rho_plus - a.rho_plus) < 1e-5);
    CHECK(std::abs(d.rho_minus - a.rho_minus) < 1e-5);

    d = rho_finite_difference(Space::linf(2), v2(1, 1), v2(1, -1));
    CHECK(d.rho_plus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.rho_minus == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("duality sets") {
    auto j = duality_set(Space::lp(2, 2.0), v2(3, 4));
    REQUIRE(j.extreme_points.size() == 1);
    CHECK(j.extreme_points[0][0] == doctest::Approx(0.6));
    CHECK(j.extreme_points[0][1] == doctest::Approx(0.8));

    j = duality_set(Space::linf(2), v2(1, 1));
    REQUIRE(j.extreme_points.size() == 2);
    CHECK(j.extreme_points[0] == v2(1, 0));
    CHECK(j.extreme_points[1] == v2(0, 1));

    j = duality_set(Space::lp(2, 1.0), v2(1, 0));
    REQUIRE(j.extreme_points.size() == 2);
    CHECK(j.extreme_points[0] == v2(1, 1));
    CHECK(j.extreme_points[1] == v2(1, -1));
}

TEST_CASE("smoothness") {
    auto r = is_smooth(Space::lp(3, 2.0), v3(1, -2, 0.3));
    CHECK(r.smooth);
    CHECK(r.margin == doctest::Approx(0.0));
    r = is_smooth(Space::linf(2), v2(1, 1));
    CHECK_FALSE(r.smooth);
    CHECK(r.margin == doctest::Approx(1.0));
    r = is_smooth(Space::linf(2), v2(1, 0.5));
    CHECK(r.smooth);
    CHECK(r.margin == 0.0);
}

TEST_CASE("support of the duality set reproduces the derivatives") {
    testing::Rng rng(5);
    for (const auto& fam : testing::standard_families()) {
        for (int n = 2; n <= 4; ++n) {
            const Space s = testing::make_space(fam, n, rng);
            for (int k = 0; k < 100; ++k) {
                const Vector x = testing::random_point(s, rng);
                const Vector y = testing::random_partner(s, x, rng);
                const double nx = norm(s, x);
                const auto d = rho_analytic(s, x, y);
                const auto j = duality_set(s, x);
                CHECK(d.rho_plus == doctest::Approx(nx * j.support_max(y)).epsilon(1e-9));
                CHECK(d.rho_minus == doctest::Approx(nx * j.support_min(y)).epsilon(1e-9));
                for (const auto& f : j.extreme_points) {
                    CHECK(f.dot(x) == doctest::Approx(nx).epsilon(1e-9));
                    CHECK(dual_norm(s, Functional{f}) == doctest::Approx(1.0).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("finite-difference quotients are monotone") {
    testing::Rng rng(13);
    for (const auto& fam : testing::standard_families()) {
        const Space s = testing::make_space(fam, 3, rng);
        for (int k = 0; k < 100; ++k) {
            const Vector x = testing::random_point(s, rng);
            const Vector y = testing::random_partner(s, x, rng);
            const auto t = rho_finite_difference_trace(s, x, y);
            const double slack = 1e-12 * std::max(1.0, norm(s, x) * norm(s, y));
            for (std::size_t i = 1; i < t.forward.size(); ++i) {
                CHECK(t.forward[i] <= t.forward[i - 1] + slack);
                CHECK(t.backward[i] >= t.backward[i - 1] - slack);
            }
        }
    }
}

}  // TEST_SUITE
