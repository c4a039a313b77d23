#include "ballcover/derivatives.hpp"
#include "ballcover/errors.hpp"
#include "ballcover/witness.hpp"

#include "../support/generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace ballcover;

namespace {
Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }
}  // namespace

TEST_SUITE("witness") {

TEST_CASE("gap values") {
    const Space l2 = Space::lp(2, 2.0);
    CHECK(gap(l2, v2(1, 0), v2(1, 1), 2.0) == doctest::Approx(std::sqrt(2.0) - 2.0));
    CHECK(gap(l2, v2(1, 0), v2(0, 1), 5.0) == doctest::Approx(std::sqrt(26.0) - 5.0));
    CHECK(gap(Space::linf(2), v2(1, -3), v2(-1.5, 4.5), -1.5) == doctest::Approx(-4.5));
}

TEST_CASE("positive side") {
    const Space l2 = Space::lp(2, 2.0);
    const auto w = positive_witness(l2, v2(1, 0), v2(1, 1));
    REQUIRE(w.found());
    CHECK(w.witness->lambda == doctest::Approx(2.0));
    CHECK(w.witness->radius == doctest::Approx((std::sqrt(2.0) + 2.0) / 2.0));
    CHECK(w.witness->margin == doctest::Approx((2.0 - std::sqrt(2.0)) / 2.0));
    CHECK(witness_is_valid(l2, v2(1, 0), v2(1, 1), *w.witness));

    const auto none = positive_witness(l2, v2(1, 0), v2(0, 1));
    CHECK_FALSE(none.found());
    REQUIRE(none.absence_profile);
    CHECK(none.absence_profile->samples.size() == 61);
    CHECK(none.absence_profile->limit_estimate >= 0.0);

    CHECK_FALSE(positive_witness(Space::lp(2, 1.0), v2(1, 0), v2(1, 1)).found());
    CHECK_THROWS_AS(positive_witness(l2, v2(0, 0), v2(1, 1)), PreconditionError);
}

TEST_CASE("negative side") {
    const Space l2 = Space::lp(2, 2.0);
    const auto w = negative_witness(l2, v2(1, 0), v2(-1, 0.1));
    REQUIRE(w.found());
    CHECK(w.witness->lambda == doctest::Approx(-2.0));
    CHECK(w.witness->radius > std::hypot(1.0, 0.1));
    CHECK(w.witness->radius <= 2.0);
    CHECK(witness_is_valid(l2, v2(1, 0), v2(-1, 0.1), *w.witness));

    CHECK_FALSE(negative_witness(l2, v2(1, 0), v2(1, 1)).found());
    const auto li = negative_witness(Space::linf(2), v2(1, 1), v2(1, -1));
    CHECK_FALSE(li.found());
    CHECK(li.rho == doctest::Approx(1.0));
}

TEST_CASE("grid oracle") {
    const Space l2 = Space::lp(2, 2.0);
    CHECK(witness_bruteforce_oracle(l2, v2(1, 0), v2(1, 1), Side::positive));
    CHECK_FALSE(witness_bruteforce_oracle(l2, v2(1, 0), v2(0, 1), Side::positive));
    CHECK(witness_bruteforce_oracle(Space::linf(2), v2(1, 1), v2(0.5, 0.5), Side::positive));
}

TEST_CASE("gap profile is nonincreasing toward its limit") {
    testing::Rng rng(17);
    for (const auto& fam : testing::standard_families()) {
        const Space s = testing::make_space(fam, 3, rng);
        for (int k = 0; k < 50; ++k) {
            const Vector x = testing::random_point(s, rng);
            const Vector y = testing::random_partner(s, x, rng);
            const auto prof = gap_profile(s, x, y);
            const double slack = 1e-12 * std::max(1.0, norm(s, y));
            for (std::size_t i = 1; i < prof.samples.size(); ++i) {
                CHECK(prof.samples[i].second <= prof.samples[i - 1].second + slack);
            }
            const double limit = -rho_analytic(s, x, y).rho_minus / norm(s, x);
            if (duality_set(s, x).extreme_points.size() == 1) {
                CHECK(prof.limit_estimate == doctest::Approx(limit).epsilon(1e-6).scale(norm(s, y)));
            } else {
                // Ties within 1e-12 count as kinks analytically; at lambda ~ 2^60
                // the wide evaluation resolves them, which only lowers the limit.
                CHECK(prof.limit_estimate <= limit + 1e-6 * norm(s, y));
            }
        }
    }
}

TEST_CASE("witnesses re-verify") {
    testing::Rng rng(19);
    for (const auto& fam : testing::standard_families()) {
        const Space s = testing::make_space(fam, 4, rng);
        for (int k = 0; k < 100; ++k) {
            const Vector x = testing::random_point(s, rng);
            const Vector y = testing::random_partner(s, x, rng);
            for (auto policy : {WitnessPolicy::first_hit, WitnessPolicy::saturate}) {
                const auto w = positive_witness(s, x, y, {}, policy);
                if (w.found()) CHECK(witness_is_valid(s, x, y, *w.witness));
                const auto v = negative_witness(s, x, y, {}, policy);
                if (v.found()) CHECK(witness_is_valid(s, x, y, *v.witness));
            }
        }
    }
}

}  // TEST_SUITE
