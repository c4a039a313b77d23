#include "ballcover/derivatives.hpp"
#include "ballcover/errors.hpp"
#include "ballcover/smoothapprox.hpp"

#include <doctest.h>

using namespace ballcover;

namespace {
Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }
}  // namespace

TEST_SUITE("smoothapprox") {

TEST_CASE("shrink sequence") {
    CHECK(linf_shrink_sequence(2, 2) == v2(1, 0.5));
    CHECK(linf_shrink_sequence(3, 10).isApprox((Vector(3) << 1, 0.9, 0.9).finished()));
    CHECK(linf_shrink_sequence(2, 1) == v2(1, 0));
    const Space li = Space::linf(2);
    for (long n : {1L, 2L, 10L, 1000000L}) {
        const Vector u = linf_shrink_sequence(2, n);
        CHECK(is_smooth(li, u).smooth);
        CHECK(norm(li, u - v2(1, 1)) == doctest::Approx(1.0 / static_cast<double>(n)));
    }
    CHECK_THROWS_AS(linf_shrink_sequence(1, 3), PreconditionError);
}

TEST_CASE("general linf shrink keeps the first active coordinate") {
    const Space li = Space::linf(3);
    const Vector x = (Vector(3) << 0.5, -2, 2).finished();
    const Vector x3 = SmoothingSequence::linf_shrink().element(li, x, 4);
    CHECK(x3.isApprox((Vector(3) << 0.375, -2, 1.5).finished()));
    CHECK(is_smooth(li, x3).smooth);
}

TEST_CASE("transfer") {
    const Space li = Space::linf(2);
    const auto r = transfer_witness(li, v2(1, 1), v2(1, 0.5), SmoothingSequence::linf_shrink());
    REQUIRE(r.found());
    CHECK(*r.n0 == 1);
    CHECK(r.x_n0 == v2(1, 0));
    CHECK(r.rho == doctest::Approx(1.0));

    const Space l5 = Space::linf(5);
    const Vector y = (Vector(5) << 0.3, 1, 1, 1, 1).finished();
    const auto r5 = transfer_witness(l5, Vector::Ones(5), y, SmoothingSequence::linf_shrink());
    REQUIRE(r5.found());
    CHECK(*r5.n0 == 1);
    CHECK(r5.rho == doctest::Approx(0.3));

    CHECK_THROWS_AS(transfer_witness(li, v2(1, 1), v2(1, -1), SmoothingSequence::linf_shrink()), PreconditionError);
}

TEST_CASE("custom and blended sequences") {
    const Space li = Space::linf(2);
    const auto seq = SmoothingSequence::custom({v2(1, 0.2), v2(1, 0.9)});
    const auto r = transfer_witness(li, v2(1, 1), v2(1, 0.5), seq);
    CHECK(*r.n0 == 1);
    const auto bad = SmoothingSequence::custom({v2(1, 1)});
    CHECK_THROWS_AS(transfer_witness(li, v2(1, 1), v2(1, 0.5), bad), PreconditionError);

    const Space l1 = Space::lp(2, 1.0);
    const auto b = transfer_witness(l1, v2(1, 0), v2(1, 0.5), SmoothingSequence::radial_lp_blend());
    REQUIRE(b.found());
    CHECK(is_smooth(l1, b.x_n0).smooth);
    CHECK_THROWS_AS(SmoothingSequence::radial_lp_blend().element(li, v2(1, 1), 1), PreconditionError);
}

}  // TEST_SUITE
