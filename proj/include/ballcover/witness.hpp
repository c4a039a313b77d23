#pragma once

#include "ballcover/spaces.hpp"
#include "ballcover/tolerances.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ballcover {

/// Certificate that the open ball B(lambda * x, radius) contains y and
/// excludes the origin: ||lambda x - y|| + margin <= radius <= |lambda| ||x||.
struct Witness {
    double lambda = 0.0;
    double radius = 0.0;
    double margin = 0.0;
};

/// Samples of g(lambda) = ||lambda x - y|| - |lambda| ||x|| along the probe
/// sequence lambda_k = +-2^k b, b the smallest power of two >= ||y||/||x||.
/// On the positive ray g is convex and nonincreasing with limit
/// -rho_minus(x, y)/||x||.
struct GapProfile {
    std::vector<std::pair<double, double>> samples;
    double limit_estimate = 0.0;
};

/// Outcome of a witness search on one side of the ray through x.
struct WitnessResult {
    /// Present iff a ball exists on the requested side.
    std::optional<Witness> witness;
    /// rho_minus(x, y) for the positive side, rho_plus(x, y) for the negative.
    double rho = 0.0;
    /// Present for certified absence: the stabilized gap profile.
    std::optional<GapProfile> absence_profile;

    bool found() const noexcept { return witness.has_value(); }
};

/// How far the doubling search continues after the first negative gap.
enum class WitnessPolicy {
    /// Stop at the first probe with a resolvable negative gap.
    first_hit,
    /// Keep doubling until the gap reaches 90% of its limit, which maximizes
    /// the certificate margin for covering constructions.
    saturate,
};

/// g(lambda) = ||lambda x - y|| - |lambda| ||x||. A ball centered at lambda x
/// containing y and excluding 0 exists iff g(lambda) < 0.
double gap(const Space& space, const VectorRef& x, const VectorRef& y, double lambda);

/// Gap samples on the positive ray for k = 0..60, evaluated in extended
/// precision. limit_estimate is the last sample.
GapProfile gap_profile(const Space& space, const VectorRef& x, const VectorRef& y);

/// Ball centered at lambda x with lambda > 0. Succeeds iff rho_minus(x, y) > tol.
WitnessResult positive_witness(const Space& space, const VectorRef& x, const VectorRef& y, const Tolerances& tol = {},
                               WitnessPolicy policy = WitnessPolicy::first_hit);

/// Ball centered at lambda x with lambda < 0. Succeeds iff rho_plus(x, y) < -tol.
WitnessResult negative_witness(const Space& space, const VectorRef& x, const VectorRef& y, const Tolerances& tol = {},
                               WitnessPolicy policy = WitnessPolicy::first_hit);

enum class Side { positive, negative };

/// Independent decision by a dense logarithmic lambda grid
/// 1e-6 * 1.01^j up to 1e9 ||y||/||x||: true iff min g < -10 * tol.
bool witness_bruteforce_oracle(const Space& space, const VectorRef& x, const VectorRef& y, Side side,
                               const Tolerances& tol = {});

/// Re-evaluates the witness invariants directly in double precision.
bool witness_is_valid(const Space& space, const VectorRef& x, const VectorRef& y, const Witness& w);

}  // namespace ballcover
