#pragma once

#include "ballcover/covering.hpp"
#include "ballcover/spaces.hpp"
#include "ballcover/tolerances.hpp"

#include <optional>
#include <vector>

namespace ballcover {

/// Unit directions x_i and a finite target set A of nonzero points.
struct SelectionInstance {
    Space space;
    std::vector<Vector> directions;
    std::vector<Vector> points;
    /// Optional stand-in for the closure of A (limit points).
    std::vector<Vector> closure_points;
};

/// A point no selection separates, with the selection that fails: for each
/// direction the extreme point of J(x_i) minimizing f(point).
struct SelectionFailure {
    int point_index = -1;
    std::vector<Vector> selection;
};

struct SeparationVerdict {
    bool separated = false;
    /// Per point, the direction maximizing rho_minus(x_i, point) when it
    /// exceeds the tolerance.
    std::vector<std::optional<int>> witness_index;
    /// First failing point, when not separated.
    std::optional<SelectionFailure> failure;
};

/// Throws PreconditionError on an invalid instance.
void validate_instance(const SelectionInstance& instance);

/// Every selection of the duality map positively separates A iff every point
/// has some i with rho_minus(x_i, a) > tol (min over J(x_i) is rho_minus).
SeparationVerdict positively_separates(const SelectionInstance& instance, const Tolerances& tol = {});

/// Enumerates all selections of extreme points of J(x_i) (l1, linf and
/// polyhedral spaces only, at most 1e6 selections).
bool selection_oracle_exhaustive(const SelectionInstance& instance, const Tolerances& tol = {});

struct EquivalenceReport {
    SeparationVerdict verdict;
    /// Constructed when separated: one ball per direction on its positive ray.
    std::optional<Covering> covering;
    bool covering_certified = false;
    /// Every point inside a ball on ray i classifies as positive_side for x_i.
    bool necessity_verified = false;
    /// Not separated: the failing point has certified witness absence on every ray.
    bool absence_verified = false;
    bool agree = false;
};

/// Runs both directions of the separation / ball-covering equivalence on the
/// instance points.
EquivalenceReport separation_ballcover_equivalence(const SelectionInstance& instance, const Tolerances& tol = {});

struct OrthogonalHit {
    int closure_index = -1;
    int direction_index = -1;
    double rho_minus = 0.0;
    double rho_plus = 0.0;
};

struct ClosureReport {
    /// No closure point is (numerically) the origin.
    bool distance_positive = true;
    std::optional<int> zero_point;
    /// No closure point is Birkhoff-James orthogonal to a direction.
    bool disjoint = true;
    std::vector<OrthogonalHit> orthogonal_hits;
    bool open_instance_separated = false;
    /// Every nonzero closure point has some rho_minus(x_i, a) > tol.
    bool conclusion_holds = false;
    /// Covering built over points and closure points certifies on both.
    bool closure_covering_certified = false;
    /// Human-readable reasons, one per violated hypothesis or failed check.
    std::vector<std::string> findings;

    bool hypotheses_hold() const noexcept { return distance_positive && disjoint; }
};

/// Checks d(0, closure) > 0 and that the closure misses every x_i^perp, then
/// whether the separation conclusion extends to the closure points. Never throws
/// on hypothesis failure; those are reported.
ClosureReport closure_precondition_check(const SelectionInstance& instance, const std::vector<Vector>& closure_points,
                                         const Tolerances& tol = {});

}  // namespace ballcover
