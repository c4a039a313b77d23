#pragma once

#include "ballcover/spaces.hpp"
#include "ballcover/tolerances.hpp"

#include <optional>
#include <vector>

namespace ballcover {

/// Open ball B(center, radius) = { y : ||center - y|| < radius }.
struct Ball {
    Vector center;
    double radius = 0.0;
};

/// The set a covering must contain: explicit points, or the unit sphere
/// represented by a certified net.
struct TargetSet {
    enum class Kind { finite_points, unit_sphere };

    Kind kind = Kind::finite_points;
    Eigen::MatrixXd points;   // dim x count, one target (or net) point per column
    double resolution = 0.0;  // net resolution; 0 for finite point sets

    static TargetSet finite(const std::vector<Vector>& pts);
    static TargetSet sphere(SphereNet net);

    Eigen::Index size() const noexcept { return points.cols(); }
};

struct CoverageCertificate {
    /// min over target points of max over balls of (radius - distance).
    double min_slack = 0.0;
    double net_resolution = 0.0;
    /// net_resolution < min_slack. For sphere targets the 1-Lipschitz transfer
    /// then covers every unit vector within the resolution of a net point.
    bool full_cover = false;
    /// Every ball has radius <= ||center|| (within the certificate slack).
    bool balls_exclude_origin = false;
    /// Target point attaining min_slack.
    Eigen::Index worst_point = -1;

    bool valid() const noexcept { return full_cover && balls_exclude_origin; }
};

struct Covering {
    std::vector<Ball> balls;
    std::optional<CoverageCertificate> certificate;
};

struct UncoveredPoint {
    Vector point;
    /// radius - ||center - point|| per ball; all <= certificate slack.
    std::vector<double> per_ball_slack;
};

/// Replaces balls B(lambda_i x, r_i) (lambda_i > 0, r_i <= lambda_i ||x||)
/// by B(lambda x, max_i (r_i + (lambda - lambda_i)||x||)), which contains
/// their union and still excludes the origin.
Ball merge_collinear(const Space& space, const std::vector<Ball>& balls_on_ray, const VectorRef& direction,
                     double lambda_target);

struct ExposedPoint {
    /// Unit vector with J(point) = { functional }.
    Vector point;
    /// The input functional scaled to unit dual norm.
    Vector functional;
};

/// Smooth norming point of f / ||f||_*. Throws PreconditionError when that
/// functional is not an exposed point of the dual ball.
ExposedPoint exposed_norming_point(const Space& space, const VectorRef& f);

/// Covering of `target` by one ball per functional, all centered on rays
/// through the smooth norming points. Each f_i must have unit dual norm and
/// max_i f_i(y) > 0 must hold on the target. The certificate is attached.
Covering cover_from_functionals(const Space& space, const TargetSet& target, const std::vector<Vector>& functionals,
                                const Tolerances& tol = {});

/// Symmetric covering of the unit sphere by 2n balls from n linearly
/// independent exposed functionals. Throws CertificateError if the net is too
/// coarse for the achieved slack.
Covering symmetric_cover_2n(const Space& space, const std::vector<Vector>& functionals, double net_delta,
                            const Tolerances& tol = {});

/// Covering by n+1 balls in a smooth space from n independent functionals
/// plus f_{n+1} = -sum f_i. Throws PreconditionError for non-smooth families
/// and CertificateError if certification fails.
Covering smooth_cover_n_plus_1(const Space& space, const std::vector<Vector>& functionals, const TargetSet& target,
                               const Tolerances& tol = {});
Covering smooth_cover_n_plus_1(const Space& space, const std::vector<Vector>& functionals, double net_delta,
                               const Tolerances& tol = {});

/// Slack certificate for `balls` over `target`. Reports failure through the
/// certificate fields rather than throwing.
CoverageCertificate verify_cover(const Space& space, const std::vector<Ball>& balls, const TargetSet& target,
                                 const Tolerances& tol = {});

/// Unit vector outside every ball of a candidate that is too small to cover
/// the sphere: fewer than n symmetric pairs (symmetric = true) or at most n
/// balls. The returned point is re-verified by direct distance computation.
UncoveredPoint adversary_uncovered(const Space& space, const std::vector<Ball>& candidate, bool symmetric,
                                   const Tolerances& tol = {});

/// Unit vectors spanning the common kernel of the rows of `rows`
/// (singular values below 1e-10 count as zero). Exposed for testing.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& rows);

namespace detail {

/// Per-direction accumulator for the ray merge: tracks the largest center
/// multiple and the smallest margin lambda_i ||x|| - r_i among the merged balls.
struct RayAccumulator {
    Vector direction;
    double direction_norm = 1.0;
    double lambda = 0.0;
    double min_offset = 0.0;
    bool used = false;

    void add(double lambda_i, double radius_i);
    /// The merged ball; a ball of radius ||x||/2 at x when nothing was added.
    Ball ball() const;
};

/// Witness per target point plus ray merge, with the assignment given.
/// `assignment[j]` indexes `directions` (unit smooth vectors).
std::vector<RayAccumulator> accumulate_witnesses(const Space& space, const std::vector<Vector>& directions,
                                                 const Eigen::MatrixXd& points, const std::vector<int>& assignment,
                                                 const Tolerances& tol);

}  // namespace detail

}  // namespace ballcover
