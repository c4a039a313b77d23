#include "ballcover/covering.hpp"

#include "ballcover/derivatives.hpp"
#include "ballcover/detail/norm_kernel.hpp"
#include "ballcover/errors.hpp"
#include "ballcover/lp.hpp"
#include "ballcover/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ballcover {
namespace {

constexpr double kUnitTol = 1e-9;

std::string format_vector(const VectorRef& v) {
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

Eigen::Index matrix_rank(const std::vector<Vector>& rows, int dim) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    return lu.rank();
}

std::vector<Vector> normalized(const Space& space, const std::vector<Vector>& functionals) {
    std::vector<Vector> out;
    out.reserve(functionals.size());
    for (const auto& f : functionals) {
        const double d = dual_norm(space, Functional{f});
        if (d == 0.0) throw PreconditionError("functional is zero");
        out.push_back(f / d);
    }
    return out;
}

void require_independent(const Space& space, const std::vector<Vector>& functionals) {
    if (static_cast<int>(functionals.size()) != space.dim()) {
        throw PreconditionError("expected exactly n = " + std::to_string(space.dim()) + " functionals");
    }
    for (const auto& f : functionals) {
        if (f.size() != space.dim()) throw PreconditionError("functional dimension mismatch");
    }
    if (matrix_rank(functionals, space.dim()) < space.dim()) {
        throw PreconditionError("functionals are linearly dependent (rank deficiency)");
    }
}

void require_certified(const Covering& c) {
    const CoverageCertificate& cert = *c.certificate;
    if (cert.valid()) return;
    std::ostringstream os;
    if (!cert.balls_exclude_origin) {
        os << "certificate failure: a ball contains the origin";
    } else {
        os << "certificate failure: net resolution " << cert.net_resolution << " >= min slack " << cert.min_slack
           << "; shrink the net resolution";
    }
    throw CertificateError(os.str(), cert.min_slack, cert.net_resolution);
}

}  // namespace

TargetSet TargetSet::finite(const std::vector<Vector>& pts) {
    if (pts.empty()) throw PreconditionError("target point set is empty");
    TargetSet t;
    t.kind = Kind::finite_points;
    t.points.resize(pts.front().size(), static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].size() != pts.front().size()) throw PreconditionError("target points differ in dimension");
        t.points.col(static_cast<Eigen::Index>(i)) = pts[i];
    }
    return t;
}

TargetSet TargetSet::sphere(SphereNet net) {
    TargetSet t;
    t.kind = Kind::unit_sphere;
    t.points = std::move(net.points);
    t.resolution = net.resolution;
    return t;
}

Ball merge_collinear(const Space& space, const std::vector<Ball>& balls_on_ray, const VectorRef& direction,
                     double lambda_target) {
    const double nx = norm(space, direction);
    if (nx == 0.0) throw PreconditionError("merge_collinear: direction must be nonzero");
    if (balls_on_ray.empty()) throw PreconditionError("merge_collinear: no balls to merge");
    const double dd = direction.squaredNorm();
    std::vector<double> lambdas;
    for (const Ball& b : balls_on_ray) {
        (void)norm(space, b.center);
        const double lambda_i = b.center.dot(direction) / dd;
        const double off_ray = (b.center - lambda_i * direction).norm();
        if (!(lambda_i > 0.0) || off_ray > 1e-9 * std::max(1.0, b.center.norm())) {
            throw PreconditionError("merge_collinear: center " + format_vector(b.center) +
                                    " is not on the positive ray through the direction");
        }
        if (!(b.radius > 0.0) || b.radius > lambda_i * nx * (1.0 + 1e-12)) {
            throw PreconditionError("merge_collinear: radius must lie in (0, lambda_i ||x||]");
        }
        lambdas.push_back(lambda_i);
    }
    const double lambda_max = *std::max_element(lambdas.begin(), lambdas.end());
    if (lambda_target < lambda_max * (1.0 - 1e-12)) {
        throw PreconditionError("merge_collinear: lambda_target below the largest center multiple");
    }
    const double lambda = std::max(lambda_target, lambda_max);
    double radius = 0.0;
    for (std::size_t i = 0; i < balls_on_ray.size(); ++i) {
        radius = std::max(radius, balls_on_ray[i].radius + (lambda - lambdas[i]) * nx);
    }
    return Ball{lambda * direction, radius};
}

ExposedPoint exposed_norming_point(const Space& space, const VectorRef& f) {
    if (f.size() != space.dim()) throw PreconditionError("exposed_norming_point: dimension mismatch");
    const double d = dual_norm(space, Functional{f});
    if (d == 0.0) throw PreconditionError("exposed_norming_point: functional is zero");
    const Vector fh = f / d;
    const Eigen::Index n = f.size();
    Vector x(n);

    auto not_exposed = [&](const std::string& why) {
        return PreconditionError("functional " + format_vector(f) +
                                 " is not an exposed point of the dual ball: " + why);
    };

    switch (space.family()) {
    case Family::smooth_lp: {
        const double p = space.spec().p.finite_value();
        const double q = p / (p - 1.0);
        for (Eigen::Index i = 0; i < n; ++i) {
            x[i] = (fh[i] > 0 ? 1.0 : (fh[i] < 0 ? -1.0 : 0.0)) * std::pow(std::abs(fh[i]), q - 1.0);
        }
        break;
    }
    case Family::linf: {
        Eigen::Index k = 0;
        fh.cwiseAbs().maxCoeff(&k);
        if ((fh - fh[k] * Vector::Unit(n, k)).cwiseAbs().maxCoeff() > kUnitTol) {
            throw not_exposed("only +-e_i are exposed in the dual l1 ball");
        }
        x = (fh[k] > 0 ? 1.0 : -1.0) * Vector::Unit(n, k);
        break;
    }
    case Family::l1: {
        if ((fh.cwiseAbs().array() - 1.0).abs().maxCoeff() > kUnitTol) {
            throw not_exposed("only sign vectors are exposed in the dual linf ball");
        }
        x = fh / static_cast<double>(n);
        break;
    }
    case Family::polyhedral: {
        const Eigen::MatrixXd& rows = space.spec().functionals;
        Eigen::Index k = -1;
        double s = 1.0;
        for (Eigen::Index i = 0; i < rows.rows() && k < 0; ++i) {
            for (double sign : {1.0, -1.0}) {
                if ((fh - sign * rows.row(i).transpose()).cwiseAbs().maxCoeff() <= kUnitTol) {
                    k = i;
                    s = sign;
                    break;
                }
            }
        }
        if (k < 0) throw not_exposed("not a vertex of the dual polytope");
        // Maximize the gap t between f_k and every other facet on the facet f_k(x) = 1.
        lp::Problem prob;
        prob.objective = Vector::Unit(n + 1, n);
        prob.free_variables.assign(static_cast<std::size_t>(n + 1), true);
        Vector row = Vector::Zero(n + 1);
        row.head(n) = s * rows.row(k).transpose();
        prob.constraints.push_back({row, lp::Relation::equal, 1.0});
        for (Eigen::Index j = 0; j < rows.rows(); ++j) {
            const Vector fj = rows.row(j).transpose();
            const Vector fk = rows.row(k).transpose();
            if ((fj - fk).cwiseAbs().maxCoeff() <= kUnitTol || (fj + fk).cwiseAbs().maxCoeff() <= kUnitTol) continue;
            row.head(n) = fj;
            row[n] = 1.0;
            prob.constraints.push_back({row, lp::Relation::less_equal, 1.0});
            row.head(n) = -fj;
            prob.constraints.push_back({row, lp::Relation::less_equal, 1.0});
        }
        prob.constraints.push_back({Vector::Unit(n + 1, n), lp::Relation::less_equal, 1.0});
        const lp::Solution sol = lp::maximize(prob);
        if (sol.status != lp::Status::optimal || sol.value <= kUnitTol) {
            throw not_exposed("its norming face contains no smooth point");
        }
        x = sol.x.head(n);
        break;
    }
    }

    x /= norm(space, x);
    const DualitySet j = duality_set(space, x);
    if (j.kind != DualityKind::singleton || (j.extreme_points.front() - fh).cwiseAbs().maxCoeff() > 1e-7) {
        throw not_exposed("norming point " + format_vector(x) + " has a duality set with " +
                          std::to_string(j.extreme_points.size()) + " extreme points");
    }
    return ExposedPoint{std::move(x), fh};
}

namespace detail {

void RayAccumulator::add(double lambda_i, double radius_i) {
    const double offset = lambda_i * direction_norm - radius_i;
    if (!used) {
        lambda = lambda_i;
        min_offset = offset;
        used = true;
        return;
    }
    lambda = std::max(lambda, lambda_i);
    min_offset = std::min(min_offset, offset);
}

Ball RayAccumulator::ball() const {
    if (!used) return Ball{direction, direction_norm / 2.0};
    // max_i (r_i + (lambda - lambda_i)||x||) = lambda ||x|| - min_i (lambda_i ||x|| - r_i)
    return Ball{lambda * direction, lambda * direction_norm - min_offset};
}

std::vector<RayAccumulator> accumulate_witnesses(const Space& space, const std::vector<Vector>& directions,
                                                 const Eigen::MatrixXd& points, const std::vector<int>& assignment,
                                                 const Tolerances& tol) {
    std::vector<RayAccumulator> acc(directions.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
        acc[i].direction = directions[i];
        acc[i].direction_norm = norm(space, directions[i]);
    }
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
        const int i = assignment[static_cast<std::size_t>(j)];
        const Vector y = points.col(j);
        const WitnessResult w = positive_witness(space, directions[static_cast<std::size_t>(i)], y, tol,
                                                 WitnessPolicy::saturate);
        if (!w.found()) {
            throw InconsistencyError("no witness for assigned point " + format_vector(y) +
                                     " (rho_minus = " + std::to_string(w.rho) + ")");
        }
        acc[static_cast<std::size_t>(i)].add(w.witness->lambda, w.witness->radius);
    }
    return acc;
}

}  // namespace detail

Covering cover_from_functionals(const Space& space, const TargetSet& target, const std::vector<Vector>& functionals,
                                const Tolerances& tol) {
    space.require_valid();
    if (functionals.empty()) throw PreconditionError("cover_from_functionals: no functionals");
    if (target.points.rows() != space.dim()) throw PreconditionError("target dimension mismatch");
    std::vector<Vector> directions;
    for (std::size_t i = 0; i < functionals.size(); ++i) {
        const Vector& f = functionals[i];
        if (f.size() != space.dim()) throw PreconditionError("functional dimension mismatch");
        const double d = dual_norm(space, Functional{f});
        if (std::abs(d - 1.0) > kUnitTol) {
            throw PreconditionError("functional " + std::to_string(i) + " does not have unit dual norm (" +
                                    std::to_string(d) + ")");
        }
        try {
            directions.push_back(exposed_norming_point(space, f).point);
        } catch (const PreconditionError& e) {
            throw PreconditionError("functional " + std::to_string(i) + ": " + e.what());
        }
    }

    std::vector<int> assignment(static_cast<std::size_t>(target.size()));
    for (Eigen::Index j = 0; j < target.size(); ++j) {
        const Vector y = target.points.col(j);
        if (norm(space, y) == 0.0) throw PreconditionError("target contains the zero vector");
        int best = -1;
        double best_value = tol.analytic;
        for (std::size_t i = 0; i < functionals.size(); ++i) {
            const double v = functionals[i].dot(y);
            if (v > best_value) {
                best_value = v;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) {
            throw PreconditionError("separation hypothesis violated: max_i f_i(y) <= 0 at y = " + format_vector(y));
        }
        assignment[static_cast<std::size_t>(j)] = best;
    }

    const auto acc = detail::accumulate_witnesses(space, directions, target.points, assignment, tol);
    Covering out;
    for (const auto& a : acc) out.balls.push_back(a.ball());
    out.certificate = verify_cover(space, out.balls, target, tol);
    return out;
}

Covering symmetric_cover_2n(const Space& space, const std::vector<Vector>& functionals, double net_delta,
                            const Tolerances& tol) {
    space.require_valid();
    require_independent(space, functionals);
    const std::vector<Vector> unit = normalized(space, functionals);
    std::vector<Vector> signed_functionals;
    std::vector<Vector> directions;
    for (std::size_t i = 0; i < unit.size(); ++i) {
        ExposedPoint e;
        try {
            e = exposed_norming_point(space, unit[i]);
        } catch (const PreconditionError& err) {
            throw PreconditionError("functional " + std::to_string(i) + ": " + err.what());
        }
        signed_functionals.push_back(unit[i]);
        signed_functionals.push_back(-unit[i]);
        directions.push_back(e.point);
        directions.push_back(-e.point);  // J(-x) = -J(x)
    }

    const TargetSet target = TargetSet::sphere(unit_sphere_net(space, net_delta));
    std::vector<int> assignment(static_cast<std::size_t>(target.size()));
    for (Eigen::Index j = 0; j < target.size(); ++j) {
        const Vector y = target.points.col(j);
        int best = 0;
        double best_value = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < signed_functionals.size(); ++i) {
            const double v = signed_functionals[i].dot(y);
            if (v > best_value) {
                best_value = v;
                best = static_cast<int>(i);
            }
        }
        if (!(best_value > tol.analytic)) {
            throw InconsistencyError("independent functionals vanish simultaneously on a unit vector");
        }
        assignment[static_cast<std::size_t>(j)] = best;
    }
    const auto acc = detail::accumulate_witnesses(space, directions, target.points, assignment, tol);

    // Symmetrize each +-pair: merge each member with the mirror image of the
    // other at the larger center multiple, then mirror the result.
    Covering out;
    for (std::size_t i = 0; i < unit.size(); ++i) {
        const auto& plus = acc[2 * i];
        const auto& minus = acc[2 * i + 1];
        const double nx = plus.direction_norm;
        Ball b;
        if (!plus.used && !minus.used) {
            b = plus.ball();
        } else {
            double lambda = 0.0;
            double offset = std::numeric_limits<double>::infinity();
            for (const auto* a : {&plus, &minus}) {
                if (!a->used) continue;
                lambda = std::max(lambda, a->lambda);
                offset = std::min(offset, a->min_offset);
            }
            b = Ball{lambda * plus.direction, lambda * nx - offset};
        }
        out.balls.push_back(b);
        out.balls.push_back(Ball{-b.center, b.radius});
    }
    out.certificate = verify_cover(space, out.balls, target, tol);
    require_certified(out);
    return out;
}

Covering smooth_cover_n_plus_1(const Space& space, const std::vector<Vector>& functionals, const TargetSet& target,
                               const Tolerances& tol) {
    space.require_valid();
    if (!space.is_smooth_family()) {
        throw PreconditionError("smooth_cover_n_plus_1 requires a smooth space (lp with 1 < p < inf), got " +
                                space.label());
    }
    require_independent(space, functionals);
    std::vector<Vector> unit = normalized(space, functionals);
    Vector last = Vector::Zero(space.dim());
    for (const auto& f : unit) last -= f;
    unit.push_back(last / dual_norm(space, Functional{last}));
    Covering out = cover_from_functionals(space, target, unit, tol);
    require_certified(out);
    return out;
}

Covering smooth_cover_n_plus_1(const Space& space, const std::vector<Vector>& functionals, double net_delta,
                               const Tolerances& tol) {
    if (!space.is_smooth_family()) {
        throw PreconditionError("smooth_cover_n_plus_1 requires a smooth space (lp with 1 < p < inf), got " +
                                space.label());
    }
    return smooth_cover_n_plus_1(space, functionals, TargetSet::sphere(unit_sphere_net(space, net_delta)), tol);
}

CoverageCertificate verify_cover(const Space& space, const std::vector<Ball>& balls, const TargetSet& target,
                                 const Tolerances& tol) {
    space.require_valid();
    CoverageCertificate cert;
    cert.net_resolution = target.kind == TargetSet::Kind::unit_sphere ? target.resolution : 0.0;
    cert.balls_exclude_origin = true;
    for (const Ball& b : balls) {
        if (b.center.size() != space.dim()) throw PreconditionError("ball center dimension mismatch");
        if (!(b.radius <= norm(space, b.center) + tol.certificate_slack)) cert.balls_exclude_origin = false;
    }
    cert.min_slack = std::numeric_limits<double>::infinity();
    if (balls.empty()) {
        cert.min_slack = -std::numeric_limits<double>::infinity();
        cert.worst_point = target.size() > 0 ? 0 : -1;
        return cert;
    }
    if (target.points.rows() != space.dim()) throw PreconditionError("target dimension mismatch");
    Vector diff(space.dim());
    for (Eigen::Index j = 0; j < target.size(); ++j) {
        double best = -std::numeric_limits<double>::infinity();
        for (const Ball& b : balls) {
            diff = b.center - target.points.col(j);
            best = std::max(best, b.radius - detail::norm_unchecked(space, diff));
        }
        if (best < cert.min_slack) {
            cert.min_slack = best;
            cert.worst_point = j;
        }
    }
    cert.full_cover = cert.net_resolution < cert.min_slack;
    return cert;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& rows) {
    const Eigen::Index n = rows.cols();
    if (rows.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] > 1e-10) ++rank;
    }
    return svd.matrixV().rightCols(n - rank);
}

UncoveredPoint adversary_uncovered(const Space& space, const std::vector<Ball>& candidate, bool symmetric,
                                   const Tolerances& tol) {
    space.require_valid();
    const int n = space.dim();
    for (const Ball& b : candidate) {
        const double nc = norm(space, b.center);
        if (nc == 0.0) throw PreconditionError("adversary: ball centered at the origin");
        if (!(b.radius > 0.0) || b.radius > nc + tol.certificate_slack) {
            throw PreconditionError("adversary: ball " + format_vector(b.center) + " does not exclude the origin");
        }
    }

    std::vector<const Ball*> kernel_balls;
    const Ball* sign_test = nullptr;
    if (symmetric) {
        std::vector<bool> paired(candidate.size(), false);
        for (std::size_t i = 0; i < candidate.size(); ++i) {
            if (paired[i]) continue;
            const Ball& a = candidate[i];
            const double scale = std::max(1.0, a.center.cwiseAbs().maxCoeff());
            bool found = false;
            for (std::size_t j = i + 1; j < candidate.size() && !found; ++j) {
                const Ball& b = candidate[j];
                if (!paired[j] && (a.center + b.center).cwiseAbs().maxCoeff() <= 1e-9 * scale &&
                    std::abs(a.radius - b.radius) <= 1e-9 * scale) {
                    paired[i] = paired[j] = true;
                    found = true;
                }
            }
            if (!found) throw PreconditionError("adversary: candidate is not a union of symmetric pairs");
            kernel_balls.push_back(&a);
        }
        if (static_cast<int>(kernel_balls.size()) >= n) {
            throw PreconditionError("adversary: symmetric candidate needs fewer than n pairs");
        }
    } else {
        if (static_cast<int>(candidate.size()) > n) {
            throw PreconditionError("adversary: asymmetric candidate needs at most n balls");
        }
        const std::size_t use = static_cast<int>(candidate.size()) == n ? candidate.size() - 1 : candidate.size();
        for (std::size_t i = 0; i < use; ++i) kernel_balls.push_back(&candidate[i]);
        if (use < candidate.size()) sign_test = &candidate.back();
    }

    // f_i in J(center_i); any unit z in the common kernel satisfies
    // center_i _|_B z, so z lies outside B(center_i, r_i) and B(-center_i, r_i).
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(kernel_balls.size()), n);
    for (std::size_t i = 0; i < kernel_balls.size(); ++i) {
        rows.row(static_cast<Eigen::Index>(i)) = duality_set(space, kernel_balls[i]->center).extreme_points.front().transpose();
    }
    const Eigen::MatrixXd kernel = null_space(rows);
    if (kernel.cols() == 0) throw InconsistencyError("adversary: numerical null space is empty");
    Vector z = kernel.col(0);
    for (Eigen::Index k = 0; k < z.size(); ++k) {
        if (std::abs(z[k]) > 1e-12) {
            if (z[k] < 0) z = -z;
            break;
        }
    }
    z /= norm(space, z);

    if (sign_test != nullptr) {
        // At most one of +-z has rho_minus(center_n, .) > 0; keep the other.
        if (rho_analytic(space, sign_test->center, z).rho_minus > 0.0) z = -z;
    }

    UncoveredPoint out;
    out.point = z;
    for (const Ball& b : candidate) {
        const double slack = b.radius - norm(space, b.center - z);
        out.per_ball_slack.push_back(slack);
        if (slack > tol.certificate_slack) {
            throw InconsistencyError("adversary: constructed point " + format_vector(z) + " lies inside ball " +
                                     format_vector(b.center));
        }
    }
    return out;
}

}  // namespace ballcover
