#include "ballcover/spaces.hpp"

#include "ballcover/detail/norm_kernel.hpp"
#include "ballcover/errors.hpp"
#include "ballcover/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ballcover {

double Exponent::finite_value() const {
    if (infinite_) throw PreconditionError("exponent is infinite");
    return p_;
}

NormSpec NormSpec::lp(Exponent p) {
    NormSpec s;
    s.kind = NormKind::lp;
    s.p = p;
    return s;
}

NormSpec NormSpec::polyhedral(Eigen::MatrixXd rows) {
    NormSpec s;
    s.kind = NormKind::polyhedral;
    s.functionals = std::move(rows);
    return s;
}

namespace {

Family family_of(const NormSpec& spec) {
    if (spec.kind == NormKind::polyhedral) return Family::polyhedral;
    if (spec.p.is_infinite()) return Family::linf;
    if (spec.p.finite_value() == 1.0) return Family::l1;
    return Family::smooth_lp;
}

ValidationReport check(int dim, const NormSpec& spec) {
    ValidationReport r;
    auto fail = [&r](std::string msg) {
        r.valid = false;
        r.violations.push_back(std::move(msg));
    };
    if (dim < 1) fail("dimension must be at least 1");
    if (spec.kind == NormKind::lp) {
        if (!spec.p.is_infinite()) {
            const double p = spec.p.finite_value();
            if (!std::isfinite(p)) {
                fail("p must be finite or the infinity token");
            } else if (p < 1.0) {
                fail("p < 1 does not define a norm");
            }
        }
        return r;
    }
    const Eigen::MatrixXd& f = spec.functionals;
    if (f.rows() == 0) {
        fail("polyhedral norm needs at least one functional");
        return r;
    }
    if (dim >= 1 && f.cols() != dim) {
        fail("functional length does not match dimension");
        return r;
    }
    if (!f.allFinite()) {
        fail("functional entries must be finite");
        return r;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(f);
    lu.setThreshold(1e-10);
    if (lu.rank() < dim) fail("functionals do not span the space (seminorm only)");
    return r;
}

void require_vector(const Space& space, const VectorRef& x) {
    space.require_valid();
    if (x.size() != space.dim()) {
        std::ostringstream os;
        os << "dimension mismatch: expected " << space.dim() << ", got " << x.size();
        throw PreconditionError(os.str());
    }
    if (!x.allFinite()) throw PreconditionError("vector has non-finite entries");
}

}  // namespace

Space::Space(int dim, NormSpec spec)
    : dim_(dim), spec_(std::move(spec)), family_(family_of(spec_)), report_(check(dim_, spec_)) {}

Space Space::lp(int dim, double p) { return Space(dim, NormSpec::lp(Exponent::finite(p))); }
Space Space::linf(int dim) { return Space(dim, NormSpec::lp(Exponent::infinity())); }

Space Space::polyhedral(Eigen::MatrixXd rows) {
    const auto dim = static_cast<int>(rows.cols());
    return Space(dim, NormSpec::polyhedral(std::move(rows)));
}

void Space::require_valid() const {
    if (report_.valid) return;
    std::string msg = "invalid space:";
    for (const auto& v : report_.violations) msg += " " + v + ";";
    throw PreconditionError(msg);
}

std::string Space::label() const {
    std::ostringstream os;
    switch (family_) {
    case Family::linf: os << "linf"; break;
    case Family::polyhedral: os << "polyhedral[" << spec_.functionals.rows() << "]"; break;
    default: os << "l" << spec_.p.finite_value(); break;
    }
    return os.str();
}

double Functional::operator()(const VectorRef& x) const { return dual_pair(*this, x); }

ValidationReport validate_space(const Space& space) { return space.validation(); }

double norm(const Space& space, const VectorRef& x) {
    require_vector(space, x);
    return detail::norm_unchecked(space, x);
}

double dual_pair(const Functional& f, const VectorRef& x) {
    if (f.coords.size() != x.size()) throw PreconditionError("dual_pair: dimension mismatch");
    return f.coords.dot(x);
}

double dual_norm(const Space& space, const Functional& f) {
    require_vector(space, f.coords);
    switch (space.family()) {
    case Family::l1: return f.coords.cwiseAbs().maxCoeff();
    case Family::linf: return f.coords.cwiseAbs().sum();
    case Family::smooth_lp: {
        const double p = space.spec().p.finite_value();
        const double q = p / (p - 1.0);
        Space dual = Space::lp(space.dim(), q);
        return detail::norm_unchecked(dual, f.coords);
    }
    case Family::polyhedral: break;
    }
    // max <f, x> subject to -1 <= F x <= 1, x free.
    const Eigen::MatrixXd& rows = space.spec().functionals;
    lp::Problem prob;
    prob.objective = f.coords;
    prob.free_variables.assign(static_cast<std::size_t>(space.dim()), true);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        prob.constraints.push_back({rows.row(i).transpose(), lp::Relation::less_equal, 1.0});
        prob.constraints.push_back({rows.row(i).transpose(), lp::Relation::greater_equal, -1.0});
    }
    const lp::Solution sol = lp::maximize(prob);
    if (sol.status != lp::Status::optimal) {
        throw InconsistencyError("dual_norm: linear program did not reach an optimum");
    }
    return std::max(0.0, sol.value);
}

EquivalenceConstants equivalence_constants(const Space& space) {
    space.require_valid();
    const double n = space.dim();
    switch (space.family()) {
    case Family::linf: return {1.0 / std::sqrt(n), 1.0};
    case Family::l1: return {1.0, std::sqrt(n)};
    case Family::smooth_lp: {
        const double p = space.spec().p.finite_value();
        const double factor = std::pow(n, std::abs(1.0 / p - 0.5));
        return p >= 2.0 ? EquivalenceConstants{1.0 / factor, 1.0} : EquivalenceConstants{1.0, factor};
    }
    case Family::polyhedral: break;
    }
    const Eigen::MatrixXd& rows = space.spec().functionals;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
    const double sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
    const double m = static_cast<double>(rows.rows());
    return {sigma_min / std::sqrt(m), rows.rowwise().norm().maxCoeff()};
}

namespace {

// Certified bounds for the cube-face net: any d with a zero face coordinate
// and |d_k| <= h/2 elsewhere has ||d|| <= box_factor * h/2, and every point
// of the cube surface has norm >= surface_floor.
struct CubeBounds {
    double box_factor;
    double surface_floor;
};

CubeBounds cube_bounds(const Space& space) {
    const double n = space.dim();
    switch (space.family()) {
    case Family::linf: return {1.0, 1.0};
    case Family::l1: return {n - 1.0, 1.0};
    case Family::smooth_lp: return {std::pow(n - 1.0, 1.0 / space.spec().p.finite_value()), 1.0};
    case Family::polyhedral: break;
    }
    const Eigen::MatrixXd& rows = space.spec().functionals;
    return {rows.cwiseAbs().rowwise().sum().maxCoeff(), equivalence_constants(space).lower};
}

struct NetPlan {
    bool singleton = false;
    int angular = 0;         // dim 2: number of directions
    long long intervals = 0;  // dim >= 3: grid intervals per cube edge
    std::size_t count = 0;
};

NetPlan plan_net(const Space& space, double delta, const NetOptions& options) {
    space.require_valid();
    if (!(delta > 0.0) || !std::isfinite(delta)) throw PreconditionError("net resolution must be positive");
    const int n = space.dim();
    if (n > options.dim_cap && !options.allow_above_cap) {
        throw PreconditionError("unit_sphere_net: dimension " + std::to_string(n) + " above cap " +
                                std::to_string(options.dim_cap));
    }
    NetPlan plan;
    // Any two unit vectors are within distance 2.
    if (delta >= 2.0) {
        plan.singleton = true;
        plan.count = 1;
        return plan;
    }
    if (n == 1) {
        plan.count = 2;
        return plan;
    }
    if (n == 2) {
        // Normalization x -> x/||x|| is (2/||x||)-Lipschitz, so the Euclidean
        // half-chord must stay below delta*c1/(4*c2).
        const EquivalenceConstants c = equivalence_constants(space);
        const double half_chord = std::min(1.0, delta * c.lower / (4.0 * c.upper));
        const double count = std::ceil(std::numbers::pi / (2.0 * std::asin(half_chord)));
        if (count > static_cast<double>(options.max_points)) {
            throw PreconditionError("unit_sphere_net: resolution too fine for the point limit");
        }
        plan.angular = std::max(3, static_cast<int>(count));
        plan.count = static_cast<std::size_t>(plan.angular);
        return plan;
    }
    const CubeBounds b = cube_bounds(space);
    // ||u - y|| <= 2 * box_factor * (h/2) / surface_floor <= delta
    const double h = delta * b.surface_floor / b.box_factor;
    const double intervals = std::ceil(2.0 / h);
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        total += 2.0 * std::pow(intervals - 1.0, j) * std::pow(intervals + 1.0, n - 1 - j);
    }
    if (total > static_cast<double>(options.max_points)) {
        throw PreconditionError("unit_sphere_net: resolution too fine for the point limit (" +
                                std::to_string(static_cast<long long>(total)) + " points)");
    }
    plan.intervals = static_cast<long long>(intervals);
    plan.count = static_cast<std::size_t>(total);
    return plan;
}

}  // namespace

std::size_t unit_sphere_net_size(const Space& space, double delta, const NetOptions& options) {
    return plan_net(space, delta, options).count;
}

SphereNet unit_sphere_net(const Space& space, double delta, const NetOptions& options) {
    const NetPlan plan = plan_net(space, delta, options);
    const int n = space.dim();
    SphereNet net;
    net.resolution = delta;
    net.points.resize(n, static_cast<Eigen::Index>(plan.count));

    auto store = [&](Eigen::Index col, const Vector& v) {
        net.points.col(col) = v / detail::norm_unchecked(space, v);
    };

    if (plan.singleton) {
        store(0, Vector::Unit(n, 0));
        return net;
    }
    if (n == 1) {
        store(0, Vector::Constant(1, -1.0));
        store(1, Vector::Constant(1, 1.0));
        return net;
    }
    if (n == 2) {
        for (int k = 0; k < plan.angular; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / plan.angular;
            store(k, Vector{{std::cos(theta), std::sin(theta)}});
        }
        return net;
    }

    // Face (j, s): coordinate j fixed to s; coordinates k < j range over the
    // interior grid values only, so every cube-surface grid point is emitted
    // exactly once (on the first coordinate where it touches the boundary).
    const long long N = plan.intervals;
    Eigen::Index col = 0;
    Vector v(n);
    std::vector<long long> idx(n);
    for (int j = 0; j < n; ++j) {
        for (double s : {-1.0, 1.0}) {
            auto lo = [&](int k) { return k < j ? 1LL : 0LL; };
            auto hi = [&](int k) { return k < j ? N - 1 : N; };
            bool empty = false;
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                idx[k] = lo(k);
                if (lo(k) > hi(k)) empty = true;
            }
            if (empty) continue;
            while (true) {
                for (int k = 0; k < n; ++k) {
                    v[k] = k == j ? s : -1.0 + 2.0 * static_cast<double>(idx[k]) / static_cast<double>(N);
                }
                store(col++, v);
                int k = n - 1;
                for (; k >= 0; --k) {
                    if (k == j) continue;
                    if (idx[k] < hi(k)) {
                        ++idx[k];
                        break;
                    }
                    idx[k] = lo(k);
                }
                if (k < 0) break;
            }
        }
    }
    if (col != net.points.cols()) throw InconsistencyError("unit_sphere_net: point count mismatch");
    return net;
}

}  // namespace ballcover
