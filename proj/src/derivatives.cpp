#include "ballcover/derivatives.hpp"

#include "ballcover/detail/norm_kernel.hpp"
#include "ballcover/errors.hpp"
#include "ballcover/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ballcover {
namespace {

using detail::kActiveRelTol;

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void require_pair(const Space& space, const VectorRef& x, const VectorRef& y) {
    const double nx = norm(space, x);
    (void)norm(space, y);
    if (nx == 0.0) throw PreconditionError("norm derivative at the origin is undefined (x = 0)");
}

}  // namespace

DerivativePair rho_analytic(const Space& space, const VectorRef& x, const VectorRef& y) {
    require_pair(space, x, y);
    const double nx = detail::norm_unchecked(space, x);
    const Eigen::Index n = x.size();
    DerivativePair out;
    out.method = DerivativeMethod::analytic;

    switch (space.family()) {
    case Family::smooth_lp: {
        const double p = space.spec().p.finite_value();
        const double largest = x.cwiseAbs().maxCoeff();
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (x[i] != 0.0) s += std::pow(std::abs(x[i]) / largest, p - 1.0) * sgn(x[i]) * y[i];
        }
        // ||x||^{2-p} * sum |x_i|^{p-1} sgn(x_i) y_i, rescaled by the largest coordinate.
        const double value = nx * std::pow(largest / nx, p - 1.0) * s;
        out.rho_minus = out.rho_plus = value;
        return out;
    }
    case Family::l1: {
        const double cut = kActiveRelTol * x.cwiseAbs().maxCoeff();
        double signed_sum = 0.0;
        double free_sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(x[i]) > cut) {
                signed_sum += sgn(x[i]) * y[i];
            } else {
                free_sum += std::abs(y[i]);
            }
        }
        out.rho_plus = nx * (signed_sum + free_sum);
        out.rho_minus = nx * (signed_sum - free_sum);
        return out;
    }
    case Family::linf: {
        const double cut = nx * (1.0 - kActiveRelTol);
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(x[i]) >= cut) {
                const double v = sgn(x[i]) * y[i];
                hi = std::max(hi, v);
                lo = std::min(lo, v);
            }
        }
        out.rho_plus = nx * hi;
        out.rho_minus = nx * lo;
        return out;
    }
    case Family::polyhedral: break;
    }

    const Eigen::MatrixXd& rows = space.spec().functionals;
    const Eigen::VectorXd fx = rows * x;
    const Eigen::VectorXd fy = rows * y;
    const double cut = nx * (1.0 - kActiveRelTol);
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        if (std::abs(fx[i]) >= cut) {
            const double v = sgn(fx[i]) * fy[i];
            hi = std::max(hi, v);
            lo = std::min(lo, v);
        }
    }
    out.rho_plus = nx * hi;
    out.rho_minus = nx * lo;
    return out;
}

FiniteDifferenceTrace rho_finite_difference_trace(const Space& space, const VectorRef& x, const VectorRef& y) {
    using detail::Wide;
    require_pair(space, x, y);
    const double nx = detail::norm_unchecked(space, x);
    const double ny = detail::norm_unchecked(space, y);
    const auto n = static_cast<std::size_t>(x.size());

    std::vector<Wide> xw(n), probe(n);
    for (std::size_t i = 0; i < n; ++i) xw[i] = Wide(x[static_cast<Eigen::Index>(i)]);
    const Wide nxw = detail::norm_kernel<Wide>(space, xw);

    auto quotient = [&](double t) {
        for (std::size_t i = 0; i < n; ++i) probe[i] = xw[i] + Wide(t) * Wide(y[static_cast<Eigen::Index>(i)]);
        const Wide moved = detail::norm_kernel<Wide>(space, probe);
        return static_cast<double>(nxw * (moved - nxw) / Wide(t));
    };

    constexpr int kMaxHalvings = 48;
    const double t0 = nx / std::max(1.0, ny);
    const double stop = 1e-7 * std::max(1.0, nx * ny);

    FiniteDifferenceTrace trace;
    double change = 0.0;
    double t_final = t0;
    for (int k = 0; k <= kMaxHalvings; ++k) {
        const double t = std::ldexp(t0, -k);
        trace.steps.push_back(t);
        trace.forward.push_back(quotient(t));
        trace.backward.push_back(quotient(-t));
        t_final = t;
        if (k > 0) {
            change = std::max(std::abs(trace.forward[k] - trace.forward[k - 1]),
                              std::abs(trace.backward[k] - trace.backward[k - 1]));
            if (change < stop) break;
        }
    }
    trace.estimate.method = DerivativeMethod::finite_difference;
    trace.estimate.rho_plus = trace.forward.back();
    trace.estimate.rho_minus = trace.backward.back();
    // Truncation: quotients of a convex function approach the limit roughly
    // geometrically under halving, so the last change bounds the remainder.
    // Rounding: a few hundred ulps of the wide norm, amplified by ||x|| / t.
    const double rounding = 1024.0 * detail::kWideEpsilon * nx * (nx + t_final * ny) / t_final;
    trace.estimate.error_bound = change + rounding;
    return trace;
}

DerivativePair rho_finite_difference(const Space& space, const VectorRef& x, const VectorRef& y) {
    return rho_finite_difference_trace(space, x, y).estimate;
}

double DualitySet::support_max(const VectorRef& y) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& f : extreme_points) best = std::max(best, f.dot(y));
    return best;
}

double DualitySet::support_min(const VectorRef& y) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : extreme_points) best = std::min(best, f.dot(y));
    return best;
}

DualitySet duality_set(const Space& space, const VectorRef& x) {
    const double nx = norm(space, x);
    if (nx == 0.0) throw PreconditionError("duality set of the zero vector is the whole dual ball");
    const Eigen::Index n = x.size();
    DualitySet out;

    switch (space.family()) {
    case Family::smooth_lp: {
        const double p = space.spec().p.finite_value();
        Vector f(n);
        for (Eigen::Index i = 0; i < n; ++i) f[i] = sgn(x[i]) * std::pow(std::abs(x[i]) / nx, p - 1.0);
        out.extreme_points.push_back(std::move(f));
        break;
    }
    case Family::l1: {
        const double cut = kActiveRelTol * x.cwiseAbs().maxCoeff();
        std::vector<Eigen::Index> zeros;
        Vector base(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(x[i]) > cut) {
                base[i] = sgn(x[i]);
            } else {
                base[i] = 0.0;
                zeros.push_back(i);
            }
        }
        if (zeros.size() > 20) throw PreconditionError("duality_set: too many zero coordinates to enumerate");
        const std::size_t count = std::size_t{1} << zeros.size();
        for (std::size_t mask = 0; mask < count; ++mask) {
            Vector f = base;
            // First zero coordinate is the most significant bit; + before -.
            for (std::size_t b = 0; b < zeros.size(); ++b) {
                const bool negative = (mask >> (zeros.size() - 1 - b)) & 1U;
                f[zeros[b]] = negative ? -1.0 : 1.0;
            }
            out.extreme_points.push_back(std::move(f));
        }
        break;
    }
    case Family::linf: {
        const double cut = nx * (1.0 - kActiveRelTol);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(x[i]) >= cut) out.extreme_points.push_back(sgn(x[i]) * Vector::Unit(n, i));
        }
        break;
    }
    case Family::polyhedral: {
        // Active functionals attain ||x|| at x, so their dual norm is exactly 1.
        const Eigen::MatrixXd& rows = space.spec().functionals;
        const Eigen::VectorXd fx = rows * x;
        const double cut = nx * (1.0 - kActiveRelTol);
        std::vector<Vector> candidates;
        for (Eigen::Index i = 0; i < rows.rows(); ++i) {
            if (std::abs(fx[i]) < cut) continue;
            Vector f = sgn(fx[i]) * rows.row(i).transpose();
            const bool duplicate = std::any_of(candidates.begin(), candidates.end(), [&](const Vector& g) {
                return (g - f).cwiseAbs().maxCoeff() <= 1e-9;
            });
            if (!duplicate) candidates.push_back(std::move(f));
        }
        if (candidates.size() <= 2) {
            out.extreme_points = std::move(candidates);
            break;
        }
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            Eigen::MatrixXd others(n, static_cast<Eigen::Index>(candidates.size() - 1));
            Eigen::Index c = 0;
            for (std::size_t j = 0; j < candidates.size(); ++j) {
                if (j != k) others.col(c++) = candidates[j];
            }
            if (!lp::in_convex_hull(others, candidates[k])) out.extreme_points.push_back(candidates[k]);
        }
        break;
    }
    }
    out.kind = out.extreme_points.size() == 1 ? DualityKind::singleton : DualityKind::polytope;
    return out;
}

SmoothnessReport is_smooth(const Space& space, const VectorRef& x) {
    const DualitySet j = duality_set(space, x);
    SmoothnessReport r;
    r.smooth = j.kind == DualityKind::singleton;
    r.margin = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const DerivativePair d = rho_analytic(space, x, Vector::Unit(x.size(), k));
        r.margin = std::max(r.margin, d.rho_plus - d.rho_minus);
    }
    return r;
}

}  // namespace ballcover
