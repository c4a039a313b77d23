#pragma once

#include "ballcover/spaces.hpp"

#include <vector>

namespace ballcover {

enum class DerivativeMethod { analytic, finite_difference };

/// One-sided norm derivatives
///   rho_plus(x, y)  = lim_{t->0+} ||x|| (||x + t y|| - ||x||) / t
///   rho_minus(x, y) = lim_{t->0-} ||x|| (||x + t y|| - ||x||) / t
/// with rho_minus <= rho_plus + error_bound.
struct DerivativePair {
    double rho_minus = 0.0;
    double rho_plus = 0.0;
    DerivativeMethod method = DerivativeMethod::analytic;
    double error_bound = 0.0;
};

/// Exact closed forms: lp (1<p<inf), l1, linf and polyhedral. Throws
/// PreconditionError when x = 0 or on dimension mismatch.
DerivativePair rho_analytic(const Space& space, const VectorRef& x, const VectorRef& y);

/// Probe sequence of the finite-difference estimator: q(+t_k) and q(-t_k)
/// for t_k = t0 * 2^-k.
struct FiniteDifferenceTrace {
    std::vector<double> steps;
    std::vector<double> forward;   // q(t_k), nonincreasing in k, bounds rho_plus from above
    std::vector<double> backward;  // q(-t_k), nondecreasing in k, bounds rho_minus from below
    DerivativePair estimate;
};

/// Independent estimator from the defining difference quotient. Norms are
/// evaluated in extended precision so the quotient sequence stays monotone.
FiniteDifferenceTrace rho_finite_difference_trace(const Space& space, const VectorRef& x, const VectorRef& y);
DerivativePair rho_finite_difference(const Space& space, const VectorRef& x, const VectorRef& y);

enum class DualityKind { singleton, polytope };

/// J(x) = { f in the dual unit sphere : f(x) = ||x|| }, given by its extreme
/// points (a single functional when x is a smooth point).
struct DualitySet {
    DualityKind kind = DualityKind::singleton;
    std::vector<Vector> extreme_points;

    /// sup / inf of f(y) over J(x).
    double support_max(const VectorRef& y) const;
    double support_min(const VectorRef& y) const;
};

DualitySet duality_set(const Space& space, const VectorRef& x);

struct SmoothnessReport {
    bool smooth = true;
    /// max_j (rho_plus(x, e_j) - rho_minus(x, e_j)); zero iff smooth.
    double margin = 0.0;
};

SmoothnessReport is_smooth(const Space& space, const VectorRef& x);

namespace detail {
/// Relative threshold under which |coordinate| or a functional value counts
/// as tied with the norm (active) or as zero.
inline constexpr double kActiveRelTol = 1e-12;
}  // namespace detail

}  // namespace ballcover
