#pragma once

namespace ballcover {

/// Decision thresholds shared by every module.
struct Tolerances {
    /// Sign decisions on analytic norm derivatives.
    double analytic = 1e-9;
    /// Comparisons against finite-difference estimates.
    double finite_difference = 1e-5;
    /// Strict-inequality margin for certificates (origin exclusion, slack).
    double certificate_slack = 1e-12;
};

/// Defaults, with `analytic` overridden by the BALLCOVER_TOL environment
/// variable when it holds a positive finite number.
Tolerances tolerances_from_environment();

}  // namespace ballcover
