#include "ballcover/witness.hpp"

#include "ballcover/derivatives.hpp"
#include "ballcover/detail/norm_kernel.hpp"
#include "ballcover/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ballcover {
namespace {

constexpr int kProbeCount = 61;  // lambda_k = 2^k * probe_base, k = 0..60
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Norms {
    double x;
    double y;
};

Norms require_nonzero_pair(const Space& space, const VectorRef& x, const VectorRef& y) {
    const Norms n{norm(space, x), norm(space, y)};
    if (n.x == 0.0) throw PreconditionError("witness: x must be nonzero");
    if (n.y == 0.0) throw PreconditionError("witness: y must be nonzero");
    return n;
}

// Chooses the radius midway in (a, b] and the largest margin with
// a + margin <= radius and radius + margin <= b holding in double arithmetic.
Witness make_witness(double lambda, double a, double b) {
    Witness w;
    w.lambda = lambda;
    w.radius = a + (b - a) / 2.0;
    double margin = std::min(w.radius - a, b - w.radius);
    while (margin > 0.0 && a + margin > w.radius) margin = std::nextafter(margin, 0.0);
    w.margin = margin;
    return w;
}

// Smallest power of two >= ratio. Power-of-two multipliers keep lambda * x
// exact, so each probe's rounding comes from the norm alone.
double probe_base(double ratio) {
    int e = 0;
    const double m = std::frexp(ratio, &e);
    return m == 0.5 ? ratio : std::ldexp(1.0, e);
}

}  // namespace

double gap(const Space& space, const VectorRef& x, const VectorRef& y, double lambda) {
    const double nx = norm(space, x);
    (void)norm(space, y);
    if (nx == 0.0) throw PreconditionError("gap: x must be nonzero");
    const Vector center = lambda * x - y;
    return detail::norm_unchecked(space, center) - std::abs(lambda) * nx;
}

GapProfile gap_profile(const Space& space, const VectorRef& x, const VectorRef& y) {
    using detail::Wide;
    const double nx = norm(space, x);
    const double ny = norm(space, y);
    if (nx == 0.0) throw PreconditionError("gap_profile: x must be nonzero");
    const double base = probe_base((ny > 0.0 ? ny : 1.0) / nx);
    const auto n = static_cast<std::size_t>(x.size());
    std::vector<Wide> probe(n);
    std::vector<Wide> xw(n);
    for (std::size_t i = 0; i < n; ++i) xw[i] = Wide(x[static_cast<Eigen::Index>(i)]);
    const Wide nxw = detail::norm_kernel<Wide>(space, xw);

    GapProfile out;
    out.samples.reserve(kProbeCount);
    for (int k = 0; k < kProbeCount; ++k) {
        const double lambda = std::ldexp(base, k);
        for (std::size_t i = 0; i < n; ++i) probe[i] = Wide(lambda) * xw[i] - Wide(y[static_cast<Eigen::Index>(i)]);
        const Wide g = detail::norm_kernel<Wide>(space, probe) - Wide(lambda) * nxw;
        out.samples.emplace_back(lambda, static_cast<double>(g));
    }
    out.limit_estimate = out.samples.back().second;
    return out;
}

WitnessResult positive_witness(const Space& space, const VectorRef& x, const VectorRef& y, const Tolerances& tol,
                               WitnessPolicy policy) {
    const Norms nrm = require_nonzero_pair(space, x, y);
    WitnessResult result;
    result.rho = rho_analytic(space, x, y).rho_minus;
    if (result.rho <= tol.analytic) {
        result.absence_profile = gap_profile(space, x, y);
        return result;
    }

    // -g(lambda) increases to rho_minus/||x||; keep doubling lambda until the
    // gap clears both the tolerance and the rounding noise of ||lambda x - y||.
    const double limit = result.rho / nrm.x;
    const double base = probe_base(nrm.y / nrm.x);
    Vector probe(x.size());
    bool have = false;
    double best_lambda = 0.0, best_a = 0.0, best_b = 0.0;
    for (int k = 0; k < kProbeCount; ++k) {
        const double lambda = std::ldexp(base, k);
        probe = lambda * x - y;
        const double a = detail::norm_unchecked(space, probe);
        const double b = lambda * nrm.x;
        const double noise = 64.0 * kEps * (b + nrm.y);
        if (b - a > tol.analytic && b - a > noise) {
            have = true;
            best_lambda = lambda;
            best_a = a;
            best_b = b;
            if (policy == WitnessPolicy::first_hit || b - a >= 0.9 * limit) break;
        } else if (have) {
            break;
        }
    }
    if (!have) {
        std::ostringstream os;
        os << "positive_witness: rho_minus = " << result.rho
           << " exceeds the tolerance but no probe produced a negative gap";
        throw InconsistencyError(os.str());
    }
    const Witness w = make_witness(best_lambda, best_a, best_b);
    if (!(best_a < w.radius && w.radius <= best_b && w.margin > 0.0)) {
        throw InconsistencyError("positive_witness: witness failed re-verification");
    }
    result.witness = w;
    return result;
}

WitnessResult negative_witness(const Space& space, const VectorRef& x, const VectorRef& y, const Tolerances& tol,
                               WitnessPolicy policy) {
    // Negative side for x is the positive side for -x: rho_minus(-x, y) = -rho_plus(x, y).
    const Vector flipped = -x;
    WitnessResult r = positive_witness(space, flipped, y, tol, policy);
    r.rho = -r.rho;
    if (r.witness) r.witness->lambda = -r.witness->lambda;
    if (r.absence_profile) {
        for (auto& s : r.absence_profile->samples) s.first = -s.first;
    }
    return r;
}

bool witness_bruteforce_oracle(const Space& space, const VectorRef& x, const VectorRef& y, Side side,
                               const Tolerances& tol) {
    const Norms nrm = require_nonzero_pair(space, x, y);
    const double sign = side == Side::positive ? 1.0 : -1.0;
    const double top = 1e9 * nrm.y / nrm.x;
    const double threshold = -10.0 * tol.analytic;
    Vector probe(x.size());
    for (double lambda = 1e-6; lambda <= top; lambda *= 1.01) {
        probe = (sign * lambda) * x - y;
        const double g = detail::norm_unchecked(space, probe) - lambda * nrm.x;
        if (g < threshold) return true;
    }
    return false;
}

bool witness_is_valid(const Space& space, const VectorRef& x, const VectorRef& y, const Witness& w) {
    if (!(w.margin > 0.0) || !(w.radius > 0.0) || w.lambda == 0.0) return false;
    const Vector center = w.lambda * x;
    const double a = norm(space, center - y);
    const double b = norm(space, center);
    return a < w.radius && a + w.margin <= w.radius && w.radius <= b;
}

}  // namespace ballcover
