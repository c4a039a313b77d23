#include "ballcover/orthogonality.hpp"

#include "ballcover/detail/norm_kernel.hpp"
#include "ballcover/errors.hpp"

#include <cmath>

namespace ballcover {

bool bj_orthogonal(const Space& space, const VectorRef& x, const VectorRef& y, const Tolerances& tol) {
    const DerivativePair d = rho_analytic(space, x, y);
    return d.rho_minus <= tol.analytic && d.rho_plus >= -tol.analytic;
}

BjOracleResult bj_bruteforce_oracle_detail(const Space& space, const VectorRef& x, const VectorRef& y,
                                           double threshold) {
    const double nx = norm(space, x);
    const double ny = norm(space, y);
    if (nx == 0.0 || ny == 0.0) throw PreconditionError("bj_bruteforce_oracle: x and y must be nonzero");

    // h(a) >= |a| ||y|| - ||x||, so the minimizer satisfies |a| <= 2||x||/||y||.
    const double bound = 4.0 * nx / ny;
    Vector probe(x.size());
    auto h = [&](double a) {
        probe = x + a * y;
        return detail::norm_unchecked(space, probe);
    };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = -bound;
    double hi = bound;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double hc = h(c);
    double hd = h(d);
    for (int iter = 0; iter < 200; ++iter) {
        if (hc <= hd) {
            hi = d;
            d = c;
            hd = hc;
            c = hi - inv_phi * (hi - lo);
            hc = h(c);
        } else {
            lo = c;
            c = d;
            hc = hd;
            d = lo + inv_phi * (hi - lo);
            hd = h(d);
        }
    }
    BjOracleResult r;
    r.lambda_min = hc <= hd ? c : d;
    r.h_min = std::min(hc, hd);
    // The bracket midpoint a = 0 is always a candidate.
    if (nx < r.h_min) {
        r.h_min = nx;
        r.lambda_min = 0.0;
    }
    r.orthogonal = r.h_min >= nx - threshold;
    return r;
}

bool bj_bruteforce_oracle(const Space& space, const VectorRef& x, const VectorRef& y, double threshold) {
    return bj_bruteforce_oracle_detail(space, x, y, threshold).orthogonal;
}

std::string_view to_string(PairTag tag) {
    switch (tag) {
    case PairTag::positive_side: return "positive_side";
    case PairTag::negative_side: return "negative_side";
    case PairTag::bj_orthogonal: return "bj_orthogonal";
    case PairTag::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

PairClass classify_pair(const Space& space, const VectorRef& x, const VectorRef& y, const Tolerances& tol,
                        DerivativeMethod method) {
    if (norm(space, y) == 0.0) throw PreconditionError("classify_pair: y must be nonzero");
    PairClass out;
    if (method == DerivativeMethod::analytic) {
        out.rho = rho_analytic(space, x, y);
        if (out.rho.rho_minus > tol.analytic) {
            out.tag = PairTag::positive_side;
        } else if (out.rho.rho_plus < -tol.analytic) {
            out.tag = PairTag::negative_side;
        } else {
            out.tag = PairTag::bj_orthogonal;
        }
        return out;
    }

    // The estimate brackets the truth: rho_minus in [est.minus, est.minus + eb],
    // rho_plus in [est.plus - eb, est.plus].
    out.rho = rho_finite_difference(space, x, y);
    const double eb = out.rho.error_bound;
    const double band = tol.finite_difference;
    if (out.rho.rho_minus > band) {
        out.tag = PairTag::positive_side;
    } else if (out.rho.rho_plus < -band) {
        out.tag = PairTag::negative_side;
    } else if (out.rho.rho_minus + eb <= band && out.rho.rho_plus - eb >= -band) {
        out.tag = PairTag::bj_orthogonal;
    } else {
        out.tag = PairTag::inconclusive;
    }
    return out;
}

}  // namespace ballcover
