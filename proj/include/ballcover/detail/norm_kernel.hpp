#pragma once

#include "ballcover/detail/wide.hpp"
#include "ballcover/spaces.hpp"

#include <span>

namespace ballcover::detail {

/// Unchecked norm evaluation in scalar type T. Callers validate dimension.
template <class T>
T norm_kernel(const Space& space, std::span<const T> x) {
    const NormSpec& spec = space.spec();
    if (spec.kind == NormKind::polyhedral) {
        T best = T(0);
        const Eigen::MatrixXd& rows = spec.functionals;
        for (Eigen::Index i = 0; i < rows.rows(); ++i) {
            T acc = T(0);
            for (std::size_t k = 0; k < x.size(); ++k) {
                acc += T(rows(i, static_cast<Eigen::Index>(k))) * x[k];
            }
            const T a = abs_of(acc);
            if (a > best) best = a;
        }
        return best;
    }

    T largest = T(0);
    for (const T& v : x) {
        const T a = abs_of(v);
        if (a > largest) largest = a;
    }
    switch (space.family()) {
    case Family::linf:
        return largest;
    case Family::l1: {
        T acc = T(0);
        for (const T& v : x) acc += abs_of(v);
        return acc;
    }
    default:
        break;
    }
    if (largest == T(0)) return T(0);
    // Scale by the largest coordinate so the power sum stays in range.
    const double p = spec.p.finite_value();
    T acc = T(0);
    if (p == 2.0) {
        for (const T& v : x) {
            const T s = v / largest;
            acc += s * s;
        }
        return largest * sqrt_of(acc);
    }
    for (const T& v : x) acc += pow_of(abs_of(v) / largest, T(p));
    return largest * pow_of(acc, T(1.0 / p));
}

inline double norm_unchecked(const Space& space, const VectorRef& x) {
    return norm_kernel<double>(space, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

}  // namespace ballcover::detail
