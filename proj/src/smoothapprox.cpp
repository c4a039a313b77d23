#include "ballcover/smoothapprox.hpp"

#include "ballcover/derivatives.hpp"
#include "ballcover/errors.hpp"

#include <cmath>
#include <limits>

namespace ballcover {

Vector linf_shrink_sequence(int d, long n) {
    if (d < 2) throw PreconditionError("linf_shrink_sequence: dimension must be at least 2");
    if (n < 1) throw PreconditionError("linf_shrink_sequence: index must be at least 1");
    Vector u = Vector::Constant(d, 1.0 - 1.0 / static_cast<double>(n));
    u[0] = 1.0;
    return u;
}

SmoothingSequence SmoothingSequence::linf_shrink() { return SmoothingSequence(Kind::linf_shrink); }
SmoothingSequence SmoothingSequence::radial_lp_blend() { return SmoothingSequence(Kind::radial_lp_blend); }

SmoothingSequence SmoothingSequence::custom(std::vector<Vector> list) {
    SmoothingSequence s(Kind::custom_list);
    s.list_ = std::move(list);
    return s;
}

long SmoothingSequence::max_index() const noexcept {
    if (kind_ == Kind::custom_list) return static_cast<long>(list_.size());
    return std::numeric_limits<long>::max();
}

Vector SmoothingSequence::element(const Space& space, const VectorRef& x, long n) const {
    if (n < 1) throw PreconditionError("sequence index must be at least 1");
    switch (kind_) {
    case Kind::linf_shrink: {
        if (space.family() != Family::linf) throw PreconditionError("linf_shrink applies to linf spaces only");
        const double nx = norm(space, x);
        if (nx == 0.0) throw PreconditionError("cannot smooth the zero vector");
        Eigen::Index k = 0;
        while (std::abs(x[k]) < nx * (1.0 - detail::kActiveRelTol)) ++k;
        Vector out = x * (1.0 - 1.0 / static_cast<double>(n));
        out[k] = x[k];
        return out;
    }
    case Kind::radial_lp_blend: {
        if (space.is_smooth_family()) return x;
        if (space.family() != Family::l1) {
            throw PreconditionError("radial_lp_blend applies to l1 and smooth lp spaces only");
        }
        const double nx = norm(space, x);
        if (nx == 0.0) throw PreconditionError("cannot smooth the zero vector");
        const double fill = nx / (static_cast<double>(n) * static_cast<double>(x.size()));
        const double cut = detail::kActiveRelTol * x.cwiseAbs().maxCoeff();
        Vector out = x;
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            if (std::abs(out[i]) <= cut) out[i] = fill;
        }
        return out;
    }
    case Kind::custom_list:
        if (n > static_cast<long>(list_.size())) throw PreconditionError("custom sequence exhausted");
        if (list_[static_cast<std::size_t>(n - 1)].size() != space.dim()) {
            throw PreconditionError("custom sequence element dimension mismatch");
        }
        return list_[static_cast<std::size_t>(n - 1)];
    }
    throw PreconditionError("unknown sequence kind");
}

TransferResult transfer_witness(const Space& space, const VectorRef& x, const VectorRef& y,
                                const SmoothingSequence& seq, long n_max, const Tolerances& tol) {
    if (n_max < 1) throw PreconditionError("n_max must be at least 1");
    const WitnessResult base = positive_witness(space, x, y, tol);
    if (!base.found()) {
        throw PreconditionError("hypothesis violated: no ball on the positive ray through x contains y (rho_minus = " +
                                std::to_string(base.rho) + ")");
    }
    TransferResult out;
    const long last = std::min(n_max, seq.max_index());
    double prev_dist = std::numeric_limits<double>::infinity();
    for (long n = 1; n <= last; ++n) {
        const Vector xn = seq.element(space, x, n);
        if (!is_smooth(space, xn).smooth) {
            throw PreconditionError("sequence element " + std::to_string(n) + " is not a smooth point");
        }
        const double dist = norm(space, xn - x);
        if (dist > prev_dist * (1.0 + 1e-12) + 1e-15) {
            throw PreconditionError("sequence distance to x increases at index " + std::to_string(n));
        }
        prev_dist = dist;
        out.scanned = n;
        const double rho = rho_analytic(space, xn, y).rho_minus;
        if (rho <= tol.analytic) continue;
        const WitnessResult w = positive_witness(space, xn, y, tol);
        if (!w.found()) throw InconsistencyError("rho_minus positive at x_n but no witness found");
        out.n0 = n;
        out.x_n0 = xn;
        out.witness = w.witness;
        out.rho = rho;
        return out;
    }
    return out;
}

}  // namespace ballcover
