#pragma once

#include "ballcover/spaces.hpp"
#include "ballcover/tolerances.hpp"
#include "ballcover/witness.hpp"

#include <optional>
#include <vector>

namespace ballcover {

/// u_n = (1, 1 - 1/n, ..., 1 - 1/n) in linf^d. Unique active coordinate, so
/// smooth, with ||u_n - (1, ..., 1)||_inf = 1/n. Throws for d < 2 or n < 1.
Vector linf_shrink_sequence(int d, long n);

/// Rule producing smooth points x_n converging to x.
class SmoothingSequence {
public:
    enum class Kind { linf_shrink, radial_lp_blend, custom_list };

    /// linf only: keeps the first active coordinate of x, scales the others by 1 - 1/n.
    static SmoothingSequence linf_shrink();
    /// l1: fills zero coordinates of x with ||x|| / (n d); smooth lp: x itself.
    static SmoothingSequence radial_lp_blend();
    /// x_n = list[n - 1].
    static SmoothingSequence custom(std::vector<Vector> list);

    Kind kind() const noexcept { return kind_; }
    /// Largest valid index (the list length for custom sequences).
    long max_index() const noexcept;
    Vector element(const Space& space, const VectorRef& x, long n) const;

private:
    explicit SmoothingSequence(Kind k) : kind_(k) {}
    Kind kind_;
    std::vector<Vector> list_;
};

struct TransferResult {
    /// First index with rho_minus(x_n, y) > tol; empty if none up to n_max.
    std::optional<long> n0;
    Vector x_n0;
    std::optional<Witness> witness;
    double rho = 0.0;
    long scanned = 0;

    bool found() const noexcept { return n0.has_value(); }
};

/// Given a ball on the positive ray through x containing y, finds the first
/// smooth x_n whose positive ray also carries one. Throws PreconditionError
/// when x has no witness for y or a sequence element is not smooth.
TransferResult transfer_witness(const Space& space, const VectorRef& x, const VectorRef& y,
                                const SmoothingSequence& seq, long n_max = 10'000, const Tolerances& tol = {});

}  // namespace ballcover
