#pragma once

#include "ballcover/derivatives.hpp"
#include "ballcover/spaces.hpp"
#include "ballcover/tolerances.hpp"

#include <string_view>

namespace ballcover {

/// Birkhoff-James orthogonality x _|_B y: ||x + a y|| >= ||x|| for every
/// scalar a, decided as rho_minus(x, y) <= tol and rho_plus(x, y) >= -tol.
bool bj_orthogonal(const Space& space, const VectorRef& x, const VectorRef& y, const Tolerances& tol = {});

struct BjOracleResult {
    bool orthogonal = false;
    double h_min = 0.0;       // min of ||x + a y|| over the bracket
    double lambda_min = 0.0;  // where it was attained
};

/// Independent check by golden-section minimization of a -> ||x + a y|| on
/// [-4||x||/||y||, 4||x||/||y||] (200 iterations); orthogonal iff
/// h_min >= ||x|| - threshold.
BjOracleResult bj_bruteforce_oracle_detail(const Space& space, const VectorRef& x, const VectorRef& y,
                                           double threshold = 1e-9);
bool bj_bruteforce_oracle(const Space& space, const VectorRef& x, const VectorRef& y, double threshold = 1e-9);

enum class PairTag { positive_side, negative_side, bj_orthogonal, inconclusive };

std::string_view to_string(PairTag tag);

struct PairClass {
    PairTag tag = PairTag::inconclusive;
    DerivativePair rho;
};

/// Trichotomy: positive_side iff rho_minus > tol, negative_side iff
/// rho_plus < -tol, bj_orthogonal otherwise. With the finite-difference
/// backend a decision inside the estimator's error band is inconclusive.
PairClass classify_pair(const Space& space, const VectorRef& x, const VectorRef& y, const Tolerances& tol = {},
                        DerivativeMethod method = DerivativeMethod::analytic);

}  // namespace ballcover
