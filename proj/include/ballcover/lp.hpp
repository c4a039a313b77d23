#pragma once

#include <Eigen/Dense>

#include <vector>

// Dense two-phase simplex with Bland's rule. Sized for the handful of
// variables and constraints that polyhedral-norm queries produce.
namespace ballcover::lp {

enum class Relation { less_equal, equal, greater_equal };

struct Constraint {
    Eigen::VectorXd coeffs;
    Relation relation = Relation::less_equal;
    double rhs = 0.0;
};

struct Problem {
    Eigen::VectorXd objective;  // maximize objective . x
    std::vector<Constraint> constraints;
    /// Variables flagged true are unrestricted in sign; the rest are >= 0.
    /// Empty means all nonnegative.
    std::vector<bool> free_variables;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
    Status status = Status::infeasible;
    double value = 0.0;
    Eigen::VectorXd x;
};

Solution maximize(const Problem& problem);

/// True when `target` is a convex combination of the columns of `points`.
bool in_convex_hull(const Eigen::MatrixXd& points, const Eigen::VectorXd& target);

}  // namespace ballcover::lp
