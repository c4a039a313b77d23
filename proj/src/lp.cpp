#include "ballcover/lp.hpp"

#include "ballcover/errors.hpp"

#include <cmath>
#include <limits>

namespace ballcover::lp {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr int kMaxPivots = 50'000;

// Tableau rows 0..m-1 are constraints, row m is the objective row holding
// reduced costs (z - c.x = 0 form). The last column is the right-hand side.
class Tableau {
public:
    Tableau(Eigen::MatrixXd t, std::vector<int> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

    Eigen::Index rows() const { return t_.rows() - 1; }
    Eigen::Index cols() const { return t_.cols() - 1; }

    void set_objective(const Eigen::VectorXd& c) {
        const Eigen::Index m = rows();
        t_.row(m).setZero();
        t_.row(m).head(c.size()) = -c.transpose();
        for (Eigen::Index r = 0; r < m; ++r) {
            const double coef = t_(m, basis_[r]);
            if (coef != 0.0) t_.row(m) -= coef * t_.row(r);
        }
    }

    // Runs Bland's-rule pivots; returns false if unbounded.
    bool optimize(const std::vector<bool>& forbidden) {
        const Eigen::Index m = rows();
        for (int iter = 0; iter < kMaxPivots; ++iter) {
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < cols(); ++j) {
                if (!forbidden[j] && t_(m, j) < -kPivotEps) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            Eigen::Index leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index r = 0; r < m; ++r) {
                const double a = t_(r, enter);
                if (a > kPivotEps) {
                    const double ratio = t_(r, cols()) / a;
                    if (ratio < best - 1e-14 ||
                        (std::abs(ratio - best) <= 1e-14 && leave >= 0 && basis_[r] < basis_[leave])) {
                        best = ratio;
                        leave = r;
                    }
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
        throw InconsistencyError("simplex: pivot limit exceeded");
    }

    void pivot(Eigen::Index r, Eigen::Index c) {
        t_.row(r) /= t_(r, c);
        for (Eigen::Index i = 0; i < t_.rows(); ++i) {
            if (i != r) {
                const double f = t_(i, c);
                if (f != 0.0) t_.row(i) -= f * t_.row(r);
            }
        }
        basis_[r] = static_cast<int>(c);
    }

    double objective_value() const { return t_(rows(), cols()); }
    double rhs(Eigen::Index r) const { return t_(r, cols()); }
    double at(Eigen::Index r, Eigen::Index c) const { return t_(r, c); }
    int basic(Eigen::Index r) const { return basis_[r]; }

private:
    Eigen::MatrixXd t_;
    std::vector<int> basis_;
};

}  // namespace

Solution maximize(const Problem& problem) {
    const Eigen::Index n = problem.objective.size();
    const auto m = static_cast<Eigen::Index>(problem.constraints.size());
    const bool any_free = !problem.free_variables.empty();
    if (any_free && static_cast<Eigen::Index>(problem.free_variables.size()) != n) {
        throw PreconditionError("lp: free_variables size mismatch");
    }

    // Column layout: [structural (free vars split into +/-)] [slack/surplus] [artificial]
    std::vector<Eigen::Index> pos_col(n), neg_col(n, -1);
    Eigen::Index next = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        pos_col[j] = next++;
        if (any_free && problem.free_variables[j]) neg_col[j] = next++;
    }
    const Eigen::Index structural = next;
    Eigen::Index slack_count = 0;
    for (const auto& c : problem.constraints) {
        if (c.coeffs.size() != n) throw PreconditionError("lp: constraint size mismatch");
        if (c.relation != Relation::equal) ++slack_count;
    }
    const Eigen::Index total = structural + slack_count + m;  // one artificial per row at most
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, total + 1);
    std::vector<int> basis(m, -1);
    std::vector<bool> artificial(total, false);

    Eigen::Index slack = structural;
    Eigen::Index art = structural + slack_count;
    for (Eigen::Index r = 0; r < m; ++r) {
        const Constraint& c = problem.constraints[r];
        double sign = c.rhs < 0.0 ? -1.0 : 1.0;
        Relation rel = c.relation;
        if (sign < 0.0 && rel != Relation::equal) {
            rel = rel == Relation::less_equal ? Relation::greater_equal : Relation::less_equal;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            t(r, pos_col[j]) = sign * c.coeffs[j];
            if (neg_col[j] >= 0) t(r, neg_col[j]) = -sign * c.coeffs[j];
        }
        t(r, total) = sign * c.rhs;
        if (rel == Relation::less_equal) {
            t(r, slack) = 1.0;
            basis[r] = static_cast<int>(slack++);
        } else {
            if (rel == Relation::greater_equal) t(r, slack++) = -1.0;
            t(r, art) = 1.0;
            artificial[art] = true;
            basis[r] = static_cast<int>(art++);
        }
    }

    Tableau tab(std::move(t), std::move(basis));
    const std::vector<bool> none(total, false);

    // Phase 1: maximize -(sum of artificials).
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
    bool has_artificial = false;
    for (Eigen::Index j = 0; j < total; ++j) {
        if (artificial[j]) {
            phase1[j] = -1.0;
            has_artificial = true;
        }
    }
    if (has_artificial) {
        tab.set_objective(phase1);
        tab.optimize(none);
        if (tab.objective_value() < -1e-9) return Solution{Status::infeasible, 0.0, {}};
        // Drive artificials out of the basis where possible.
        for (Eigen::Index r = 0; r < m; ++r) {
            if (!artificial[tab.basic(r)]) continue;
            for (Eigen::Index j = 0; j < total; ++j) {
                if (!artificial[j] && std::abs(tab.at(r, j)) > kPivotEps) {
                    tab.pivot(r, j);
                    break;
                }
            }
        }
    }

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total);
    for (Eigen::Index j = 0; j < n; ++j) {
        phase2[pos_col[j]] = problem.objective[j];
        if (neg_col[j] >= 0) phase2[neg_col[j]] = -problem.objective[j];
    }
    tab.set_objective(phase2);
    if (!tab.optimize(artificial)) return Solution{Status::unbounded, 0.0, {}};

    Eigen::VectorXd values = Eigen::VectorXd::Zero(total);
    for (Eigen::Index r = 0; r < m; ++r) values[tab.basic(r)] = tab.rhs(r);
    Solution sol;
    sol.status = Status::optimal;
    sol.value = tab.objective_value();
    sol.x.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        sol.x[j] = values[pos_col[j]] - (neg_col[j] >= 0 ? values[neg_col[j]] : 0.0);
    }
    return sol;
}

bool in_convex_hull(const Eigen::MatrixXd& points, const Eigen::VectorXd& target) {
    const Eigen::Index k = points.cols();
    if (k == 0) return false;
    Problem p;
    p.objective = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        p.constraints.push_back({points.row(i).transpose(), Relation::equal, target[i]});
    }
    p.constraints.push_back({Eigen::VectorXd::Ones(k), Relation::equal, 1.0});
    return maximize(p).status == Status::optimal;
}

}  // namespace ballcover::lp
