#include "ballcover/separation.hpp"

#include "ballcover/derivatives.hpp"
#include "ballcover/errors.hpp"
#include "ballcover/orthogonality.hpp"
#include "ballcover/witness.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ballcover {
namespace {

constexpr double kSelectionCap = 1e6;

std::string vec_str(const VectorRef& v) {
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

// Index of the direction with the largest rho_minus at a, and that value.
std::pair<int, double> best_direction(const SelectionInstance& inst, const VectorRef& a) {
    int best = -1;
    double best_rho = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < inst.directions.size(); ++i) {
        const double r = rho_analytic(inst.space, inst.directions[i], a).rho_minus;
        if (r > best_rho) {
            best_rho = r;
            best = static_cast<int>(i);
        }
    }
    return {best, best_rho};
}

Covering build_covering(const SelectionInstance& inst, const std::vector<Vector>& targets,
                        const std::vector<int>& assignment, const Tolerances& tol) {
    Eigen::MatrixXd pts(inst.space.dim(), static_cast<Eigen::Index>(targets.size()));
    for (std::size_t j = 0; j < targets.size(); ++j) pts.col(static_cast<Eigen::Index>(j)) = targets[j];
    const auto acc = detail::accumulate_witnesses(inst.space, inst.directions, pts, assignment, tol);
    Covering c;
    for (const auto& a : acc) c.balls.push_back(a.ball());
    c.certificate = verify_cover(inst.space, c.balls, TargetSet::finite(targets), tol);
    return c;
}

}  // namespace

void validate_instance(const SelectionInstance& inst) {
    inst.space.require_valid();
    if (inst.directions.empty()) throw PreconditionError("instance has no directions");
    if (inst.points.empty()) throw PreconditionError("instance has no points");
    for (std::size_t i = 0; i < inst.directions.size(); ++i) {
        const double n = norm(inst.space, inst.directions[i]);
        if (std::abs(n - 1.0) > 1e-9) {
            throw PreconditionError("direction " + std::to_string(i) + " is not a unit vector (norm " +
                                    std::to_string(n) + ")");
        }
    }
    for (std::size_t j = 0; j < inst.points.size(); ++j) {
        if (norm(inst.space, inst.points[j]) == 0.0) {
            throw PreconditionError("point " + std::to_string(j) + " is the zero vector");
        }
    }
    for (const auto& c : inst.closure_points) {
        if (c.size() != inst.space.dim()) throw PreconditionError("closure point dimension mismatch");
    }
}

SeparationVerdict positively_separates(const SelectionInstance& inst, const Tolerances& tol) {
    validate_instance(inst);
    SeparationVerdict v;
    v.separated = true;
    v.witness_index.resize(inst.points.size());
    for (std::size_t j = 0; j < inst.points.size(); ++j) {
        const auto [i, rho] = best_direction(inst, inst.points[j]);
        if (rho > tol.analytic) {
            v.witness_index[j] = i;
            continue;
        }
        v.separated = false;
        if (!v.failure) {
            SelectionFailure f;
            f.point_index = static_cast<int>(j);
            for (const auto& x : inst.directions) {
                const DualitySet js = duality_set(inst.space, x);
                const Vector* arg = &js.extreme_points.front();
                for (const auto& e : js.extreme_points) {
                    if (e.dot(inst.points[j]) < arg->dot(inst.points[j])) arg = &e;
                }
                f.selection.push_back(*arg);
            }
            v.failure = std::move(f);
        }
    }
    return v;
}

bool selection_oracle_exhaustive(const SelectionInstance& inst, const Tolerances& tol) {
    validate_instance(inst);
    if (inst.space.is_smooth_family()) {
        throw PreconditionError("selection_oracle_exhaustive needs finitely many extreme points per duality set; "
                                "smooth lp spaces are handled by positively_separates");
    }
    std::vector<std::vector<Vector>> choices;
    double total = 1.0;
    for (const auto& x : inst.directions) {
        choices.push_back(duality_set(inst.space, x).extreme_points);
        total *= static_cast<double>(choices.back().size());
    }
    if (total > kSelectionCap) {
        throw PreconditionError("selection_oracle_exhaustive: " + std::to_string(total) +
                                " selections exceed the cap of 1e6");
    }
    std::vector<std::size_t> odo(choices.size(), 0);
    for (;;) {
        for (const auto& a : inst.points) {
            bool hit = false;
            for (std::size_t i = 0; i < choices.size() && !hit; ++i) hit = choices[i][odo[i]].dot(a) > tol.analytic;
            if (!hit) return false;
        }
        std::size_t k = 0;
        while (k < odo.size() && ++odo[k] == choices[k].size()) odo[k++] = 0;
        if (k == odo.size()) return true;
    }
}

EquivalenceReport separation_ballcover_equivalence(const SelectionInstance& inst, const Tolerances& tol) {
    EquivalenceReport r;
    r.verdict = positively_separates(inst, tol);
    if (r.verdict.separated) {
        std::vector<int> assignment;
        for (const auto& w : r.verdict.witness_index) assignment.push_back(*w);
        r.covering = build_covering(inst, inst.points, assignment, tol);
        r.covering_certified = r.covering->certificate->valid();

        // Necessity: a ball on ray i containing a forces rho_minus(x_i, a) > 0.
        r.necessity_verified = true;
        for (const auto& a : inst.points) {
            bool covered = false;
            for (std::size_t i = 0; i < r.covering->balls.size(); ++i) {
                const Ball& b = r.covering->balls[i];
                if (norm(inst.space, b.center - a) >= b.radius) continue;
                covered = true;
                const PairClass pc = classify_pair(inst.space, inst.directions[i], a, tol);
                if (pc.tag != PairTag::positive_side) r.necessity_verified = false;
            }
            if (!covered) r.necessity_verified = false;
        }
        r.agree = r.covering_certified && r.necessity_verified;
    } else {
        const auto& fail = *r.verdict.failure;
        const Vector& a = inst.points[static_cast<std::size_t>(fail.point_index)];
        r.absence_verified = true;
        for (std::size_t i = 0; i < inst.directions.size(); ++i) {
            const WitnessResult w = positive_witness(inst.space, inst.directions[i], a, tol);
            if (w.found()) r.absence_verified = false;
            if (fail.selection[i].dot(a) > tol.analytic) r.absence_verified = false;
        }
        r.agree = r.absence_verified;
    }
    return r;
}

ClosureReport closure_precondition_check(const SelectionInstance& inst, const std::vector<Vector>& closure_points,
                                         const Tolerances& tol) {
    validate_instance(inst);
    ClosureReport r;
    const double scale = [&] {
        double s = 0.0;
        for (const auto& p : inst.points) s = std::max(s, norm(inst.space, p));
        return s;
    }();

    std::vector<Vector> nonzero;
    for (std::size_t k = 0; k < closure_points.size(); ++k) {
        const Vector& a = closure_points[k];
        if (a.size() != inst.space.dim()) throw PreconditionError("closure point dimension mismatch");
        if (norm(inst.space, a) <= tol.analytic * std::max(1.0, scale)) {
            if (r.distance_positive) {
                r.distance_positive = false;
                r.zero_point = static_cast<int>(k);
                r.findings.push_back("closure point " + std::to_string(k) +
                                     " is the origin: d(0, closure) = 0, no ball excluding 0 can contain it");
            }
            continue;
        }
        nonzero.push_back(a);
        for (std::size_t i = 0; i < inst.directions.size(); ++i) {
            const DerivativePair d = rho_analytic(inst.space, inst.directions[i], a);
            if (bj_orthogonal(inst.space, inst.directions[i], a, tol)) {
                r.disjoint = false;
                r.orthogonal_hits.push_back({static_cast<int>(k), static_cast<int>(i), d.rho_minus, d.rho_plus});
                r.findings.push_back("closure point " + std::to_string(k) + " " + vec_str(a) +
                                     " is orthogonal to direction " + std::to_string(i) +
                                     ": rho_minus = " + std::to_string(d.rho_minus));
            }
        }
    }

    const SeparationVerdict open = positively_separates(inst, tol);
    r.open_instance_separated = open.separated;
    if (!open.separated) r.findings.push_back("the open instance is not positively separated");

    r.conclusion_holds = r.distance_positive;
    std::vector<int> assignment;
    for (const auto& w : open.witness_index) assignment.push_back(w.value_or(0));
    for (std::size_t k = 0; k < nonzero.size(); ++k) {
        const auto [i, rho] = best_direction(inst, nonzero[k]);
        if (rho > tol.analytic) {
            assignment.push_back(i);
        } else {
            r.conclusion_holds = false;
            r.findings.push_back("no direction has rho_minus > 0 at closure point " + vec_str(nonzero[k]) +
                                 " (best " + std::to_string(rho) + ")");
        }
    }
    if (r.conclusion_holds && open.separated) {
        std::vector<Vector> all = inst.points;
        all.insert(all.end(), nonzero.begin(), nonzero.end());
        const Covering c = build_covering(inst, all, assignment, tol);
        r.closure_covering_certified = c.certificate->valid();
    }
    return r;
}

}  // namespace ballcover
