#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace ballcover {

using Vector = Eigen::VectorXd;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

/// Exponent of an lp norm. Infinity is a distinguished token, never a float.
class Exponent {
public:
    static Exponent finite(double p) noexcept { return Exponent(p, false); }
    static Exponent infinity() noexcept { return Exponent(0.0, true); }

    bool is_infinite() const noexcept { return infinite_; }
    /// Throws PreconditionError for the infinity token.
    double finite_value() const;

    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    Exponent(double p, bool infinite) noexcept : p_(p), infinite_(infinite) {}
    double p_;
    bool infinite_;
};

enum class NormKind { lp, polyhedral };

/// Which closed-form branch a space uses. l1 and linf are split out of lp
/// because their derivative and duality formulas differ from the smooth case.
enum class Family { l1, smooth_lp, linf, polyhedral };

struct NormSpec {
    NormKind kind = NormKind::lp;
    Exponent p = Exponent::finite(2.0);
    /// Polyhedral only: one dual coordinate vector per row; the norm is
    /// max_i |<f_i, x>|.
    Eigen::MatrixXd functionals;

    static NormSpec lp(Exponent p);
    static NormSpec polyhedral(Eigen::MatrixXd rows);
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;
};

/// A finite-dimensional real normed space. Construction never throws on an
/// invalid descriptor; the validation report is computed once and every
/// numerical operation calls require_valid().
class Space {
public:
    Space(int dim, NormSpec spec);

    static Space lp(int dim, double p);
    static Space linf(int dim);
    static Space polyhedral(Eigen::MatrixXd rows);

    int dim() const noexcept { return dim_; }
    const NormSpec& spec() const noexcept { return spec_; }
    Family family() const noexcept { return family_; }
    bool is_smooth_family() const noexcept { return family_ == Family::smooth_lp; }

    const ValidationReport& validation() const noexcept { return report_; }
    void require_valid() const;

    /// Short human label, e.g. "l2", "linf", "l1.5", "polyhedral[3]".
    std::string label() const;

private:
    int dim_;
    NormSpec spec_;
    Family family_;
    ValidationReport report_;
};

/// A linear functional acting through the standard dot product.
struct Functional {
    Vector coords;

    double operator()(const VectorRef& x) const;
};

/// Checks the NormSpec invariants; for polyhedral norms, rank of the stacked
/// functional matrix must equal the dimension.
ValidationReport validate_space(const Space& space);

/// ||x|| in the space. Throws PreconditionError on dimension mismatch,
/// non-finite input or an invalid space.
double norm(const Space& space, const VectorRef& x);

/// f(x) = sum_i f_i x_i.
double dual_pair(const Functional& f, const VectorRef& x);

/// ||f||_* = sup { f(x) : ||x|| <= 1 }. Closed form for lp; a linear program
/// over the facet description max_i |f_i(x)| <= 1 for polyhedral norms.
double dual_norm(const Space& space, const Functional& f);

/// Certified constants with lower*||x||_2 <= ||x|| <= upper*||x||_2.
struct EquivalenceConstants {
    double lower = 1.0;
    double upper = 1.0;
};

EquivalenceConstants equivalence_constants(const Space& space);

/// Finite subset of the unit sphere; every unit vector lies within
/// `resolution` (in the space's norm) of some column of `points`.
struct SphereNet {
    Eigen::MatrixXd points;  // dim x size, one unit vector per column
    double resolution = 0.0;

    Eigen::Index size() const noexcept { return points.cols(); }
    Vector point(Eigen::Index i) const { return points.col(i); }
};

struct NetOptions {
    int dim_cap = 6;
    bool allow_above_cap = false;
    std::size_t max_points = 20'000'000;
};

/// Builds a certified delta-net of the unit sphere. Dimension 2 uses a
/// uniform angular grid; higher dimensions use a grid on the faces of the
/// cube [-1, 1]^n, deduplicated along shared edges. Points are normalized
/// onto the sphere and ordered by face then lexicographic grid index.
SphereNet unit_sphere_net(const Space& space, double delta, const NetOptions& options = {});

/// Number of points unit_sphere_net would produce, without allocating.
std::size_t unit_sphere_net_size(const Space& space, double delta, const NetOptions& options = {});

}  // namespace ballcover
