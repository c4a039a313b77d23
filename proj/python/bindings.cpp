#include "ballcover/covering.hpp"
#include "ballcover/derivatives.hpp"
#include "ballcover/errors.hpp"
#include "ballcover/orthogonality.hpp"
#include "ballcover/separation.hpp"
#include "ballcover/smoothapprox.hpp"
#include "ballcover/witness.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ballcover;

namespace {

TargetSet make_target(const Space& space, std::optional<double> delta, std::optional<std::vector<Vector>> points) {
    if (points) return TargetSet::finite(*points);
    if (!delta) throw PreconditionError("give either delta or points");
    return TargetSet::sphere(unit_sphere_net(space, *delta));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Norm derivatives, ball coverings and selection separation";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<InconsistencyError>(m, "InconsistencyError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<CertificateError>(m, "CertificateError", PyExc_RuntimeError);

    py::class_<Space>(m, "Space")
        .def_static("lp", &Space::lp, py::arg("dim"), py::arg("p"))
        .def_static("linf", &Space::linf, py::arg("dim"))
        .def_static("polyhedral", &Space::polyhedral, py::arg("rows"))
        .def_property_readonly("dim", &Space::dim)
        .def_property_readonly("label", &Space::label)
        .def_property_readonly("valid", [](const Space& s) { return s.validation().valid; })
        .def("__repr__", [](const Space& s) { return "Space(" + s.label() + ", dim=" + std::to_string(s.dim()) + ")"; });

    m.def("norm", &norm, py::arg("space"), py::arg("x"));
    m.def(
        "dual_norm", [](const Space& s, const Vector& f) { return dual_norm(s, Functional{f}); }, py::arg("space"),
        py::arg("f"));

    py::class_<DerivativePair>(m, "DerivativePair")
        .def_readonly("rho_minus", &DerivativePair::rho_minus)
        .def_readonly("rho_plus", &DerivativePair::rho_plus)
        .def_readonly("error_bound", &DerivativePair::error_bound);
    m.def("rho_analytic", &rho_analytic, py::arg("space"), py::arg("x"), py::arg("y"));
    m.def("rho_finite_difference", &rho_finite_difference, py::arg("space"), py::arg("x"), py::arg("y"));
    m.def(
        "duality_set", [](const Space& s, const Vector& x) { return duality_set(s, x).extreme_points; },
        py::arg("space"), py::arg("x"), "Extreme points of J(x).");
    m.def(
        "is_smooth", [](const Space& s, const Vector& x) { return is_smooth(s, x).smooth; }, py::arg("space"),
        py::arg("x"));

    m.def(
        "bj_orthogonal", [](const Space& s, const Vector& x, const Vector& y) { return bj_orthogonal(s, x, y); },
        py::arg("space"), py::arg("x"), py::arg("y"));
    m.def(
        "classify_pair",
        [](const Space& s, const Vector& x, const Vector& y) { return std::string(to_string(classify_pair(s, x, y).tag)); },
        py::arg("space"), py::arg("x"), py::arg("y"));

    py::class_<Witness>(m, "Witness")
        .def_readonly("lambda_", &Witness::lambda)
        .def_readonly("radius", &Witness::radius)
        .def_readonly("margin", &Witness::margin);
    m.def(
        "positive_witness",
        [](const Space& s, const Vector& x, const Vector& y) { return positive_witness(s, x, y).witness; },
        py::arg("space"), py::arg("x"), py::arg("y"), "Witness on the positive ray, or None.");
    m.def(
        "negative_witness",
        [](const Space& s, const Vector& x, const Vector& y) { return negative_witness(s, x, y).witness; },
        py::arg("space"), py::arg("x"), py::arg("y"), "Witness on the negative ray, or None.");
    m.def("gap", &gap, py::arg("space"), py::arg("x"), py::arg("y"), py::arg("lam"));

    py::class_<Ball>(m, "Ball")
        .def(py::init([](const Vector& c, double r) { return Ball{c, r}; }), py::arg("center"), py::arg("radius"))
        .def_readonly("center", &Ball::center)
        .def_readonly("radius", &Ball::radius);
    py::class_<CoverageCertificate>(m, "CoverageCertificate")
        .def_readonly("min_slack", &CoverageCertificate::min_slack)
        .def_readonly("net_resolution", &CoverageCertificate::net_resolution)
        .def_readonly("full_cover", &CoverageCertificate::full_cover)
        .def_readonly("balls_exclude_origin", &CoverageCertificate::balls_exclude_origin)
        .def_property_readonly("valid", &CoverageCertificate::valid);
    py::class_<Covering>(m, "Covering")
        .def_readonly("balls", &Covering::balls)
        .def_readonly("certificate", &Covering::certificate);

    m.def(
        "symmetric_cover_2n",
        [](const Space& s, const std::vector<Vector>& fs, double delta) { return symmetric_cover_2n(s, fs, delta); },
        py::arg("space"), py::arg("functionals"), py::arg("delta"));
    m.def(
        "smooth_cover_n_plus_1",
        [](const Space& s, const std::vector<Vector>& fs, double delta) { return smooth_cover_n_plus_1(s, fs, delta); },
        py::arg("space"), py::arg("functionals"), py::arg("delta"));
    m.def(
        "cover_from_functionals",
        [](const Space& s, const std::vector<Vector>& fs, std::optional<double> delta,
           std::optional<std::vector<Vector>> points) {
            return cover_from_functionals(s, make_target(s, delta, points), fs);
        },
        py::arg("space"), py::arg("functionals"), py::arg("delta") = py::none(), py::arg("points") = py::none());
    m.def(
        "verify_cover",
        [](const Space& s, const std::vector<Ball>& balls, std::optional<double> delta,
           std::optional<std::vector<Vector>> points) { return verify_cover(s, balls, make_target(s, delta, points)); },
        py::arg("space"), py::arg("balls"), py::arg("delta") = py::none(), py::arg("points") = py::none());
    m.def(
        "adversary_uncovered",
        [](const Space& s, const std::vector<Ball>& balls, bool symmetric) {
            return adversary_uncovered(s, balls, symmetric).point;
        },
        py::arg("space"), py::arg("balls"), py::arg("symmetric"));

    m.def(
        "positively_separates",
        [](const Space& s, const std::vector<Vector>& dirs, const std::vector<Vector>& pts) {
            const auto v = positively_separates(SelectionInstance{s, dirs, pts, {}});
            return py::make_tuple(v.separated, v.witness_index);
        },
        py::arg("space"), py::arg("directions"), py::arg("points"),
        "(separated, per-point witness direction index or None).");

    m.def("linf_shrink_sequence", &linf_shrink_sequence, py::arg("d"), py::arg("n"));
    m.def(
        "transfer_witness",
        [](const Space& s, const Vector& x, const Vector& y, long n_max) -> std::optional<long> {
            const auto seq = s.family() == Family::linf ? SmoothingSequence::linf_shrink()
                                                        : SmoothingSequence::radial_lp_blend();
            return transfer_witness(s, x, y, seq, n_max).n0;
        },
        py::arg("space"), py::arg("x"), py::arg("y"), py::arg("n_max") = 10'000, "First smooth index n0, or None.");
}
