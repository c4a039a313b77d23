#include "svg.hpp"

#include "ballcover/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ballcover::svg {
namespace {

constexpr int kSize = 800;
constexpr int kSegments = 720;

struct Frame {
    double scale;
    double to_x(double x) const { return kSize / 2.0 + scale * x; }
    double to_y(double y) const { return kSize / 2.0 - scale * y; }
};

// Boundary of {z : ||z - c|| = r}: c + r u/||u|| for u on a Euclidean circle.
std::string outline(const Space& space, const Vector& c, double r, const Frame& f) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed;
    for (int k = 0; k < kSegments; ++k) {
        const double t = 2.0 * std::numbers::pi * k / kSegments;
        Vector u(2);
        u << std::cos(t), std::sin(t);
        const Vector p = c + r * u / norm(space, u);
        os << (k == 0 ? "M" : "L") << f.to_x(p[0]) << ' ' << f.to_y(p[1]) << ' ';
    }
    os << 'Z';
    return os.str();
}

}  // namespace

std::string render(const Figure& fig) {
    if (fig.space == nullptr || fig.space->dim() != 2) throw PreconditionError("svg output needs a dimension-2 space");
    const Space& space = *fig.space;
    const EquivalenceConstants ec = equivalence_constants(space);

    // Euclidean extent of everything drawn, capped so that far-away centers
    // do not shrink the sphere to a dot; clipped balls still show their
    // boundary near the sphere.
    double extent = 1.0 / ec.lower;
    for (const Ball& b : fig.balls) extent = std::max(extent, b.center.norm() + b.radius / ec.lower);
    extent = std::min(extent, 3.0 / ec.lower);
    const Frame f{0.45 * kSize / extent};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\" viewBox=\"0 0 "
       << kSize << ' ' << kSize << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"0\" y1=\"" << kSize / 2 << "\" x2=\"" << kSize << "\" y2=\"" << kSize / 2
       << "\" stroke=\"#ddd\"/>\n";
    os << "<line x1=\"" << kSize / 2 << "\" y1=\"0\" x2=\"" << kSize / 2 << "\" y2=\"" << kSize
       << "\" stroke=\"#ddd\"/>\n";
    for (const Ball& b : fig.balls) {
        os << "<path d=\"" << outline(space, b.center, b.radius, f)
           << "\" fill=\"steelblue\" fill-opacity=\"0.15\" stroke=\"steelblue\"/>\n";
        os << "<circle cx=\"" << f.to_x(b.center[0]) << "\" cy=\"" << f.to_y(b.center[1])
           << "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
    os << "<path d=\"" << outline(space, Vector::Zero(2), 1.0, f) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (Eigen::Index i = 0; i < fig.net.cols(); ++i) {
        os << "<circle cx=\"" << f.to_x(fig.net(0, i)) << "\" cy=\"" << f.to_y(fig.net(1, i))
           << "\" r=\"1\" fill=\"gray\"/>\n";
    }
    if (fig.uncovered) {
        os << "<circle cx=\"" << f.to_x((*fig.uncovered)[0]) << "\" cy=\"" << f.to_y((*fig.uncovered)[1])
           << "\" r=\"6\" fill=\"red\"/>\n";
    }
    os << "<circle cx=\"" << kSize / 2 << "\" cy=\"" << kSize / 2 << "\" r=\"2\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace ballcover::svg
