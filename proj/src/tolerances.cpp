#include "ballcover/tolerances.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace ballcover {

Tolerances tolerances_from_environment() {
    Tolerances tol;
    const char* raw = std::getenv("BALLCOVER_TOL");
    if (raw == nullptr || *raw == '\0') return tol;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end != raw && *end == '\0' && std::isfinite(v) && v > 0.0) tol.analytic = v;
    return tol;
}

}  // namespace ballcover
