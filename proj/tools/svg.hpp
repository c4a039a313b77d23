#pragma once

#include "ballcover/covering.hpp"

#include <optional>
#include <string>

namespace ballcover::svg {

struct Figure {
    const Space* space = nullptr;
    std::vector<Ball> balls;
    Eigen::MatrixXd net;  // 2 x k, may be empty
    std::optional<Vector> uncovered;
};

/// Static 800x800 drawing of a dimension-2 figure: unit sphere, ball
/// boundaries, net points and the uncovered point if any. Throws
/// PreconditionError for other dimensions.
std::string render(const Figure& fig);

}  // namespace ballcover::svg
