#include "qmoire/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmoire/errors.hpp"

namespace qmoire {

TransverseGrid::TransverseGrid(std::size_t n_points, double spacing, double center, GridKind kind)
    : n_(n_points), spacing_(spacing), center_(center), kind_(kind) {
    if (n_points < 2) throw InvalidArgument("grid needs at least 2 points");
    if (!(spacing > 0.0) || !std::isfinite(spacing)) throw InvalidArgument("grid spacing must be positive");
    if (!std::isfinite(center)) throw InvalidArgument("grid center must be finite");
}

double TransverseGrid::max_abs() const {
    return std::max(std::abs(first()), std::abs(last()));
}

std::size_t TransverseGrid::nearest_index(double x) const {
    double p = std::round(position_of(x));
    p = std::clamp(p, 0.0, static_cast<double>(n_ - 1));
    return static_cast<std::size_t>(p);
}

bool TransverseGrid::contains(double x) const {
    double p = position_of(x);
    return p >= -0.5 && p <= static_cast<double>(n_) - 0.5;
}

std::size_t TransverseGrid::exact_index(double x, double tol) const {
    double p = position_of(x);
    double r = std::round(p);
    if (std::abs(p - r) > tol || r < 0.0 || r > static_cast<double>(n_ - 1))
        throw GridMismatch("coordinate " + std::to_string(x) + " is not a grid sample");
    return static_cast<std::size_t>(r);
}

bool TransverseGrid::same_as(const TransverseGrid& other, double rel_tol) const {
    return n_ == other.n_ && kind_ == other.kind_ &&
           std::abs(spacing_ - other.spacing_) <= rel_tol * spacing_ &&
           std::abs(center_ - other.center_) <= rel_tol * spacing_;
}

TransverseGrid make_position_grid(std::size_t n, double extent, double center) {
    if (n < 2) throw InvalidArgument("grid needs at least 2 points");
    if (!(extent > 0.0)) throw InvalidArgument("grid extent must be positive");
    return TransverseGrid(n, extent / static_cast<double>(n), center, GridKind::position);
}

TransverseGrid make_frequency_grid(std::size_t n, double spacing, double center) {
    return TransverseGrid(n, spacing, center, GridKind::frequency);
}

TransverseGrid conjugate_grid(const TransverseGrid& grid, double center) {
    return TransverseGrid(grid.size(), two_pi / grid.extent(), center, GridKind::frequency);
}

TransverseGrid symmetric_frequency_grid(std::size_t n, double spacing) {
    if (n % 2 != 0) throw InvalidArgument("symmetric frequency grid needs an even point count");
    return TransverseGrid(n, spacing, 0.5 * spacing, GridKind::frequency);
}

}  // namespace qmoire
