#pragma once

#include <cstddef>
#include <numbers>

namespace qmoire {

enum class GridKind { position, frequency };

// Uniform 1D sampling: sample(i) = center + (i - n/2) * spacing, n/2 rounded down.
class TransverseGrid {
public:
    TransverseGrid(std::size_t n_points, double spacing, double center, GridKind kind);

    std::size_t size() const { return n_; }
    double spacing() const { return spacing_; }
    double center() const { return center_; }
    GridKind kind() const { return kind_; }
    double extent() const { return spacing_ * static_cast<double>(n_); }

    double sample(std::size_t i) const {
        return center_ + (static_cast<double>(i) - static_cast<double>(n_ / 2)) * spacing_;
    }
    double first() const { return sample(0); }
    double last() const { return sample(n_ - 1); }
    double max_abs() const;

    // Fractional index of coordinate x.
    double position_of(double x) const {
        return (x - center_) / spacing_ + static_cast<double>(n_ / 2);
    }
    std::size_t nearest_index(double x) const;
    bool contains(double x) const;

    // Index whose sample equals x to within tol * spacing; throws GridMismatch otherwise.
    std::size_t exact_index(double x, double tol = 1e-6) const;

    bool same_as(const TransverseGrid& other, double rel_tol = 1e-9) const;

private:
    std::size_t n_;
    double spacing_;
    double center_;
    GridKind kind_;
};

TransverseGrid make_position_grid(std::size_t n, double extent, double center = 0.0);

TransverseGrid make_frequency_grid(std::size_t n, double spacing, double center = 0.0);

// Frequency grid with the same point count and spacing 2*pi/(n*dx).
TransverseGrid conjugate_grid(const TransverseGrid& grid, double center = 0.0);

// Cell-centered frequency grid: samples at (i - n/2 + 1/2) * dq, symmetric about zero.
TransverseGrid symmetric_frequency_grid(std::size_t n, double spacing);

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace qmoire
