#pragma once

#include <complex>
#include <vector>

#include "qmoire/grid.hpp"

namespace qmoire {

using cplx = std::complex<double>;

class SampledField {
public:
    explicit SampledField(TransverseGrid grid);
    SampledField(TransverseGrid grid, std::vector<cplx> values);

    const TransverseGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    cplx operator[](std::size_t i) const { return values_[i]; }
    cplx& operator[](std::size_t i) { return values_[i]; }

    double total_power() const;

    // Linear interpolation; zero outside [first, last].
    cplx interpolate(double x) const;

private:
    TransverseGrid grid_;
    std::vector<cplx> values_;
};

// Real-valued 1D profile (coincidence cuts, scans).
struct RealProfile {
    TransverseGrid grid;
    std::vector<double> values;
};

SampledField ronchi_grating(double period, double duty, double phase_offset, const TransverseGrid& grid);

SampledField sinusoidal_grating(double frequency, double contrast, const TransverseGrid& grid);

SampledField uniform_field(const TransverseGrid& grid, cplx value = 1.0);

// Zero outside |x - center| > half_width.
SampledField hard_aperture(SampledField field, double half_width, double center = 0.0);

// Unit inside |x| <= inner, cos^2 roll-off to zero at |x| = outer.
SampledField soft_aperture(const TransverseGrid& grid, double inner, double outer);

double l2_relative_difference(const SampledField& a, const SampledField& b);

}  // namespace qmoire
