#include "qmoire/field.hpp"

#include <algorithm>
#include <cmath>

#include "qmoire/errors.hpp"

namespace qmoire {

SampledField::SampledField(TransverseGrid grid) : grid_(grid), values_(grid.size()) {}

SampledField::SampledField(TransverseGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw GridMismatch("field length does not match grid");
}

double SampledField::total_power() const {
    double p = 0.0;
    for (const auto& v : values_) p += std::norm(v);
    return p * grid_.spacing();
}

cplx SampledField::interpolate(double x) const {
    double p = grid_.position_of(x);
    double last = static_cast<double>(size() - 1);
    if (!(p >= 0.0) || !(p <= last)) return 0.0;
    auto i = static_cast<std::size_t>(std::floor(p));
    if (i >= size() - 1) return values_.back();
    double t = p - static_cast<double>(i);
    return (1.0 - t) * values_[i] + t * values_[i + 1];
}

SampledField ronchi_grating(double period, double duty, double phase_offset, const TransverseGrid& grid) {
    if (!(period > 0.0)) throw InvalidArgument("grating period must be positive");
    if (!(duty >= 0.0 && duty <= 1.0)) throw InvalidArgument("duty must lie in [0, 1]");
    SampledField t(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double s = (grid.sample(i) - phase_offset) / period;
        double frac = s - std::floor(s);
        t[i] = frac < duty ? 1.0 : 0.0;
    }
    return t;
}

SampledField sinusoidal_grating(double frequency, double contrast, const TransverseGrid& grid) {
    if (!(contrast >= 0.0 && contrast <= 1.0)) throw InvalidArgument("contrast must lie in [0, 1]");
    if (!std::isfinite(frequency)) throw InvalidArgument("grating frequency must be finite");
    SampledField t(grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        t[i] = 0.5 * (1.0 + contrast * std::cos(two_pi * frequency * grid.sample(i)));
    return t;
}

SampledField uniform_field(const TransverseGrid& grid, cplx value) {
    return SampledField(grid, std::vector<cplx>(grid.size(), value));
}

SampledField hard_aperture(SampledField field, double half_width, double center) {
    if (!(half_width > 0.0)) throw InvalidArgument("aperture half-width must be positive");
    for (std::size_t i = 0; i < field.size(); ++i)
        if (std::abs(field.grid().sample(i) - center) > half_width) field[i] = 0.0;
    return field;
}

SampledField soft_aperture(const TransverseGrid& grid, double inner, double outer) {
    if (!(inner >= 0.0) || !(outer > inner)) throw InvalidArgument("soft aperture needs 0 <= inner < outer");
    SampledField t(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double s = std::clamp((std::abs(grid.sample(i)) - inner) / (outer - inner), 0.0, 1.0);
        double c = std::cos(0.5 * std::numbers::pi * s);
        t[i] = c * c;
    }
    return t;
}

double l2_relative_difference(const SampledField& a, const SampledField& b) {
    if (a.size() != b.size()) throw GridMismatch("fields differ in length");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace qmoire
