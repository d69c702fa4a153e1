#pragma once

#include <variant>
#include <vector>

#include "qmoire/field.hpp"

namespace qmoire {

struct Wavenumber {
    double value;

    explicit Wavenumber(double k);
    static Wavenumber from_wavelength(double lambda);
    double wavelength() const { return two_pi / value; }
};

struct FreeSpace {
    double z;
};

struct ThinLens {
    double f;
};

struct Mask {
    SampledField t;
};

using OpticalElement = std::variant<FreeSpace, ThinLens, Mask>;
using ElementChain = std::vector<OpticalElement>;

// Validating constructors.
OpticalElement free_space(double z);
OpticalElement thin_lens(double f);
OpticalElement mask(SampledField t);

void validate(const OpticalElement& elem);

enum class PropagationMethod {
    transfer_function,  // FFT with exp(-i q^2 z / 2k)
    direct_quadrature,  // trapezoid sum of the Fresnel kernel
};

// Throws SamplingViolation unless k * dx * max|x| / z <= pi.
void check_sampling(const TransverseGrid& grid, Wavenumber k, double z);

SampledField fresnel_propagate(const SampledField& field, double z, Wavenumber k,
                               PropagationMethod method = PropagationMethod::transfer_function);

SampledField apply_element(const SampledField& field, const OpticalElement& elem, Wavenumber k,
                           PropagationMethod method = PropagationMethod::transfer_function);

SampledField apply_chain(SampledField field, const ElementChain& chain, Wavenumber k,
                         PropagationMethod method = PropagationMethod::transfer_function);

}  // namespace qmoire
