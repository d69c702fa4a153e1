#include "qmoire/optics.hpp"

#include <cmath>
#include <sstream>

#include "qmoire/chain.hpp"
#include "qmoire/errors.hpp"

namespace qmoire {

Wavenumber::Wavenumber(double k) : value(k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("wavenumber must be positive");
}

Wavenumber Wavenumber::from_wavelength(double lambda) {
    if (!(lambda > 0.0)) throw InvalidArgument("wavelength must be positive");
    return Wavenumber(two_pi / lambda);
}

OpticalElement free_space(double z) {
    OpticalElement e = FreeSpace{z};
    validate(e);
    return e;
}

OpticalElement thin_lens(double f) {
    OpticalElement e = ThinLens{f};
    validate(e);
    return e;
}

OpticalElement mask(SampledField t) {
    OpticalElement e = Mask{std::move(t)};
    validate(e);
    return e;
}

void validate(const OpticalElement& elem) {
    if (auto* fs = std::get_if<FreeSpace>(&elem)) {
        if (!(fs->z >= 0.0) || !std::isfinite(fs->z)) throw InvalidArgument("free-space distance must be >= 0");
    } else if (auto* l = std::get_if<ThinLens>(&elem)) {
        if (l->f == 0.0 || !std::isfinite(l->f)) throw InvalidArgument("lens focal length must be nonzero");
    } else {
        for (const auto& v : std::get<Mask>(elem).t.values())
            if (std::abs(v) > 1.0 + 1e-12) throw InvalidArgument("mask transmission exceeds 1");
    }
}

void check_sampling(const TransverseGrid& grid, Wavenumber k, double z) {
    double ratio = k.value * grid.spacing() * grid.max_abs() / std::abs(z);
    if (ratio > std::numbers::pi * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "sampling violation: k*dx*x_max/z = " << ratio << " exceeds pi (z = " << z
           << " m, dx = " << grid.spacing() << " m)";
        throw SamplingViolation(os.str());
    }
}

SampledField fresnel_propagate(const SampledField& field, double z, Wavenumber k, PropagationMethod method) {
    if (!(z >= 0.0)) throw InvalidArgument("propagation distance must be >= 0");
    if (z == 0.0) return field;
    CompiledChain chain({FreeSpace{z}}, k, field.grid(), method);
    SampledField out = field;
    chain.apply(out.values());
    return out;
}

SampledField apply_element(const SampledField& field, const OpticalElement& elem, Wavenumber k,
                           PropagationMethod method) {
    validate(elem);
    if (auto* fs = std::get_if<FreeSpace>(&elem)) return fresnel_propagate(field, fs->z, k, method);
    if (auto* m = std::get_if<Mask>(&elem)) {
        if (!m->t.grid().same_as(field.grid())) throw GridMismatch("mask grid differs from field grid");
    }
    CompiledChain chain({elem}, k, field.grid(), method, false);
    SampledField out = field;
    chain.apply(out.values());
    return out;
}

SampledField apply_chain(SampledField field, const ElementChain& chain, Wavenumber k, PropagationMethod method) {
    for (const auto& e : chain) validate(e);
    CompiledChain compiled(chain, k, field.grid(), method, false);
    compiled.apply(field.values());
    return field;
}

}  // namespace qmoire
