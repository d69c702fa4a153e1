#include "qmoire/closed_form.hpp"

#include <cmath>

#include "qmoire/errors.hpp"

namespace qmoire {

PumpIdlerGeometry::PumpIdlerGeometry(double z0, double z1, double f) : z0_(z0), z1_(z1), f_(f) {
    if (!(z0 > 0.0) || !(z1 >= 0.0)) throw InvalidArgument("z0 must be positive and z1 non-negative");
    if (!(f > 0.0)) throw InvalidArgument("focal length must be positive");
    double o = z0 + z1;
    if (!(o > f)) throw InvalidArgument("object distance z0 + z1 must exceed f for a real image");
    z2_ = 1.0 / (1.0 / f - 1.0 / o);
}

double PumpIdlerGeometry::thin_lens_residual() const {
    return std::abs(1.0 / f_ - 1.0 / (z0_ + z1_) - 1.0 / z2_);
}

IdlerSignalGeometry::IdlerSignalGeometry(double f) : f_(f) {
    if (!(f > 0.0)) throw InvalidArgument("focal length must be positive");
}

double coincidence_pump_idler(const SampledField& a1, const SampledField& a2, const PumpIdlerGeometry& geom,
                              double x_s, double x_i) {
    double arg = -(x_s + x_i) / (2.0 * geom.magnification());
    return std::norm(a2.interpolate(x_i)) * std::norm(a1.interpolate(arg));
}

double coincidence_idler_signal(const SampledField& a1, const SampledField& a2, double x_s, double /*x_i*/) {
    return std::norm(a2.interpolate(-x_s)) * std::norm(a1.interpolate(x_s));
}

double conditional_image_period(double a1_period, const PumpIdlerGeometry& geom, ScanAxis scan) {
    if (!(a1_period > 0.0)) throw InvalidArgument("period must be positive");
    double m = geom.magnification();
    return scan == ScanAxis::mean ? a1_period * m : 2.0 * a1_period * m;
}

ElementChain pump_idler_signal_arm(const PumpIdlerGeometry& geom, const SampledField* lens_aperture) {
    ElementChain c{free_space(geom.z0()), thin_lens(geom.f())};
    if (lens_aperture) c.push_back(mask(*lens_aperture));
    c.push_back(free_space(geom.z2()));
    return c;
}

ElementChain pump_idler_idler_arm(const PumpIdlerGeometry& geom, const SampledField& a2,
                                  const SampledField* lens_aperture) {
    ElementChain c = pump_idler_signal_arm(geom, lens_aperture);
    c.push_back(mask(a2));
    return c;
}

ElementChain idler_signal_idler_arm(const IdlerSignalGeometry& g, const SampledField& a1) {
    return {free_space(g.z4()), thin_lens(g.f()), free_space(g.z3()), mask(a1),
            free_space(g.z2()), thin_lens(g.f()), free_space(g.z1())};
}

ElementChain idler_signal_signal_arm(const IdlerSignalGeometry& g, const SampledField& a2) {
    return {free_space(g.z5()), mask(a2), free_space(g.z6()), thin_lens(g.f()), free_space(g.z7())};
}

}  // namespace qmoire
