#pragma once

#include "qmoire/field.hpp"
#include "qmoire/optics.hpp"

namespace qmoire {

// Pump-idler layout: object mask A1 in the pump at z1 before the crystal,
// crystal -z0- lens f -z2- detectors, A2 in front of the idler detector.
class PumpIdlerGeometry {
public:
    // Solves the thin-lens law for z2 with object distance O = z0 + z1.
    PumpIdlerGeometry(double z0, double z1, double f);

    double z0() const { return z0_; }
    double z1() const { return z1_; }
    double z2() const { return z2_; }
    double f() const { return f_; }
    double object_distance() const { return z0_ + z1_; }
    double image_distance() const { return z2_; }
    // m = I / O
    double magnification() const { return z2_ / (z0_ + z1_); }
    double thin_lens_residual() const;

    double alpha(Wavenumber k) const { return k.value / (2.0 * f_) - k.value / (2.0 * z2_); }
    double b_constant(Wavenumber k) const { return 1.0 / (4.0 * alpha(k)) - z1_ / k.value; }

private:
    double z0_, z1_, z2_, f_;
};

// Idler-signal layout, legs tied to f.
// idler:  crystal -f- lens -2f- A1 -2f- lens -f- detector
// signal: crystal -f- A2 -2f- lens -2f- detector
class IdlerSignalGeometry {
public:
    explicit IdlerSignalGeometry(double f);

    double f() const { return f_; }
    double z1() const { return f_; }
    double z2() const { return 2.0 * f_; }
    double z3() const { return 2.0 * f_; }
    double z4() const { return f_; }
    double z5() const { return f_; }
    double z6() const { return 2.0 * f_; }
    double z7() const { return 2.0 * f_; }

private:
    double f_;
};

// |A2(x_i)|^2 |A1(-(x_s + x_i) / (2m))|^2, m = I/O. Masks read by linear interpolation, zero outside.
double coincidence_pump_idler(const SampledField& a1, const SampledField& a2, const PumpIdlerGeometry& geom,
                              double x_s, double x_i);

// |A2(-x_s)|^2 |A1(x_s)|^2; x_i does not enter.
double coincidence_idler_signal(const SampledField& a1, const SampledField& a2, double x_s, double x_i);

enum class ScanAxis { signal, idler, mean };

// Period of the A1 fringe in a coincidence scan: 2 d m along one detector with the
// other fixed, d m along the mean coordinate (x_s + x_i)/2.
double conditional_image_period(double a1_period, const PumpIdlerGeometry& geom, ScanAxis scan);

ElementChain pump_idler_signal_arm(const PumpIdlerGeometry& geom, const SampledField* lens_aperture = nullptr);
ElementChain pump_idler_idler_arm(const PumpIdlerGeometry& geom, const SampledField& a2,
                                  const SampledField* lens_aperture = nullptr);

ElementChain idler_signal_idler_arm(const IdlerSignalGeometry& geom, const SampledField& a1);
ElementChain idler_signal_signal_arm(const IdlerSignalGeometry& geom, const SampledField& a2);

}  // namespace qmoire
