#pragma once

#include <variant>

#include "qmoire/array2d.hpp"
#include "qmoire/transfer.hpp"

namespace qmoire {

struct PlaneWave {};

struct GaussianPump {
    double waist;  // field amplitude exp(-x^2 / w^2)
};

// Pump field right after the object mask, W(x) = A1(x) E0(x).
struct MaskedPump {
    SampledField profile;
};

using PumpModel = std::variant<PlaneWave, GaussianPump, MaskedPump>;

// Angular spectrum V(q) = (1/2pi) int W(x) exp(-i q x) dx at the crystal,
// after free propagation over propagation_z.
struct PumpSpectrum {
    PumpModel model;
    double propagation_z;
    SampledField spectrum;
};

PumpSpectrum build_pump_spectrum(const PumpModel& model, double z1, Wavenumber k_p, const TransverseGrid& q_grid);

struct BiphotonState {
    PumpSpectrum pump;
    Wavenumber k_signal;
    Wavenumber k_idler;
    TransverseGrid q_signal;
    TransverseGrid q_idler;

    // Throws GridMismatch unless q_s + q_i always lands on the pump lattice.
    void validate() const;
    bool degenerate(Wavenumber k_pump, double rel_tol = 1e-12) const;
};

struct JointAmplitude {
    TransverseGrid x_signal;
    TransverseGrid x_idler;
    Array2D<cplx> values;  // (signal sample, idler sample)
};

enum class Contraction {
    automatic,   // pump_lines when the pump support is narrow
    direct,      // full double sum over (q_s, q_i)
    pump_lines,  // sum over nonzero pump samples u = q_s + q_i and the pairs on each line
};

struct JointOptions {
    TransferOptions transfer;
    Contraction contraction = Contraction::automatic;
    // Pump samples below this fraction of the peak are dropped on the pump_lines path.
    double support_threshold = 1e-12;
    unsigned threads = 1;
};

JointAmplitude joint_amplitude(const BiphotonState& state, const ElementChain& signal_arm,
                               const ElementChain& idler_arm, const TransverseGrid& x_signal,
                               const TransverseGrid& x_idler, const JointOptions& options = {});

// Contraction of precomputed arm matrices: sum V(q_j + q_l) Hs[m, j] Hi[n, l] dq^2.
JointAmplitude contract(const BiphotonState& state, const ComplexMatrix& h_signal, const ComplexMatrix& h_idler,
                        const TransverseGrid& x_signal, const TransverseGrid& x_idler,
                        const JointOptions& options = {});

enum class Normalization { raw, peak_one };

struct CoincidenceMap {
    TransverseGrid x_signal;
    TransverseGrid x_idler;
    Array2D<double> values;
    Normalization normalization;
};

CoincidenceMap coincidence_map(const JointAmplitude& amp, Normalization normalization = Normalization::peak_one);

enum class SliceAxis {
    fixed_signal,  // profile over x_i at x_s = at
    fixed_idler,   // profile over x_s at x_i = at
    sum,           // profile over x_i along x_s + x_i = at
    difference,    // profile over x_i along x_s - x_i = at
};

RealProfile slice(const CoincidenceMap& map, SliceAxis axis, double at);

// Finite detector pixel: box average of width `pixel` (odd sample count, edges truncated).
RealProfile integrate_pixels(const RealProfile& profile, double pixel);

}  // namespace qmoire
