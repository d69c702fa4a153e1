#pragma once

#include <optional>

#include "qmoire/array2d.hpp"
#include "qmoire/optics.hpp"

namespace qmoire {

using ComplexMatrix = Array2D<cplx>;

enum class TransferMethod {
    columns,  // push each plane wave through the chain
    adjoint,  // push each detector delta through the transposed chain, project onto plane waves
};

struct TransferOptions {
    PropagationMethod propagation = PropagationMethod::transfer_function;
    TransferMethod method = TransferMethod::adjoint;
    // Grid the chain is simulated on; defaults to the detector grid. Detector
    // samples must coincide with simulation samples.
    std::optional<TransverseGrid> simulation_grid;
    unsigned threads = 1;
    // Soft angular acceptance: the outer fraction of the q half-width is rolled
    // off with cos^2. 0 keeps the hard q-grid edge.
    double pupil_taper = 0.0;
};

// Weight of q under the pupil taper for a grid of half-width n * dq / 2.
double pupil_weight(double q, const TransverseGrid& q_grid, double taper);

// H[m, j]: amplitude at detector x_m for input plane wave exp(i q_j x) at the crystal plane.
ComplexMatrix arm_transfer_matrix(const ElementChain& chain, Wavenumber k, const TransverseGrid& q_grid,
                                  const TransverseGrid& x_grid, const TransferOptions& options = {});

}  // namespace qmoire
