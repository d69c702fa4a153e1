#pragma once

#include <memory>
#include <vector>

#include "qmoire/fft.hpp"
#include "qmoire/optics.hpp"

namespace qmoire {

// Element chain bound to one simulation grid, with per-element factors precomputed.
// apply() is const and safe to call concurrently with distinct buffers.
class CompiledChain {
public:
    CompiledChain(const ElementChain& chain, Wavenumber k, const TransverseGrid& grid,
                  PropagationMethod method, bool check_lenses = true);

    const TransverseGrid& grid() const { return grid_; }

    void apply(std::vector<cplx>& data) const;
    // Transposed operator: elements in reverse order.
    void apply_transpose(std::vector<cplx>& data) const;

private:
    enum class Kind { multiply, transfer, quadrature };
    struct Stage {
        Kind kind;
        std::vector<cplx> factor;  // pointwise factor, transfer function, or kernel by offset
    };

    void run(const Stage& s, std::vector<cplx>& data, bool transpose) const;

    TransverseGrid grid_;
    std::vector<Stage> stages_;
    Fft fft_;
};

// Fresnel kernel sqrt(k/(2 pi i z)) exp(i k d^2 dx^2 / 2z) * dx for offsets d = -(n-1)..(n-1).
std::vector<cplx> quadrature_kernel(const TransverseGrid& grid, Wavenumber k, double z);

std::vector<cplx> transfer_function(const TransverseGrid& grid, Wavenumber k, double z);

}  // namespace qmoire
