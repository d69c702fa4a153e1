#include "qmoire/chain.hpp"

#include <cmath>

#include "qmoire/errors.hpp"

namespace qmoire {

std::vector<cplx> quadrature_kernel(const TransverseGrid& grid, Wavenumber k, double z) {
    std::size_t n = grid.size();
    double dx = grid.spacing();
    cplx pref = std::sqrt(cplx(k.value / (two_pi * z), 0.0) / cplx(0.0, 1.0)) * dx;
    std::vector<cplx> kern(2 * n - 1);
    for (std::size_t i = 0; i < kern.size(); ++i) {
        double d = (static_cast<double>(i) - static_cast<double>(n - 1)) * dx;
        kern[i] = pref * std::polar(1.0, k.value * d * d / (2.0 * z));
    }
    return kern;
}

std::vector<cplx> transfer_function(const TransverseGrid& grid, Wavenumber k, double z) {
    std::size_t n = grid.size();
    std::vector<cplx> tf(n);
    double scale = 1.0 / static_cast<double>(n);
    for (std::size_t p = 0; p < n; ++p) {
        double q = fft_angular_frequency(p, n, grid.spacing());
        tf[p] = std::polar(scale, -q * q * z / (2.0 * k.value));
    }
    return tf;
}

CompiledChain::CompiledChain(const ElementChain& chain, Wavenumber k, const TransverseGrid& grid,
                             PropagationMethod method, bool check_lenses)
    : grid_(grid), fft_(grid.size()) {
    std::size_t n = grid.size();
    for (const auto& elem : chain) {
        validate(elem);
        if (auto* fs = std::get_if<FreeSpace>(&elem)) {
            if (fs->z == 0.0) continue;
            check_sampling(grid, k, fs->z);
            if (method == PropagationMethod::transfer_function)
                stages_.push_back({Kind::transfer, transfer_function(grid, k, fs->z)});
            else
                stages_.push_back({Kind::quadrature, quadrature_kernel(grid, k, fs->z)});
        } else if (auto* l = std::get_if<ThinLens>(&elem)) {
            if (check_lenses) check_sampling(grid, k, l->f);
            std::vector<cplx> ph(n);
            for (std::size_t i = 0; i < n; ++i) {
                double x = grid.sample(i);
                ph[i] = std::polar(1.0, -k.value * x * x / (2.0 * l->f));
            }
            stages_.push_back({Kind::multiply, std::move(ph)});
        } else {
            const auto& t = std::get<Mask>(elem).t;
            if (!t.grid().same_as(grid)) throw GridMismatch("mask grid differs from simulation grid");
            stages_.push_back({Kind::multiply, t.values()});
        }
    }
}

void CompiledChain::run(const Stage& s, std::vector<cplx>& data, bool transpose) const {
    std::size_t n = grid_.size();
    if (data.size() != n) throw GridMismatch("buffer length differs from simulation grid");
    switch (s.kind) {
        case Kind::multiply:
            for (std::size_t i = 0; i < n; ++i) data[i] *= s.factor[i];
            break;
        case Kind::transfer:
            fft_.forward(data);
            for (std::size_t i = 0; i < n; ++i) data[i] *= s.factor[i];
            fft_.backward(data);
            break;
        case Kind::quadrature: {
            std::vector<cplx> out(n);
            for (std::size_t m = 0; m < n; ++m) {
                cplx acc = 0.0;
                const cplx* kern = s.factor.data() + (n - 1) + m;
                for (std::size_t j = 0; j < n; ++j) {
                    cplx term = data[j] * *(kern - j);
                    if (!transpose && (j == 0 || j == n - 1)) term *= 0.5;
                    acc += term;
                }
                out[m] = (transpose && (m == 0 || m == n - 1)) ? 0.5 * acc : acc;
            }
            data.swap(out);
            break;
        }
    }
}

void CompiledChain::apply(std::vector<cplx>& data) const {
    for (const auto& s : stages_) run(s, data, false);
}

void CompiledChain::apply_transpose(std::vector<cplx>& data) const {
    for (auto it = stages_.rbegin(); it != stages_.rend(); ++it) run(*it, data, true);
}

}  // namespace qmoire
