#include "qmoire/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmoire/chain.hpp"
#include "qmoire/errors.hpp"
#include "qmoire/parallel.hpp"

namespace qmoire {

namespace {

// FFT bin index of q on the simulation grid's frequency lattice, if q lies on it.
std::optional<std::size_t> lattice_bin(double q, const TransverseGrid& sim) {
    double p = q * sim.extent() / two_pi;
    double r = std::round(p);
    if (std::abs(p - r) > 1e-6) return std::nullopt;
    auto n = static_cast<long long>(sim.size());
    long long b = static_cast<long long>(r) % n;
    if (b < 0) b += n;
    return static_cast<std::size_t>(b);
}

}  // namespace

double pupil_weight(double q, const TransverseGrid& q_grid, double taper);

namespace {

void apply_pupil(ComplexMatrix& h, const TransverseGrid& q_grid, double taper) {
    if (taper <= 0.0) return;
    for (std::size_t j = 0; j < q_grid.size(); ++j) {
        double w = pupil_weight(q_grid.sample(j), q_grid, taper);
        for (std::size_t m = 0; m < h.rows(); ++m) h(m, j) *= w;
    }
}

}  // namespace

double pupil_weight(double q, const TransverseGrid& q_grid, double taper) {
    if (taper <= 0.0) return 1.0;
    double half = 0.5 * q_grid.extent();
    double t = std::clamp((std::abs(q) - (1.0 - taper) * half) / (taper * half), 0.0, 1.0);
    double c = std::cos(0.5 * std::numbers::pi * t);
    return c * c;
}

ComplexMatrix arm_transfer_matrix(const ElementChain& chain, Wavenumber k, const TransverseGrid& q_grid,
                                  const TransverseGrid& x_grid, const TransferOptions& options) {
    if (q_grid.kind() != GridKind::frequency) throw InvalidArgument("q grid must be a frequency grid");
    if (x_grid.kind() != GridKind::position) throw InvalidArgument("detector grid must be a position grid");
    const TransverseGrid sim = options.simulation_grid.value_or(x_grid);
    if (sim.kind() != GridKind::position) throw InvalidArgument("simulation grid must be a position grid");

    std::vector<std::size_t> det(x_grid.size());
    for (std::size_t m = 0; m < x_grid.size(); ++m) det[m] = sim.exact_index(x_grid.sample(m));

    if (!(options.pupil_taper >= 0.0 && options.pupil_taper <= 1.0))
        throw InvalidArgument("pupil taper must lie in [0, 1]");
    CompiledChain compiled(chain, k, sim, options.propagation);
    std::size_t nq = q_grid.size(), nx = sim.size();
    ComplexMatrix h(x_grid.size(), nq);

    if (options.method == TransferMethod::columns) {
        parallel_for(nq, options.threads, [&](std::size_t b, std::size_t e) {
            std::vector<cplx> buf(nx);
            for (std::size_t j = b; j < e; ++j) {
                double q = q_grid.sample(j);
                for (std::size_t i = 0; i < nx; ++i) buf[i] = std::polar(1.0, q * sim.sample(i));
                compiled.apply(buf);
                for (std::size_t m = 0; m < det.size(); ++m) h(m, j) = buf[det[m]];
            }
        });
        apply_pupil(h, q_grid, options.pupil_taper);
        return h;
    }

    // H[m, j] = sum_x (P^T delta_m)(x) exp(i q_j x).
    std::vector<std::optional<std::size_t>> bins(nq);
    bool any_on_lattice = false;
    for (std::size_t j = 0; j < nq; ++j) {
        bins[j] = lattice_bin(q_grid.sample(j), sim);
        any_on_lattice = any_on_lattice || bins[j].has_value();
    }
    // exp(i q x_n) = exp(i q x_0) exp(2 pi i p n / N) on the lattice.
    std::vector<cplx> origin_phase(nq);
    for (std::size_t j = 0; j < nq; ++j) origin_phase[j] = std::polar(1.0, q_grid.sample(j) * sim.sample(0));
    Fft fft(nx);

    parallel_for(det.size(), options.threads, [&](std::size_t b, std::size_t e) {
        std::vector<cplx> buf(nx), spec;
        for (std::size_t m = b; m < e; ++m) {
            std::fill(buf.begin(), buf.end(), cplx(0.0));
            buf[det[m]] = 1.0;
            compiled.apply_transpose(buf);
            if (any_on_lattice) {
                spec = buf;
                fft.backward(spec);
            }
            for (std::size_t j = 0; j < nq; ++j) {
                if (bins[j]) {
                    h(m, j) = origin_phase[j] * spec[*bins[j]];
                } else {
                    double q = q_grid.sample(j);
                    cplx acc = 0.0;
                    for (std::size_t i = 0; i < nx; ++i) acc += buf[i] * std::polar(1.0, q * sim.sample(i));
                    h(m, j) = acc;
                }
            }
        }
    });
    apply_pupil(h, q_grid, options.pupil_taper);
    return h;
}

}  // namespace qmoire
