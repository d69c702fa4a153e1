#include <gtest/gtest.h>

#include <cmath>

#include "qmoire/errors.hpp"
#include "qmoire/transfer.hpp"

using namespace qmoire;

namespace {

const Wavenumber k0 = Wavenumber::from_wavelength(702e-9);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
    return d;
}

double max_abs(const ComplexMatrix& a) {
    double d = 0.0;
    for (auto v : a.data()) d = std::max(d, std::abs(v));
    return d;
}

}  // namespace

TEST(Transfer, EmptyChainIsPlaneWave) {
    auto sim = make_position_grid(256, 8e-3, 0.0);
    auto q = symmetric_frequency_grid(32, 2.0 * two_pi / sim.extent());
    auto det = make_position_grid(16, 16 * 4 * sim.spacing(), 0.0);
    for (auto method : {TransferMethod::columns, TransferMethod::adjoint}) {
        TransferOptions o;
        o.method = method;
        o.simulation_grid = sim;
        auto h = arm_transfer_matrix({}, k0, q, det, o);
        for (std::size_t m = 0; m < det.size(); ++m)
            for (std::size_t j = 0; j < q.size(); ++j)
                EXPECT_NEAR(std::abs(h(m, j) - std::polar(1.0, q.sample(j) * det.sample(m))), 0.0, 1e-10);
    }
}

TEST(Transfer, FourierLensConcentratesColumns) {
    const double f = 0.2;
    auto sim = make_position_grid(4096, 4096 * 5e-6, 0.0);
    auto q = make_frequency_grid(7, 2e4, 0.0);  // 0, +-2e4, ... +-6e4 rad/m
    TransferOptions o;
    o.method = TransferMethod::columns;
    ElementChain chain{free_space(f), thin_lens(f), mask(soft_aperture(sim, 6e-3, 9e-3)), free_space(f)};
    auto h = arm_transfer_matrix(chain, k0, q, sim, o);
    for (std::size_t j = 0; j < q.size(); ++j) {
        std::size_t best = 0;
        for (std::size_t m = 0; m < sim.size(); ++m)
            if (std::abs(h(m, j)) > std::abs(h(best, j))) best = m;
        double expected = q.sample(j) * f / k0.value;
        EXPECT_NEAR(sim.sample(best), expected, 1.5 * sim.spacing()) << j;
    }
}

TEST(Transfer, FourFImagingInvertsSlit) {
    const double f = 0.2;
    auto sim = make_position_grid(4096, 4096 * 5e-6, 0.0);
    const double x0 = 1e-3, a = 100e-6;
    SampledField slit(sim);
    for (std::size_t i = 0; i < sim.size(); ++i)
        if (std::abs(sim.sample(i) - x0) <= 0.5 * a) slit[i] = 1.0;
    auto ap = soft_aperture(sim, 6e-3, 9e-3);
    ElementChain chain{free_space(f), thin_lens(f), mask(ap), free_space(2 * f), thin_lens(f), mask(ap), free_space(f)};
    auto img = apply_chain(slit, chain, k0);
    double centroid = 0.0, total = 0.0;
    for (std::size_t i = 0; i < sim.size(); ++i) {
        double p = std::norm(img[i]);
        centroid += p * sim.sample(i);
        total += p;
    }
    centroid /= total;
    EXPECT_NEAR(centroid, -x0, 2.0 * sim.spacing());
    EXPECT_GT(std::norm(img[sim.nearest_index(-x0)]), 0.5);
    EXPECT_LT(std::norm(img[sim.nearest_index(x0)]), 1e-3);

    // Plane-wave view of the same system: H[m, j] ~ exp(-i q_j x_m).
    auto q = make_frequency_grid(9, 32 * two_pi / sim.extent(), 0.0);
    auto det = make_position_grid(9, 9 * 100 * sim.spacing(), 0.0);
    TransferOptions o;
    o.simulation_grid = sim;
    o.method = TransferMethod::columns;
    auto h = arm_transfer_matrix(chain, k0, q, det, o);
    auto ref = h(det.size() / 2, q.size() / 2);
    for (std::size_t m = 0; m < det.size(); ++m)
        for (std::size_t j = 0; j < q.size(); ++j) {
            auto undone = h(m, j) * std::polar(1.0, q.sample(j) * det.sample(m));
            EXPECT_NEAR(std::abs(undone - ref), 0.0, 1e-3 * std::abs(ref)) << m << " " << j;
        }
}

TEST(Transfer, AdjointEqualsColumns) {
    auto sim = make_position_grid(2048, 2048 * 5e-6, 0.0);
    auto t = ronchi_grating(150e-6, 0.4, 13e-6, sim);
    ElementChain chain{free_space(0.25), thin_lens(0.2), mask(soft_aperture(sim, 3e-3, 4.5e-3)), free_space(0.3),
                       mask(t)};
    double base = two_pi / sim.extent();
    auto det = TransverseGrid(24, 7 * sim.spacing(), 0.3e-3, GridKind::position);
    TransferOptions cols, adj;
    cols.simulation_grid = adj.simulation_grid = sim;
    cols.method = TransferMethod::columns;
    adj.method = TransferMethod::adjoint;
    adj.threads = 3;
    for (const auto& q : {symmetric_frequency_grid(64, 2 * base), make_frequency_grid(50, 1.37 * base, 211.0)}) {
        auto hc = arm_transfer_matrix(chain, k0, q, det, cols);
        auto ha = arm_transfer_matrix(chain, k0, q, det, adj);
        EXPECT_LT(max_abs_diff(hc, ha), 1e-10 * max_abs(hc));
    }
}

TEST(Transfer, AdjointEqualsColumnsWithQuadrature) {
    auto sim = make_position_grid(256, 256 * 10e-6, 0.0);
    ElementChain chain{free_space(0.5), thin_lens(0.4), free_space(0.3), mask(sinusoidal_grating(3e3, 0.8, sim))};
    auto q = symmetric_frequency_grid(16, two_pi / sim.extent());
    TransferOptions cols, adj;
    cols.propagation = adj.propagation = PropagationMethod::direct_quadrature;
    cols.method = TransferMethod::columns;
    auto hc = arm_transfer_matrix(chain, k0, q, sim, cols);
    auto ha = arm_transfer_matrix(chain, k0, q, sim, adj);
    EXPECT_LT(max_abs_diff(hc, ha), 1e-10 * max_abs(hc));
}

TEST(Transfer, Errors) {
    auto sim = make_position_grid(256, 2.56e-3, 0.0);
    auto q = symmetric_frequency_grid(8, 1e3);
    EXPECT_THROW(arm_transfer_matrix({}, k0, sim, sim), InvalidArgument);
    EXPECT_THROW(arm_transfer_matrix({}, k0, q, q), InvalidArgument);
    TransferOptions o;
    o.simulation_grid = sim;
    auto off = TransverseGrid(4, 1e-5, 0.37e-5, GridKind::position);
    EXPECT_THROW(arm_transfer_matrix({}, k0, q, off, o), GridMismatch);
    EXPECT_THROW(arm_transfer_matrix({free_space(1e-4)}, k0, q, sim), SamplingViolation);
    EXPECT_THROW(arm_transfer_matrix({thin_lens(1e-4)}, k0, q, sim), SamplingViolation);
    auto other = make_position_grid(128, 2.56e-3, 0.0);
    EXPECT_THROW(arm_transfer_matrix({mask(uniform_field(other))}, k0, q, sim), GridMismatch);
}

TEST(Transfer, PupilWeight) {
    auto q = symmetric_frequency_grid(100, 1.0);  // half-width 50
    EXPECT_DOUBLE_EQ(pupil_weight(0.5, q, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(pupil_weight(30.0, q, 0.25), 1.0);
    EXPECT_NEAR(pupil_weight(-43.75, q, 0.25), 0.5, 1e-12);
    EXPECT_NEAR(pupil_weight(50.0, q, 0.25), 0.0, 1e-12);
    auto sim = make_position_grid(64, 64e-6, 0.0);
    auto qq = symmetric_frequency_grid(8, two_pi / sim.extent());
    TransferOptions o;
    o.pupil_taper = 0.5;
    auto h = arm_transfer_matrix({}, k0, qq, sim, o);
    for (std::size_t j = 0; j < qq.size(); ++j)
        EXPECT_NEAR(std::abs(h(3, j)), pupil_weight(qq.sample(j), qq, 0.5), 1e-12);
}
