#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qmoire/biphoton.hpp"
#include "qmoire/closed_form.hpp"
#include "qmoire/errors.hpp"

using namespace qmoire;

namespace {

const Wavenumber k = Wavenumber::from_wavelength(702e-9);
const Wavenumber kp = Wavenumber::from_wavelength(351e-9);

ComplexMatrix random_matrix(std::size_t r, std::size_t c, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    ComplexMatrix m(r, c);
    for (auto& v : m.data()) v = {nd(rng), nd(rng)};
    return m;
}

double rel_diff(const Array2D<cplx>& a, const Array2D<cplx>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        num = std::max(num, std::abs(a.data()[i] - b.data()[i]));
        den = std::max(den, std::abs(b.data()[i]));
    }
    return num / den;
}

BiphotonState state_with(const PumpSpectrum& pump, const TransverseGrid& q) {
    return BiphotonState{pump, k, k, q, q};
}

}  // namespace

TEST(PumpSpectrum, PlaneWaveIsUnitWeightSpike) {
    auto qp = make_frequency_grid(64, 250.0, 0.0);
    auto s = build_pump_spectrum(PlaneWave{}, 0.3, kp, qp);
    for (std::size_t j = 0; j < qp.size(); ++j) {
        if (j == qp.exact_index(0.0))
            EXPECT_DOUBLE_EQ(s.spectrum[j].real(), 1.0 / 250.0);
        else
            EXPECT_EQ(s.spectrum[j], cplx(0.0));
    }
    auto shifted = symmetric_frequency_grid(64, 250.0);
    EXPECT_THROW(build_pump_spectrum(PlaneWave{}, 0.0, kp, shifted), GridMismatch);
}

TEST(PumpSpectrum, GaussianIsRealPositiveGaussian) {
    const double w = 0.8e-3;
    auto qp = make_frequency_grid(101, 300.0, 0.0);
    auto s = build_pump_spectrum(GaussianPump{w}, 0.0, kp, qp);
    double v0 = s.spectrum[qp.exact_index(0.0)].real();
    for (std::size_t j = 0; j < qp.size(); ++j) {
        double q = qp.sample(j);
        EXPECT_GT(s.spectrum[j].real(), 0.0);
        EXPECT_EQ(s.spectrum[j].imag(), 0.0);
        EXPECT_NEAR(s.spectrum[j].real() / v0, std::exp(-q * q * w * w / 4.0), 1e-12);
    }
}

TEST(PumpSpectrum, MaskedSinusoidHasThreeLines) {
    const double nu = 8e3, c = 0.6;
    auto xg = make_position_grid(512, 10.5e-3, 0.0);
    auto qp = make_frequency_grid(512, two_pi / xg.extent(), 0.0);
    auto s = build_pump_spectrum(MaskedPump{sinusoidal_grating(nu, c, xg)}, 0.0, kp, qp);
    std::size_t i0 = qp.exact_index(0.0), ip = qp.exact_index(two_pi * nu), im = qp.exact_index(-two_pi * nu);
    double center = std::abs(s.spectrum[i0]);
    EXPECT_NEAR(std::abs(s.spectrum[ip]) / center, c / 2, 1e-12);
    EXPECT_NEAR(std::abs(s.spectrum[im]) / center, c / 2, 1e-12);
    for (std::size_t j = 0; j < qp.size(); ++j)
        if (j != i0 && j != ip && j != im) EXPECT_LT(std::abs(s.spectrum[j]), 1e-12 * center);
}

TEST(PumpSpectrum, UniformMaskReproducesPlaneWaveWeight) {
    auto xg = make_position_grid(256, 5e-3, 0.0);
    auto qp = make_frequency_grid(256, two_pi / xg.extent(), 0.0);
    auto masked = build_pump_spectrum(MaskedPump{uniform_field(xg)}, 0.0, kp, qp);
    auto plane = build_pump_spectrum(PlaneWave{}, 0.0, kp, qp);
    for (std::size_t j = 0; j < qp.size(); ++j) EXPECT_NEAR(std::abs(masked.spectrum[j] - plane.spectrum[j]), 0.0, 1e-9);
}

TEST(PumpSpectrum, PropagationPhase) {
    const double z1 = 0.35;
    auto xg = make_position_grid(128, 4e-3, 0.0);
    auto qp = make_frequency_grid(128, two_pi / xg.extent(), 0.0);
    auto w = ronchi_grating(400e-6, 0.5, 0.0, xg);
    auto a = build_pump_spectrum(MaskedPump{w}, 0.0, kp, qp);
    auto b = build_pump_spectrum(MaskedPump{w}, z1, kp, qp);
    EXPECT_DOUBLE_EQ(b.propagation_z, z1);
    for (std::size_t j = 0; j < qp.size(); ++j) {
        double q = qp.sample(j);
        auto expect = a.spectrum[j] * std::polar(1.0, -q * q * z1 / (2.0 * kp.value));
        EXPECT_NEAR(std::abs(b.spectrum[j] - expect), 0.0, 1e-15);
    }
}

TEST(PumpSpectrum, NonConjugateProfileRejected) {
    auto xg = make_position_grid(128, 4e-3, 0.0);
    auto qp = make_frequency_grid(128, 1.1 * two_pi / xg.extent(), 0.0);
    EXPECT_THROW(build_pump_spectrum(MaskedPump{uniform_field(xg)}, 0.0, kp, qp), GridMismatch);
}

TEST(BiphotonState, ValidationAndDegeneracy) {
    auto qp = make_frequency_grid(64, 100.0, 0.0);
    auto pump = build_pump_spectrum(PlaneWave{}, 0.0, kp, qp);
    BiphotonState ok{pump, k, k, symmetric_frequency_grid(32, 100.0), symmetric_frequency_grid(32, 100.0)};
    EXPECT_NO_THROW(ok.validate());
    EXPECT_TRUE(ok.degenerate(kp));
    BiphotonState bad_spacing{pump, k, k, symmetric_frequency_grid(32, 90.0), symmetric_frequency_grid(32, 90.0)};
    EXPECT_THROW(bad_spacing.validate(), GridMismatch);
    BiphotonState bad_offset{pump, k, k, symmetric_frequency_grid(32, 100.0), make_frequency_grid(32, 100.0, 0.0)};
    EXPECT_THROW(bad_offset.validate(), GridMismatch);
    BiphotonState nondeg{pump, Wavenumber(1.1 * k.value), k, ok.q_signal, ok.q_idler};
    EXPECT_FALSE(nondeg.degenerate(kp));
}

TEST(Contraction, PumpLinesMatchDirectSum) {
    auto q = symmetric_frequency_grid(96, 400.0);
    auto qp = make_frequency_grid(192, 400.0, 0.0);
    auto xg = make_position_grid(192, two_pi / 400.0, 0.0);
    auto xs = make_position_grid(7, 7e-4, 0.0);
    auto xi = make_position_grid(9, 9e-4, 0.0);
    auto hs = random_matrix(7, 96, 1), hi = random_matrix(9, 96, 2);
    for (const auto& w : {sinusoidal_grating(two_pi * 10 * 400.0 / two_pi, 0.9, xg), uniform_field(xg)}) {
        auto st = state_with(build_pump_spectrum(MaskedPump{w}, 0.2, kp, qp), q);
        JointOptions fast, slow;
        fast.contraction = Contraction::pump_lines;
        slow.contraction = Contraction::direct;
        fast.threads = 2;
        auto a = contract(st, hs, hi, xs, xi, fast);
        auto b = contract(st, hs, hi, xs, xi, slow);
        EXPECT_LT(rel_diff(a.values, b.values), 1e-6);
    }
    // Literal four-index sum on a tiny case.
    auto st = state_with(build_pump_spectrum(GaussianPump{3e-3}, 0.1, kp, qp), q);
    auto a = contract(st, hs, hi, xs, xi);
    double dq = 400.0;
    for (std::size_t m = 0; m < 7; m += 3)
        for (std::size_t n = 0; n < 9; n += 4) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < q.size(); ++j)
                for (std::size_t l = 0; l < q.size(); ++l) {
                    double u = q.sample(j) + q.sample(l);
                    acc += st.pump.spectrum[qp.exact_index(u)] * hs(m, j) * hi(n, l);
                }
            acc *= dq * dq;
            EXPECT_NEAR(std::abs(a.values(m, n) - acc), 0.0, 1e-9 * std::abs(acc));
        }
}

TEST(Contraction, LinearInPump) {
    auto q = symmetric_frequency_grid(40, 500.0);
    auto qp = make_frequency_grid(80, 500.0, 0.0);
    auto xg = make_position_grid(80, two_pi / 500.0, 0.0);
    auto xs = make_position_grid(5, 5e-4, 0.0);
    auto hs = random_matrix(5, 40, 3), hi = random_matrix(5, 40, 4);
    auto pa = build_pump_spectrum(MaskedPump{ronchi_grating(2e-3, 0.5, 0.0, xg)}, 0.0, kp, qp);
    auto pb = build_pump_spectrum(GaussianPump{2e-3}, 0.0, kp, qp);
    auto pc = pa;
    cplx ca(0.7, 0.2), cb(-1.1, 0.4);
    for (std::size_t j = 0; j < qp.size(); ++j) pc.spectrum[j] = ca * pa.spectrum[j] + cb * pb.spectrum[j];
    auto a = contract(state_with(pa, q), hs, hi, xs, xs);
    auto b = contract(state_with(pb, q), hs, hi, xs, xs);
    auto c = contract(state_with(pc, q), hs, hi, xs, xs);
    Array2D<cplx> expect(5, 5);
    for (std::size_t i = 0; i < 25; ++i) expect.data()[i] = ca * a.values.data()[i] + cb * b.values.data()[i];
    EXPECT_LT(rel_diff(c.values, expect), 1e-12);
}

TEST(JointAmplitude, IdenticalArmsAreSymmetric) {
    auto sim = make_position_grid(1024, 1024 * 10e-6, 0.0);
    auto q = symmetric_frequency_grid(64, 2 * two_pi / sim.extent());
    auto qp = make_frequency_grid(128, q.spacing(), 0.0);
    auto st = state_with(build_pump_spectrum(GaussianPump{1e-3}, 0.1, kp, qp), q);
    auto det = make_position_grid(12, 12 * 20 * sim.spacing(), 0.0);
    ElementChain arm{free_space(0.3), thin_lens(0.25), mask(soft_aperture(sim, 3e-3, 4.5e-3)), free_space(0.2)};
    JointOptions o;
    o.transfer.simulation_grid = sim;
    auto amp = joint_amplitude(st, arm, arm, det, det, o);
    double scale = 0.0;
    for (auto v : amp.values.data()) scale = std::max(scale, std::abs(v));
    for (std::size_t m = 0; m < det.size(); ++m)
        for (std::size_t n = 0; n < det.size(); ++n)
            EXPECT_NEAR(std::abs(amp.values(m, n) - amp.values(n, m)), 0.0, 1e-9 * scale);
}

TEST(JointAmplitude, EmptyArmsPlaneWaveDependsOnDifferenceOnly) {
    auto q = symmetric_frequency_grid(128, 500.0);
    auto qp = make_frequency_grid(256, 500.0, 0.0);
    auto st = state_with(build_pump_spectrum(PlaneWave{}, 0.0, kp, qp), q);
    auto det = make_position_grid(32, 32 * 25e-6, 0.0);
    auto amp = joint_amplitude(st, {}, {}, det, det);
    for (std::size_t m = 0; m + 1 < det.size(); ++m)
        for (std::size_t n = 0; n + 1 < det.size(); ++n)
            EXPECT_NEAR(std::abs(amp.values(m + 1, n + 1) - amp.values(m, n)), 0.0, 1e-9 * std::abs(amp.values(0, 0)));
}

TEST(JointAmplitude, EmptyArmsGaussianPumpRidge) {
    const double w = 2e-3;
    auto q = symmetric_frequency_grid(512, 250.0);
    auto qp = make_frequency_grid(1024, 250.0, 0.0);
    auto st = state_with(build_pump_spectrum(GaussianPump{w}, 0.0, kp, qp), q);
    auto det = make_position_grid(64, 64 * 50e-6, 0.0);
    auto amp = joint_amplitude(st, {}, {}, det, det);
    double a0 = std::abs(amp.values(det.exact_index(0.0), det.exact_index(0.0)));
    for (std::size_t m = 0; m < det.size(); ++m) {
        double x = det.sample(m);
        EXPECT_NEAR(std::abs(amp.values(m, m)) / a0, std::exp(-x * x / (w * w)), 0.02) << x;
    }
    // Off the diagonal by many resolution cells the ridge is gone.
    for (std::size_t m = 0; m + 20 < det.size(); ++m) EXPECT_LT(std::abs(amp.values(m, m + 20)), 0.05 * a0);
}

TEST(CoincidenceMap, Examples) {
    auto g = make_position_grid(4, 4e-3, 0.0);
    JointAmplitude ones{g, g, Array2D<cplx>(4, 4, cplx(1.0))};
    auto m = coincidence_map(ones);
    for (auto v : m.values.data()) EXPECT_DOUBLE_EQ(v, 1.0);

    JointAmplitude phases{g, g, Array2D<cplx>(4, 4)};
    for (std::size_t i = 0; i < 16; ++i) phases.values.data()[i] = std::polar(2.0, 0.7 * i);
    auto raw = coincidence_map(phases, Normalization::raw);
    for (auto v : raw.values.data()) EXPECT_NEAR(v, 4.0, 1e-12);
    auto conj = phases;
    for (auto& v : conj.values.data()) v = std::conj(v);
    auto rc = coincidence_map(conj, Normalization::raw);
    EXPECT_EQ(rc.values.data(), raw.values.data());

    JointAmplitude zero{g, g, Array2D<cplx>(4, 4)};
    EXPECT_THROW(coincidence_map(zero), DegenerateScenario);
    EXPECT_NO_THROW(coincidence_map(zero, Normalization::raw));
}

TEST(Slice, ConstantAndSeparable) {
    auto gs = make_position_grid(8, 8e-3, 0.0);
    auto gi = make_position_grid(6, 6e-3, 0.0);
    CoincidenceMap c{gs, gi, Array2D<double>(8, 6, 0.25), Normalization::raw};
    for (auto axis : {SliceAxis::fixed_signal, SliceAxis::fixed_idler, SliceAxis::sum, SliceAxis::difference}) {
        auto p = slice(c, axis, 0.0);
        for (auto v : p.values) EXPECT_DOUBLE_EQ(v, 0.25);
    }
    CoincidenceMap s{gs, gi, Array2D<double>(8, 6), Normalization::raw};
    for (std::size_t m = 0; m < 8; ++m)
        for (std::size_t n = 0; n < 6; ++n) s.values(m, n) = (1.0 + m) * (2.0 + n * n);
    auto p = slice(s, SliceAxis::fixed_idler, 1e-3);
    for (std::size_t m = 0; m < 8; ++m) EXPECT_DOUBLE_EQ(p.values[m] / p.values[0], 1.0 + m);
    EXPECT_THROW(slice(s, SliceAxis::fixed_signal, 10e-3), OutOfRange);
    EXPECT_THROW(slice(s, SliceAxis::sum, 50e-3), OutOfRange);
}

TEST(Slice, SumAxisOfProductFormFollowsIdlerMask) {
    auto g = make_position_grid(200, 4e-3, 0.0);
    auto wide = make_position_grid(800, 16e-3, 0.0);
    auto a1 = ronchi_grating(250e-6, 0.5, 0.0, wide);
    auto a2 = sinusoidal_grating(3e3, 0.8, wide);
    PumpIdlerGeometry geom(0.6, 0.4, 0.5);
    CoincidenceMap c{g, g, Array2D<double>(200, 200), Normalization::raw};
    for (std::size_t m = 0; m < 200; ++m)
        for (std::size_t n = 0; n < 200; ++n)
            c.values(m, n) = coincidence_pump_idler(a1, a2, geom, g.sample(m), g.sample(n));
    const double x0 = 60e-6;  // inside an open bar of A1
    auto p = slice(c, SliceAxis::sum, 2 * x0);
    double ratio = p.values[p.grid.size() / 2] / std::norm(a2.interpolate(p.grid.sample(p.grid.size() / 2)));
    for (std::size_t k = 0; k < p.grid.size(); ++k) {
        double expect = ratio * std::norm(a2.interpolate(p.grid.sample(k)));
        EXPECT_NEAR(p.values[k], expect, 1e-12);
    }
}

TEST(Slice, PixelIntegration) {
    auto g = make_position_grid(5, 5e-3, 0.0);
    RealProfile p{g, {0.0, 3.0, 0.0, 3.0, 0.0}};
    auto out = integrate_pixels(p, 3e-3);
    EXPECT_DOUBLE_EQ(out.values[2], 2.0);
    EXPECT_DOUBLE_EQ(out.values[0], 1.5);
    EXPECT_THROW(integrate_pixels(p, 0.0), InvalidArgument);
}
