#include <benchmark/benchmark.h>

#include <cmath>

#include "qmoire/biphoton.hpp"
#include "qmoire/closed_form.hpp"
#include "qmoire/transfer.hpp"

using namespace qmoire;

namespace {

const Wavenumber k = Wavenumber::from_wavelength(702e-9);
const Wavenumber kp = Wavenumber::from_wavelength(351e-9);

SampledField gaussian(const TransverseGrid& g, double w) {
    SampledField f{g, std::vector<cplx>(g.size())};
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::exp(-std::pow(g.sample(i) / w, 2));
    return f;
}

}  // namespace

static void BM_PropagateFft(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = make_position_grid(n, n * 1e-6, 0.0);
    auto beam = gaussian(g, 100e-6);
    for (auto _ : state) benchmark::DoNotOptimize(fresnel_propagate(beam, 0.2, k));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PropagateFft)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_PropagateQuadrature(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    auto g = make_position_grid(n, n * 1e-6, 0.0);
    auto beam = gaussian(g, 100e-6);
    for (auto _ : state)
        benchmark::DoNotOptimize(fresnel_propagate(beam, 0.2, k, PropagationMethod::direct_quadrature));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PropagateQuadrature)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

static void BM_TransferMatrix(benchmark::State& state) {
    PumpIdlerGeometry geom(0.6, 0.4, 0.5);
    auto sim = make_position_grid(10752, 42e-3, 0.0);
    auto aperture = soft_aperture(sim, 12e-3, 19e-3);
    auto q = symmetric_frequency_grid(256, two_pi / 10.5e-3);
    auto det = make_position_grid(128, 4e-3, 0.0);
    auto chain = pump_idler_signal_arm(geom, &aperture);
    TransferOptions o;
    o.simulation_grid = sim;
    o.method = state.range(0) == 0 ? TransferMethod::adjoint : TransferMethod::columns;
    for (auto _ : state) benchmark::DoNotOptimize(arm_transfer_matrix(chain, k, q, det, o));
}
BENCHMARK(BM_TransferMatrix)->Arg(0)->Arg(1)->ArgNames({"columns"})->Unit(benchmark::kMillisecond);

static void BM_Contraction(benchmark::State& state) {
    const std::size_t nq = 256, nd = 128;
    double dq = two_pi / 10.5e-3;
    auto q = symmetric_frequency_grid(nq, dq);
    auto qp = make_frequency_grid(2 * nq, dq, 0.0);
    auto px = make_position_grid(2 * nq, 10.5e-3, 0.0);
    auto det = make_position_grid(nd, 4e-3, 0.0);
    BiphotonState st{build_pump_spectrum(MaskedPump{sinusoidal_grating(8e3, 1.0, px)}, 0.4, kp, qp), k, k, q, q};
    ComplexMatrix hs(nd, nq), hi(nd, nq);
    for (std::size_t m = 0; m < nd; ++m)
        for (std::size_t j = 0; j < nq; ++j) {
            hs(m, j) = std::polar(1.0, 0.37 * m * j);
            hi(m, j) = std::polar(1.0, 0.11 * m + 0.53 * j);
        }
    JointOptions o;
    o.contraction = state.range(0) == 0 ? Contraction::pump_lines : Contraction::direct;
    for (auto _ : state) benchmark::DoNotOptimize(contract(st, hs, hi, det, det, o));
}
BENCHMARK(BM_Contraction)->Arg(0)->Arg(1)->ArgNames({"direct"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
