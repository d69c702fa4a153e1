#include "qmoire/biphoton.hpp"

#include <algorithm>
#include <cmath>

#include "qmoire/errors.hpp"
#include "qmoire/parallel.hpp"

namespace qmoire {

namespace {

// Pump index of q_s(0) + q_i(0).
long long pair_offset(const BiphotonState& s) {
    const auto& p = s.pump.spectrum.grid();
    double off = (s.q_signal.first() + s.q_idler.first() - p.first()) / p.spacing();
    double r = std::round(off);
    if (std::abs(off - r) > 1e-6) throw GridMismatch("q_s + q_i does not land on the pump frequency lattice");
    return static_cast<long long>(r);
}

}  // namespace

PumpSpectrum build_pump_spectrum(const PumpModel& model, double z1, Wavenumber k_p, const TransverseGrid& q_grid) {
    if (q_grid.kind() != GridKind::frequency) throw InvalidArgument("pump spectrum needs a frequency grid");
    if (!(z1 >= 0.0)) throw InvalidArgument("pump propagation distance must be >= 0");
    SampledField v(q_grid);
    std::size_t n = q_grid.size();

    if (std::holds_alternative<PlaneWave>(model)) {
        v[q_grid.exact_index(0.0)] = 1.0 / q_grid.spacing();
    } else if (auto* g = std::get_if<GaussianPump>(&model)) {
        if (!(g->waist > 0.0)) throw InvalidArgument("pump waist must be positive");
        double w = g->waist;
        for (std::size_t j = 0; j < n; ++j) {
            double q = q_grid.sample(j);
            v[j] = w / (2.0 * std::sqrt(std::numbers::pi)) * std::exp(-q * q * w * w / 4.0);
        }
    } else {
        const auto& prof = std::get<MaskedPump>(model).profile;
        const auto& xg = prof.grid();
        if (xg.kind() != GridKind::position) throw GridMismatch("pump profile must be on a position grid");
        double dq = two_pi / xg.extent();
        if (std::abs(dq - q_grid.spacing()) > 1e-9 * dq)
            throw GridMismatch("pump profile grid is not conjugate to the pump frequency grid");
        double scale = xg.spacing() / two_pi;
        for (std::size_t j = 0; j < n; ++j) {
            double q = q_grid.sample(j);
            cplx acc = 0.0;
            for (std::size_t i = 0; i < prof.size(); ++i) acc += prof[i] * std::polar(1.0, -q * xg.sample(i));
            v[j] = scale * acc;
        }
    }
    if (z1 > 0.0) {
        for (std::size_t j = 0; j < n; ++j) {
            double q = q_grid.sample(j);
            v[j] *= std::polar(1.0, -q * q * z1 / (2.0 * k_p.value));
        }
    }
    return PumpSpectrum{model, z1, std::move(v)};
}

void BiphotonState::validate() const {
    const auto& p = pump.spectrum.grid();
    if (q_signal.kind() != GridKind::frequency || q_idler.kind() != GridKind::frequency)
        throw InvalidArgument("arm q grids must be frequency grids");
    double dq = p.spacing();
    if (std::abs(q_signal.spacing() - dq) > 1e-9 * dq || std::abs(q_idler.spacing() - dq) > 1e-9 * dq)
        throw GridMismatch("arm q spacing differs from pump spacing");
    pair_offset(*this);
}

bool BiphotonState::degenerate(Wavenumber k_pump, double rel_tol) const {
    double half = 0.5 * k_pump.value;
    return std::abs(k_signal.value - half) <= rel_tol * half && std::abs(k_idler.value - half) <= rel_tol * half;
}

JointAmplitude contract(const BiphotonState& state, const ComplexMatrix& hs, const ComplexMatrix& hi,
                        const TransverseGrid& x_signal, const TransverseGrid& x_idler, const JointOptions& options) {
    state.validate();
    std::size_t ns = state.q_signal.size(), ni = state.q_idler.size();
    if (hs.cols() != ns || hi.cols() != ni || hs.rows() != x_signal.size() || hi.rows() != x_idler.size())
        throw GridMismatch("transfer matrix dimensions do not match grids");
    const auto& v = state.pump.spectrum.values();
    auto np = static_cast<long long>(v.size());
    long long off = pair_offset(state);
    double dq = state.q_signal.spacing();
    double w = dq * dq;

    // Pump samples that can be reached by some pair.
    double vmax = 0.0;
    for (auto x : v) vmax = std::max(vmax, std::abs(x));
    std::vector<long long> support;
    for (long long p = 0; p < np; ++p) {
        long long s = p - off;  // j + l
        if (s < 0 || s > static_cast<long long>(ns + ni - 2)) continue;
        if (std::abs(v[p]) > options.support_threshold * vmax) support.push_back(p);
    }

    Contraction mode = options.contraction;
    if (mode == Contraction::automatic)
        mode = support.size() * 4 <= std::max(ns, ni) ? Contraction::pump_lines : Contraction::direct;

    JointAmplitude out{x_signal, x_idler, Array2D<cplx>(x_signal.size(), x_idler.size())};
    std::size_t nm = x_signal.size(), nn = x_idler.size();

    if (mode == Contraction::direct) {
        parallel_for(nm, options.threads, [&](std::size_t b, std::size_t e) {
            std::vector<cplx> partial(ni);
            for (std::size_t m = b; m < e; ++m) {
                const cplx* hsm = hs.row(m);
                for (std::size_t l = 0; l < ni; ++l) {
                    cplx acc = 0.0;
                    for (std::size_t j = 0; j < ns; ++j) {
                        long long p = off + static_cast<long long>(j + l);
                        if (p >= 0 && p < np) acc += v[p] * hsm[j];
                    }
                    partial[l] = acc;
                }
                for (std::size_t n = 0; n < nn; ++n) {
                    const cplx* hin = hi.row(n);
                    cplx acc = 0.0;
                    for (std::size_t l = 0; l < ni; ++l) acc += partial[l] * hin[l];
                    out.values(m, n) = acc * w;
                }
            }
        });
        return out;
    }

    parallel_for(nm, options.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t m = b; m < e; ++m) {
            const cplx* hsm = hs.row(m);
            for (std::size_t n = 0; n < nn; ++n) {
                const cplx* hin = hi.row(n);
                cplx total = 0.0;
                for (long long p : support) {
                    long long s = p - off;
                    long long j0 = std::max(0LL, s - static_cast<long long>(ni - 1));
                    long long j1 = std::min(static_cast<long long>(ns - 1), s);
                    cplx line = 0.0;
                    for (long long j = j0; j <= j1; ++j) line += hsm[j] * hin[s - j];
                    total += v[p] * line;
                }
                out.values(m, n) = total * w;
            }
        }
    });
    return out;
}

JointAmplitude joint_amplitude(const BiphotonState& state, const ElementChain& signal_arm,
                               const ElementChain& idler_arm, const TransverseGrid& x_signal,
                               const TransverseGrid& x_idler, const JointOptions& options) {
    state.validate();
    TransferOptions t = options.transfer;
    t.threads = options.threads;
    ComplexMatrix hs = arm_transfer_matrix(signal_arm, state.k_signal, state.q_signal, x_signal, t);
    ComplexMatrix hi = arm_transfer_matrix(idler_arm, state.k_idler, state.q_idler, x_idler, t);
    return contract(state, hs, hi, x_signal, x_idler, options);
}

CoincidenceMap coincidence_map(const JointAmplitude& amp, Normalization normalization) {
    CoincidenceMap map{amp.x_signal, amp.x_idler, Array2D<double>(amp.values.rows(), amp.values.cols()),
                       normalization};
    double peak = 0.0;
    for (std::size_t i = 0; i < amp.values.data().size(); ++i) {
        double c = std::norm(amp.values.data()[i]);
        map.values.data()[i] = c;
        peak = std::max(peak, c);
    }
    if (normalization == Normalization::peak_one) {
        if (!(peak > 0.0)) throw DegenerateScenario("joint amplitude vanishes everywhere");
        for (auto& c : map.values.data()) c /= peak;
    }
    return map;
}

RealProfile slice(const CoincidenceMap& map, SliceAxis axis, double at) {
    const auto& xs = map.x_signal;
    const auto& xi = map.x_idler;
    if (axis == SliceAxis::fixed_signal) {
        if (!xs.contains(at)) throw OutOfRange("slice coordinate outside the signal grid");
        std::size_t m = xs.nearest_index(at);
        RealProfile p{xi, std::vector<double>(xi.size())};
        for (std::size_t n = 0; n < xi.size(); ++n) p.values[n] = map.values(m, n);
        return p;
    }
    if (axis == SliceAxis::fixed_idler) {
        if (!xi.contains(at)) throw OutOfRange("slice coordinate outside the idler grid");
        std::size_t n = xi.nearest_index(at);
        RealProfile p{xs, std::vector<double>(xs.size())};
        for (std::size_t m = 0; m < xs.size(); ++m) p.values[m] = map.values(m, n);
        return p;
    }
    double sign = axis == SliceAxis::sum ? -1.0 : 1.0;  // x_s = at - x_i or at + x_i
    std::size_t first = xi.size(), last = 0;
    for (std::size_t n = 0; n < xi.size(); ++n) {
        if (xs.contains(at + sign * xi.sample(n))) {
            first = std::min(first, n);
            last = n;
        }
    }
    if (first > last || last - first + 1 < 2) throw OutOfRange("line does not cross the map");
    std::size_t count = last - first + 1;
    TransverseGrid g(count, xi.spacing(), xi.sample(first + count / 2), GridKind::position);
    RealProfile p{g, std::vector<double>(count)};
    for (std::size_t k = 0; k < count; ++k) {
        double x = xi.sample(first + k);
        p.values[k] = map.values(xs.nearest_index(at + sign * x), first + k);
    }
    return p;
}

RealProfile integrate_pixels(const RealProfile& profile, double pixel) {
    if (!(pixel > 0.0)) throw InvalidArgument("pixel width must be positive");
    auto half = static_cast<std::size_t>(std::floor(0.5 * pixel / profile.grid.spacing()));
    RealProfile out{profile.grid, std::vector<double>(profile.values.size())};
    std::size_t n = profile.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t b = i >= half ? i - half : 0, e = std::min(n - 1, i + half);
        double acc = 0.0;
        for (std::size_t k = b; k <= e; ++k) acc += profile.values[k];
        out.values[i] = acc / static_cast<double>(e - b + 1);
    }
    return out;
}

}  // namespace qmoire
