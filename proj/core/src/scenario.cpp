#include "qmoire/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmoire/csv.hpp"
#include "qmoire/errors.hpp"

namespace qmoire {

SampledField GratingSpec::sample(const TransverseGrid& grid) const {
    SampledField t = type == Type::ronchi       ? ronchi_grating(period, duty, offset, grid)
                     : type == Type::sinusoidal ? sinusoidal_grating(frequency, contrast, grid)
                                                : uniform_field(grid);
    if (aperture > 0.0) t = hard_aperture(std::move(t), aperture);
    return t;
}

namespace {

GratingSpec read_grating(const Config& c, const std::string& name) {
    GratingSpec g;
    std::string type = c.text(name + "_type", "open");
    if (type == "open") {
        g.type = GratingSpec::Type::open;
    } else if (type == "ronchi") {
        g.type = GratingSpec::Type::ronchi;
        g.period = c.length(name + "_period");
        g.duty = c.number(name + "_duty", 0.5);
        g.offset = c.optional_length(name + "_offset").value_or(0.0);
        if (!(g.period > 0.0)) throw ConfigError(name + "_period must be positive");
        if (!(g.duty >= 0.0 && g.duty <= 1.0)) throw ConfigError(name + "_duty must lie in [0, 1]");
    } else if (type == "sinusoidal") {
        g.type = GratingSpec::Type::sinusoidal;
        g.frequency = c.inverse_length(name + "_frequency");
        g.contrast = c.number(name + "_contrast", 1.0);
        if (!(g.contrast >= 0.0 && g.contrast <= 1.0)) throw ConfigError(name + "_contrast must lie in [0, 1]");
    } else {
        throw ConfigError(name + "_type must be open, ronchi or sinusoidal");
    }
    g.aperture = c.optional_length(name + "_aperture").value_or(0.0);
    if (g.aperture < 0.0) throw ConfigError(name + "_aperture must be non-negative");
    return g;
}

void require_positive(double v, const std::string& what) {
    if (!(v > 0.0)) throw ConfigError(what + " must be positive");
}

void require_points(std::size_t n, const std::string& what) {
    if (n < 2) throw ConfigError(what + " must be at least 2");
}

}  // namespace

Scenario scenario_from_config(const Config& c) {
    Scenario s;
    std::string setup = c.text("setup");
    if (setup == "pump-idler")
        s.setup = Setup::pump_idler;
    else if (setup == "idler-signal")
        s.setup = Setup::idler_signal;
    else
        throw ConfigError("setup must be pump-idler or idler-signal");

    s.lambda_signal = c.optional_length("signal_wavelength").value_or(s.lambda_signal);
    s.lambda_idler = c.optional_length("idler_wavelength").value_or(s.lambda_idler);
    s.lambda_pump = c.optional_length("pump_wavelength").value_or(s.lambda_pump);
    require_positive(s.lambda_signal, "signal_wavelength");
    require_positive(s.lambda_idler, "idler_wavelength");
    require_positive(s.lambda_pump, "pump_wavelength");

    s.a1 = read_grating(c, "a1");
    s.a2 = read_grating(c, "a2");

    s.f = c.length("f");
    require_positive(s.f, "f");
    if (s.setup == Setup::pump_idler) {
        s.z0 = c.length("z0");
        s.z1 = c.length("z1");
        require_positive(s.z0, "z0");
        if (!(s.z1 >= 0.0)) throw ConfigError("z1 must be non-negative");
        if (!(s.z0 + s.z1 > s.f)) throw ConfigError("z0 + z1 must exceed f (thin-lens law needs a real image)");
    }

    s.q_points = c.count("q_points");
    s.q_conjugate_extent = c.length("q_conjugate_extent");
    require_positive(s.q_conjugate_extent, "q_conjugate_extent");
    if (s.q_points < 2 || s.q_points % 2) throw ConfigError("q_points must be even and at least 2");
    s.pump_points = c.count("pump_points", 2 * s.q_points);
    require_points(s.pump_points, "pump_points");
    s.sim_points = c.count("sim_points");
    s.sim_extent = c.length("sim_extent");
    require_points(s.sim_points, "sim_points");
    require_positive(s.sim_extent, "sim_extent");
    s.lens_aperture_inner = c.optional_length("lens_aperture_inner").value_or(0.0);
    s.lens_aperture_outer = c.optional_length("lens_aperture_outer").value_or(0.0);
    if (s.lens_aperture_outer != 0.0 && !(s.lens_aperture_outer > s.lens_aperture_inner && s.lens_aperture_inner >= 0.0))
        throw ConfigError("lens_aperture_outer must exceed lens_aperture_inner");

    s.pupil_taper = c.number("pupil_taper", 0.0);
    if (!(s.pupil_taper >= 0.0 && s.pupil_taper <= 1.0)) throw ConfigError("pupil_taper must lie in [0, 1]");

    std::string pump = c.text("pump", "plane-wave");
    if (pump == "plane-wave") {
        s.pump = PumpProfile::plane_wave;
    } else if (pump == "gaussian") {
        s.pump = PumpProfile::gaussian;
        s.pump_waist = c.length("pump_waist");
        require_positive(s.pump_waist, "pump_waist");
    } else {
        throw ConfigError("pump must be plane-wave or gaussian");
    }

    std::string axis = c.text("scan_axis");
    if (axis == "idler")
        s.scan_axis = ScanAxis::idler;
    else if (axis == "signal")
        s.scan_axis = ScanAxis::signal;
    else
        throw ConfigError("scan_axis must be idler or signal");
    s.scan_fixed = c.optional_length("scan_fixed").value_or(0.0);
    s.scan_points = c.count("scan_points");
    require_points(s.scan_points, "scan_points");
    s.scan_extent = c.length("scan_extent");
    require_positive(s.scan_extent, "scan_extent");
    s.scan_center = c.optional_length("scan_center").value_or(0.0);
    s.probe_points = c.count("probe_points", 2);
    require_points(s.probe_points, "probe_points");
    s.probe_spacing = c.optional_length("probe_spacing").value_or(s.sim_extent / static_cast<double>(s.sim_points));
    require_positive(s.probe_spacing, "probe_spacing");
    s.idler_check_at = c.optional_length("idler_check_at");

    s.output_dir = c.text("output_dir", ".");
    std::string norm = c.text("normalization", "peak-1");
    if (norm == "peak-1")
        s.normalization = Normalization::peak_one;
    else if (norm == "raw")
        s.normalization = Normalization::raw;
    else
        throw ConfigError("normalization must be peak-1 or raw");

    auto lo = c.optional_inverse_length("beat_band_lo");
    auto hi = c.optional_inverse_length("beat_band_hi");
    if (lo.has_value() != hi.has_value()) throw ConfigError("beat_band_lo and beat_band_hi go together");
    if (lo) {
        if (!(*lo >= 0.0 && *hi > *lo)) throw ConfigError("beat band must satisfy 0 <= lo < hi");
        s.beat_band = {*lo, *hi};
    }
    s.visibility_window =
        c.optional_length("visibility_window").value_or(s.scan_extent / static_cast<double>(s.scan_points));
    s.tolerance = c.number("tolerance", s.tolerance);
    s.min_correlation = c.number("min_correlation", s.min_correlation);

    c.reject_unused();

    double half = 0.5 * s.sim_extent;
    double scan_lo = s.scan_center - 0.5 * s.scan_extent, scan_hi = s.scan_center + 0.5 * s.scan_extent;
    if (scan_lo < -half || scan_hi > half) throw ConfigError("scan range exceeds the simulation grid");
    return s;
}

ScenarioResult run_scenario(const Scenario& s, const RunOptions& options) {
    Wavenumber ks = Wavenumber::from_wavelength(s.lambda_signal);
    Wavenumber ki = Wavenumber::from_wavelength(s.lambda_idler);
    Wavenumber kp = Wavenumber::from_wavelength(s.lambda_pump);

    std::size_t nq = options.q_points.value_or(s.q_points);
    double conj = options.q_conjugate_extent.value_or(s.q_conjugate_extent);
    double dq = two_pi / conj;
    std::size_t np = options.q_points ? 2 * nq : s.pump_points;
    TransverseGrid q_grid = symmetric_frequency_grid(nq, dq);
    TransverseGrid pump_grid = make_frequency_grid(np, dq, 0.0);
    TransverseGrid sim = make_position_grid(s.sim_points, s.sim_extent, 0.0);

    SampledField a1 = s.a1.sample(sim);
    SampledField a2 = s.a2.sample(sim);
    std::optional<SampledField> aperture;
    if (s.lens_aperture_outer > 0.0) aperture = soft_aperture(sim, s.lens_aperture_inner, s.lens_aperture_outer);
    const SampledField* ap = aperture ? &*aperture : nullptr;

    TransverseGrid scan = make_position_grid(s.scan_points, s.scan_extent, s.scan_center);
    TransverseGrid probe(s.probe_points, s.probe_spacing, s.scan_fixed, GridKind::position);
    bool scan_idler = s.scan_axis == ScanAxis::idler;
    const TransverseGrid& x_signal = scan_idler ? probe : scan;
    const TransverseGrid& x_idler = scan_idler ? scan : probe;

    std::optional<PumpIdlerGeometry> geom;
    ElementChain signal_arm, idler_arm;
    PumpModel model = PlaneWave{};
    double z_pump = 0.0;
    if (s.setup == Setup::pump_idler) {
        geom.emplace(s.z0, s.z1, s.f);
        TransverseGrid pg = make_position_grid(np, conj, 0.0);
        SampledField w = s.a1.sample(pg);
        if (s.pump == PumpProfile::gaussian)
            for (std::size_t i = 0; i < pg.size(); ++i) {
                double x = pg.sample(i);
                w[i] *= std::exp(-x * x / (s.pump_waist * s.pump_waist));
            }
        model = MaskedPump{std::move(w)};
        z_pump = s.z1;
        signal_arm = pump_idler_signal_arm(*geom, ap);
        idler_arm = pump_idler_idler_arm(*geom, a2, ap);
    } else {
        IdlerSignalGeometry g(s.f);
        if (s.pump == PumpProfile::gaussian) model = GaussianPump{s.pump_waist};
        idler_arm = idler_signal_idler_arm(g, a1);
        signal_arm = idler_signal_signal_arm(g, a2);
    }

    BiphotonState state{build_pump_spectrum(model, z_pump, kp, pump_grid), ks, ki, q_grid, q_grid};
    JointOptions jo;
    jo.threads = options.threads;
    jo.transfer.simulation_grid = sim;
    jo.transfer.pupil_taper = s.pupil_taper;
    if (options.oracle) {
        jo.transfer.propagation = PropagationMethod::direct_quadrature;
        jo.contraction = Contraction::direct;
    }
    JointAmplitude amp = joint_amplitude(state, signal_arm, idler_arm, x_signal, x_idler, jo);
    CoincidenceMap raw = coincidence_map(amp, Normalization::raw);
    CoincidenceMap map = s.normalization == Normalization::peak_one ? coincidence_map(amp, Normalization::peak_one) : raw;

    RealProfile numeric = slice(map, scan_idler ? SliceAxis::fixed_signal : SliceAxis::fixed_idler, s.scan_fixed);
    RealProfile closed{scan, std::vector<double>(scan.size())};
    for (std::size_t i = 0; i < scan.size(); ++i) {
        double xs = scan_idler ? s.scan_fixed : scan.sample(i);
        double xi = scan_idler ? scan.sample(i) : s.scan_fixed;
        closed.values[i] = s.setup == Setup::pump_idler ? coincidence_pump_idler(a1, a2, *geom, xs, xi)
                                                        : coincidence_idler_signal(a1, a2, xs, xi);
    }
    if (s.normalization == Normalization::peak_one) {
        double peak = *std::max_element(closed.values.begin(), closed.values.end());
        if (!(peak > 0.0)) throw DegenerateScenario("closed form vanishes along the scan");
        for (auto& v : closed.values) v /= peak;
    }

    ScenarioResult r{map, numeric, closed, {}, compare_profiles(numeric.values, closed.values), std::nullopt,
                     0.0, std::nullopt, false};
    if (numeric.values.size() >= 16) {
        r.spectrum = fringe_spectrum(numeric);
        if (s.beat_band.hi > s.beat_band.lo) r.beat = beat_frequency(r.spectrum, s.beat_band);
    }
    r.visibility = visibility(numeric, s.visibility_window);

    if (!scan_idler && s.probe_points >= 3 && s.idler_check_at) {
        double peak = *std::max_element(raw.values.data().begin(), raw.values.data().end());
        std::size_t m = x_signal.nearest_index(*s.idler_check_at);
        double lo = raw.values(m, 0), hi = lo;
        for (std::size_t n = 1; n < x_idler.size(); ++n) {
            lo = std::min(lo, raw.values(m, n));
            hi = std::max(hi, raw.values(m, n));
        }
        r.idler_variation = (hi - lo) / peak;
    }
    r.pass = r.comparison.max_deviation <= s.tolerance && r.comparison.correlation >= s.min_correlation;
    return r;
}

std::string format_report(const Scenario& s, const ScenarioResult& r) {
    std::ostringstream os;
    os << "SETUP: " << (s.setup == Setup::pump_idler ? "pump-idler" : "idler-signal") << "\n";
    os << "SCAN_AXIS: " << (s.scan_axis == ScanAxis::idler ? "idler" : "signal") << "\n";
    os << "SCAN_POINTS: " << r.numeric.values.size() << "\n";
    os << "MAX_DEVIATION: " << format_number(r.comparison.max_deviation) << "\n";
    os << "CORRELATION: " << format_number(r.comparison.correlation) << "\n";
    os << "BEAT_FREQUENCY_PER_M: " << (r.beat ? format_number(*r.beat) : "none") << "\n";
    if (!r.spectrum.frequencies.empty())
        os << "SPECTRAL_RESOLUTION_PER_M: " << format_number(r.spectrum.resolution) << "\n";
    os << "VISIBILITY: " << format_number(r.visibility) << "\n";
    if (r.idler_variation) os << "IDLER_VARIATION: " << format_number(*r.idler_variation) << "\n";
    os << "TOLERANCE: " << format_number(s.tolerance) << "\n";
    os << "STATUS: " << (r.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

void write_outputs(const Scenario& s, const ScenarioResult& r) {
    std::filesystem::create_directories(s.output_dir);
    std::filesystem::path dir(s.output_dir);
    std::vector<std::pair<std::string, std::string>> meta = {
        {"setup", s.setup == Setup::pump_idler ? "pump-idler" : "idler-signal"},
        {"scan_axis", s.scan_axis == ScanAxis::idler ? "idler" : "signal"},
        {"scan_fixed_m", format_number(s.scan_fixed)},
        {"normalization", s.normalization == Normalization::peak_one ? "peak-1" : "raw"}};
    auto with = [&](const std::string& source) {
        auto m = meta;
        m.emplace_back("source", source);
        return m;
    };
    write_profile_csv((dir / "numeric.csv").string(), r.numeric, with("numeric"));
    write_profile_csv((dir / "closed_form.csv").string(), r.closed_form, with("closed-form"));
    if (!r.spectrum.frequencies.empty())
        write_spectrum_csv((dir / "spectrum.csv").string(), r.spectrum, with("numeric"));
    std::ofstream rep(dir / "report.txt");
    if (!rep) throw Error("cannot write report in " + s.output_dir);
    rep << format_report(s, r);
}

}  // namespace qmoire
