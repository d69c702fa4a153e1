#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmoire/biphoton.hpp"
#include "qmoire/closed_form.hpp"
#include "qmoire/config.hpp"
#include "qmoire/moire.hpp"

namespace qmoire {

enum class Setup { pump_idler, idler_signal };

struct GratingSpec {
    enum class Type { open, ronchi, sinusoidal };
    Type type = Type::open;
    double period = 0.0;     // ronchi
    double duty = 0.5;       // ronchi
    double offset = 0.0;     // ronchi
    double frequency = 0.0;  // sinusoidal, cycles per metre
    double contrast = 1.0;   // sinusoidal
    double aperture = 0.0;   // clear half-width, 0 for unbounded

    SampledField sample(const TransverseGrid& grid) const;
};

enum class PumpProfile { plane_wave, gaussian };

struct Scenario {
    Setup setup = Setup::pump_idler;
    double lambda_signal = 702e-9;
    double lambda_idler = 702e-9;
    double lambda_pump = 351e-9;
    GratingSpec a1, a2;

    double f = 0.0;
    double z0 = 0.0;  // pump-idler only
    double z1 = 0.0;  // pump-idler only

    std::size_t q_points = 0;
    double q_conjugate_extent = 0.0;  // 2 pi / dq
    std::size_t pump_points = 0;      // pump spectrum samples, default 2 * q_points
    std::size_t sim_points = 0;
    double sim_extent = 0.0;
    double lens_aperture_inner = 0.0;  // soft lens aperture, 0 for none
    double lens_aperture_outer = 0.0;
    double pupil_taper = 0.0;

    PumpProfile pump = PumpProfile::plane_wave;
    double pump_waist = 0.0;

    ScanAxis scan_axis = ScanAxis::idler;  // detector being scanned
    double scan_fixed = 0.0;               // coordinate of the other detector
    std::size_t scan_points = 0;
    double scan_extent = 0.0;
    double scan_center = 0.0;
    std::size_t probe_points = 2;  // samples of the fixed detector around scan_fixed
    double probe_spacing = 0.0;    // default: simulation spacing
    std::optional<double> idler_check_at;  // x_s where idler independence is measured

    std::string output_dir = ".";
    Normalization normalization = Normalization::peak_one;
    FrequencyBand beat_band{0.0, 0.0};
    double visibility_window = 0.0;  // default: scan spacing
    double tolerance = 0.05;
    double min_correlation = 0.99;
};

// Throws ConfigError on missing, malformed, unknown, or inconsistent keys.
Scenario scenario_from_config(const Config& config);

struct RunOptions {
    unsigned threads = 1;
    bool oracle = false;  // direct quadrature and direct double sum
    // Overrides for convergence studies.
    std::optional<std::size_t> q_points;
    std::optional<double> q_conjugate_extent;
};

struct ScenarioResult {
    CoincidenceMap map;
    RealProfile numeric;
    RealProfile closed_form;
    FringeSpectrum spectrum;
    ProfileComparison comparison;
    std::optional<double> beat;
    double visibility;
    std::optional<double> idler_variation;
    bool pass;
};

ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

// KEY: value lines.
std::string format_report(const Scenario& scenario, const ScenarioResult& result);

// numeric.csv, closed_form.csv, spectrum.csv, report.txt under scenario.output_dir.
void write_outputs(const Scenario& scenario, const ScenarioResult& result);

}  // namespace qmoire
