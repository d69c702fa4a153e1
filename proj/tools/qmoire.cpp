#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "qmoire/csv.hpp"
#include "qmoire/errors.hpp"
#include "qmoire/moire.hpp"
#include "qmoire/scenario.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_sampling = 3;
constexpr int exit_internal = 1;
constexpr int exit_compare_fail = 4;

int simulate(const std::string& path, unsigned threads, bool oracle) {
    qmoire::Scenario s = qmoire::scenario_from_config(qmoire::Config::load(path));
    qmoire::RunOptions opts;
    opts.threads = threads;
    opts.oracle = oracle;
    auto r = qmoire::run_scenario(s, opts);
    qmoire::write_outputs(s, r);
    std::cout << qmoire::format_report(s, r);
    return 0;
}

int compare(const std::string& a, const std::string& b, double tol) {
    auto pa = qmoire::read_profile_csv(a);
    auto pb = qmoire::read_profile_csv(b);
    if (!pa.grid.same_as(pb.grid, 1e-6)) throw qmoire::GridMismatch("profiles are sampled on different grids");
    auto c = qmoire::compare_profiles(pa.values, pb.values);
    bool pass = c.max_deviation <= tol;
    std::cout << "MAX_DEVIATION: " << qmoire::format_number(c.max_deviation) << "\n"
              << "CORRELATION: " << qmoire::format_number(c.correlation) << "\n"
              << "TOLERANCE: " << qmoire::format_number(tol) << "\n"
              << "STATUS: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : exit_compare_fail;
}

int analyze(const std::string& path, const std::string& band, double window) {
    auto p = qmoire::read_profile_csv(path);
    qmoire::FrequencyBand b{};
    char comma = 0;
    std::istringstream bs(band);
    if (!(bs >> b.lo >> comma >> b.hi) || comma != ',' || !bs.eof())
        throw qmoire::ConfigError("--band expects lo,hi in cycles per metre");
    auto spec = qmoire::fringe_spectrum(p);
    auto beat = qmoire::beat_frequency(spec, b);
    auto dom = qmoire::dominant_frequency(spec);
    double vis = qmoire::visibility(p, window > 0.0 ? window : p.grid.spacing());
    std::cout << "BEAT_FREQUENCY_PER_M: " << (beat ? qmoire::format_number(*beat) : "none") << "\n"
              << "DOMINANT_FREQUENCY_PER_M: " << (dom ? qmoire::format_number(*dom) : "none") << "\n"
              << "SPECTRAL_RESOLUTION_PER_M: " << qmoire::format_number(spec.resolution) << "\n"
              << "VISIBILITY: " << qmoire::format_number(vis) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coincidence-image moire simulator"};
    app.require_subcommand(1);
    unsigned threads = 1;
    bool oracle = false;
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    app.add_flag("--oracle", oracle, "Use direct quadrature and the direct double sum");

    std::string config;
    auto* sim = app.add_subcommand("simulate", "Run a scenario config");
    sim->add_option("config", config, "Scenario config file")->required();

    std::string a, b;
    double tol = 0.05;
    auto* cmp = app.add_subcommand("compare", "Compare two profile CSVs after peak normalization");
    cmp->add_option("a", a)->required();
    cmp->add_option("b", b)->required();
    cmp->add_option("--tol", tol, "Maximum allowed deviation")->required();

    std::string profile, band;
    double window = 0.0;
    auto* ana = app.add_subcommand("analyze", "Beat frequency and visibility of a profile CSV");
    ana->add_option("profile", profile)->required();
    ana->add_option("--band", band, "Beat search band lo,hi in cycles per metre")->required();
    ana->add_option("--window", window, "Visibility window in metres (default: one sample)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (*sim) return simulate(config, threads, oracle);
        if (*cmp) return compare(a, b, tol);
        return analyze(profile, band, window);
    } catch (const qmoire::SamplingViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_sampling;
    } catch (const qmoire::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const qmoire::GridMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const qmoire::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const qmoire::OutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const qmoire::DegenerateScenario& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}
