#include "qmoire/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmoire/errors.hpp"

namespace qmoire {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    return out;
}

void write_header(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& metadata) {
    out << "# qmoire " << version << "\n";
    for (const auto& [k, v] : metadata) out << "# " << k << ": " << v << "\n";
}

}  // namespace

void write_profile_csv(const std::string& path, const RealProfile& profile,
                       const std::vector<std::pair<std::string, std::string>>& metadata) {
    auto out = open_out(path);
    write_header(out, metadata);
    out << "x_m,value\n";
    for (std::size_t i = 0; i < profile.values.size(); ++i)
        out << format_number(profile.grid.sample(i)) << "," << format_number(profile.values[i]) << "\n";
}

void write_spectrum_csv(const std::string& path, const FringeSpectrum& spectrum,
                        const std::vector<std::pair<std::string, std::string>>& metadata) {
    auto out = open_out(path);
    write_header(out, metadata);
    out << "frequency_per_m,magnitude\n";
    for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i)
        out << format_number(spectrum.frequencies[i]) << "," << format_number(spectrum.magnitudes[i]) << "\n";
}

RealProfile read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::vector<double> xs, vs;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "x_m,value") throw GridMismatch(path + ": expected header x_m,value");
            header = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) throw GridMismatch(path + ": malformed row: " + line);
        try {
            xs.push_back(std::stod(line.substr(0, comma)));
            vs.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw GridMismatch(path + ": malformed row: " + line);
        }
    }
    if (xs.size() < 2) throw GridMismatch(path + ": fewer than 2 samples");
    double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(dx > 0.0)) throw GridMismatch(path + ": x column not increasing");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (std::abs(xs[i] - xs[i - 1] - dx) > 1e-6 * dx) throw GridMismatch(path + ": x column not uniform");
    std::size_t n = xs.size();
    TransverseGrid g(n, dx, xs.front() + static_cast<double>(n / 2) * dx, GridKind::position);
    return RealProfile{g, std::move(vs)};
}

}  // namespace qmoire
