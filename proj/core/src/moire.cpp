#include "qmoire/moire.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qmoire/errors.hpp"
#include "qmoire/fft.hpp"

namespace qmoire {

FringeSpectrum fringe_spectrum(const RealProfile& profile) {
    std::size_t n = profile.values.size();
    if (n < 16) throw InvalidArgument("fringe spectrum needs at least 16 samples");
    if (n != profile.grid.size()) throw GridMismatch("profile length does not match grid");
    double mean = std::accumulate(profile.values.begin(), profile.values.end(), 0.0) / static_cast<double>(n);
    std::vector<cplx> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = profile.values[i] - mean;
    Fft(n).forward(buf);

    std::size_t half = n / 2;
    FringeSpectrum s;
    s.resolution = 1.0 / profile.grid.extent();
    s.frequencies.resize(half + 1);
    s.magnitudes.resize(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        s.frequencies[k] = static_cast<double>(k) * s.resolution;
        double scale = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
        s.magnitudes[k] = scale * std::abs(buf[k]) / static_cast<double>(n);
    }
    s.magnitudes[0] = 0.0;
    return s;
}

std::optional<double> beat_frequency(const FringeSpectrum& spec, FrequencyBand band) {
    if (spec.frequencies.size() < 2 || spec.magnitudes.size() != spec.frequencies.size())
        throw InvalidArgument("malformed spectrum");
    if (!(band.lo >= 0.0) || !(band.hi > band.lo) || band.lo >= spec.frequencies.back())
        throw InvalidArgument("invalid frequency band");

    double top = *std::max_element(spec.magnitudes.begin(), spec.magnitudes.end());
    double floor = 1e-12 * top;
    auto clip = [&](double m) { return m > floor ? m : 0.0; };

    std::vector<double> rest;
    for (std::size_t k = 1; k < spec.magnitudes.size(); ++k) rest.push_back(clip(spec.magnitudes[k]));
    std::nth_element(rest.begin(), rest.begin() + static_cast<long>(rest.size() / 2), rest.end());
    double median = rest[rest.size() / 2];

    std::optional<std::size_t> best;
    for (std::size_t k = 1; k < spec.frequencies.size(); ++k) {
        double f = spec.frequencies[k];
        if (f <= band.lo || f >= band.hi) continue;
        if (!best || spec.magnitudes[k] > spec.magnitudes[*best]) best = k;
    }
    if (!best) return std::nullopt;
    double peak = clip(spec.magnitudes[*best]);
    if (!(peak > 0.0) || !(peak > 3.0 * median)) return std::nullopt;
    return spec.frequencies[*best];
}

std::optional<double> dominant_frequency(const FringeSpectrum& spec) {
    auto it = std::max_element(spec.magnitudes.begin(), spec.magnitudes.end());
    if (it == spec.magnitudes.end() || !(*it > 0.0)) return std::nullopt;
    return spec.frequencies[static_cast<std::size_t>(it - spec.magnitudes.begin())];
}

double visibility(const RealProfile& profile, double window) {
    std::size_t n = profile.values.size();
    if (!(window > 0.0)) throw InvalidArgument("window must be positive");
    if (window > profile.grid.extent()) throw InvalidArgument("window larger than profile extent");
    auto w = static_cast<std::size_t>(std::llround(window / profile.grid.spacing()));
    w = std::clamp<std::size_t>(w, 1, n);
    if (w % 2 == 0) w = w > 1 ? w - 1 : 1;

    double lo = 0.0, hi = 0.0;
    for (std::size_t b = 0; b + w <= n; ++b) {
        double acc = 0.0;
        for (std::size_t i = b; i < b + w; ++i) acc += profile.values[i];
        acc /= static_cast<double>(w);
        if (b == 0 || acc < lo) lo = acc;
        if (b == 0 || acc > hi) hi = acc;
    }
    if (!(hi + lo > 0.0)) return 0.0;
    return (hi - lo) / (hi + lo);
}

ProfileComparison compare_profiles(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) throw GridMismatch("profiles differ in length");
    double pa = *std::max_element(a.begin(), a.end());
    double pb = *std::max_element(b.begin(), b.end());
    if (!(pa > 0.0) || !(pb > 0.0)) throw DegenerateScenario("profile has no positive peak");
    std::size_t n = a.size();
    double dev = 0.0, ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dev = std::max(dev, std::abs(a[i] / pa - b[i] / pb));
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    // Pearson is undefined for a flat profile; use the uncentered cosine instead.
    auto flat = [&](double ss, double mean) { return ss <= 1e-18 * mean * mean * static_cast<double>(n); };
    double corr;
    if (flat(saa, ma) || flat(sbb, mb)) {
        double ab = 0.0, aa = 0.0, bb = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ab += a[i] * b[i];
            aa += a[i] * a[i];
            bb += b[i] * b[i];
        }
        corr = ab / std::sqrt(aa * bb);
    } else {
        corr = sab / std::sqrt(saa * sbb);
    }
    return {dev, corr};
}

}  // namespace qmoire
