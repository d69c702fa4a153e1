#pragma once

#include <optional>
#include <vector>

#include "qmoire/field.hpp"

namespace qmoire {

struct FringeSpectrum {
    std::vector<double> frequencies;  // cycles per metre, bin k at k * resolution
    std::vector<double> magnitudes;   // cosine amplitude, DC bin zeroed
    double resolution;                // 1 / extent
};

// One-sided amplitude spectrum of the mean-subtracted profile (>= 16 samples).
FringeSpectrum fringe_spectrum(const RealProfile& profile);

struct FrequencyBand {
    double lo;
    double hi;
};

// Strongest bin with lo < f < hi, or nullopt when it does not exceed 3x the median
// magnitude of the nonzero-frequency bins. Magnitudes below 1e-12 of the largest bin count as zero.
std::optional<double> beat_frequency(const FringeSpectrum& spec, FrequencyBand band);

// (max - min)/(max + min) of the centered moving average over `window`, taken
// where the whole window fits inside the profile.
double visibility(const RealProfile& profile, double window);

// Frequency of the strongest bin overall, or nullopt for a flat profile.
std::optional<double> dominant_frequency(const FringeSpectrum& spec);

struct ProfileComparison {
    double max_deviation;  // after peak normalization of both
    double correlation;    // Pearson; uncentered cosine if either profile is flat
};

ProfileComparison compare_profiles(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qmoire
