#pragma once

#include <string>
#include <vector>

#include "qmoire/field.hpp"
#include "qmoire/moire.hpp"

namespace qmoire {

inline constexpr const char* version = "0.1.0";

// `# key: value` comment lines, header `x_m,value`, %.9g numbers.
void write_profile_csv(const std::string& path, const RealProfile& profile,
                       const std::vector<std::pair<std::string, std::string>>& metadata = {});

void write_spectrum_csv(const std::string& path, const FringeSpectrum& spectrum,
                        const std::vector<std::pair<std::string, std::string>>& metadata = {});

// Rebuilds the uniform grid from the x column; throws GridMismatch if it is not uniform.
RealProfile read_profile_csv(const std::string& path);

std::string format_number(double v);

}  // namespace qmoire
