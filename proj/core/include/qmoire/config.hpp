#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qmoire {

// Flat `key = value` file. `#` starts a comment. Physical quantities carry a unit
// suffix in the key (`period_um = 200`) and are returned in SI.
class Config {
public:
    static Config parse(std::istream& in, const std::string& origin = "<config>");
    static Config load(const std::string& path);

    bool has(const std::string& key) const;

    std::string text(const std::string& key) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    double number(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    std::size_t count(const std::string& key) const;
    std::size_t count(const std::string& key, std::size_t fallback) const;

    // `base` + one of _m, _mm, _um, _nm.
    double length(const std::string& base) const;
    std::optional<double> optional_length(const std::string& base) const;
    // `base` + one of _per_m, _per_mm, _per_um (cycles per length).
    double inverse_length(const std::string& base) const;
    std::optional<double> optional_inverse_length(const std::string& base) const;
    // Comma separated lengths, `base` + unit suffix.
    std::vector<double> length_list(const std::string& base) const;

    // Throws ConfigError naming the first key never read.
    void reject_unused() const;

    const std::string& origin() const { return origin_; }

private:
    std::optional<std::pair<std::string, double>> find_unit(const std::string& base,
                                                            const std::vector<std::pair<std::string, double>>& units) const;
    const std::string& raw(const std::string& key) const;

    std::string origin_;
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

}  // namespace qmoire
