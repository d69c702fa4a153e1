#include "qmoire/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qmoire/errors.hpp"

namespace qmoire {

namespace {

const std::vector<std::pair<std::string, double>> length_units = {
    {"_m", 1.0}, {"_mm", 1e-3}, {"_um", 1e-6}, {"_nm", 1e-9}};
const std::vector<std::pair<std::string, double>> inverse_units = {
    {"_per_m", 1.0}, {"_per_mm", 1e3}, {"_per_um", 1e6}};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("key '" + key + "': not a number: " + v);
    return out;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& origin) {
    Config c;
    c.origin_ = origin;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (!c.values_.emplace(key, value).second)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    return parse(in, path);
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string& Config::raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing key: " + key);
    used_.insert(key);
    return it->second;
}

std::string Config::text(const std::string& key) const { return raw(key); }

std::string Config::text(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
}

double Config::number(const std::string& key) const { return to_double(key, raw(key)); }

double Config::number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::size_t Config::count(const std::string& key) const {
    double v = number(key);
    if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw ConfigError("key '" + key + "': expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

std::size_t Config::count(const std::string& key, std::size_t fallback) const {
    return has(key) ? count(key) : fallback;
}

std::optional<std::pair<std::string, double>> Config::find_unit(
    const std::string& base, const std::vector<std::pair<std::string, double>>& units) const {
    std::optional<std::pair<std::string, double>> found;
    for (const auto& [suffix, scale] : units) {
        if (has(base + suffix)) {
            if (found) throw ConfigError("key '" + base + "' given with more than one unit");
            found = std::make_pair(base + suffix, scale);
        }
    }
    return found;
}

std::optional<double> Config::optional_length(const std::string& base) const {
    auto u = find_unit(base, length_units);
    if (!u) return std::nullopt;
    return number(u->first) * u->second;
}

double Config::length(const std::string& base) const {
    auto v = optional_length(base);
    if (!v) throw ConfigError("missing key: " + base + "_<m|mm|um|nm>");
    return *v;
}

std::optional<double> Config::optional_inverse_length(const std::string& base) const {
    auto u = find_unit(base, inverse_units);
    if (!u) return std::nullopt;
    return number(u->first) * u->second;
}

double Config::inverse_length(const std::string& base) const {
    auto v = optional_inverse_length(base);
    if (!v) throw ConfigError("missing key: " + base + "_<per_m|per_mm|per_um>");
    return *v;
}

std::vector<double> Config::length_list(const std::string& base) const {
    auto u = find_unit(base, length_units);
    if (!u) return {};
    std::vector<double> out;
    std::stringstream ss(raw(u->first));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(u->first, trim(item)) * u->second);
    return out;
}

void Config::reject_unused() const {
    for (const auto& [key, value] : values_)
        if (!used_.count(key)) throw ConfigError("unknown key: " + key);
}

}  // namespace qmoire
