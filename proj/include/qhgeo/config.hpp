#pragma once

#include "qhgeo/domain.hpp"
#include "qhgeo/norm.hpp"
#include "qhgeo/point.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qhgeo {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat `key = value` text. `#` starts a comment, blank lines are skipped,
// keys are case-sensitive and may repeat only once (a second assignment is an
// error). Lists are comma or whitespace separated; point lists separate
// points with `;`.
class Config {
public:
    Config() = default;
    static Config parse(std::string_view text, const std::string& source = "<config>");
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
    Point get_point(const std::string& key) const;
    std::vector<Point> get_points(const std::string& key) const;

    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
    std::string source_;
};

// Real number parsing shared with the CLI; accepts "inf".
double parse_real(std::string_view text);

// `norm = <p>` (1..inf), optional `weights = w0 w1 ...`, `dim` (default 2,
// or the number of weights).
NormSpec norm_from_config(const Config& cfg);

// `domain = punctured | half_space | polytope | notched_box` with
//   punctured:   punctures = x y; x y; ...
//   half_space:  normal = a0 a1, offset = b      ({a.x + b < 0})
//   polytope:    faces = a0 a1 b; a0 a1 b; ...
//   notched_box: lower, upper, notch_lower, notch_upper
Domain domain_from_config(const Config& cfg);

}  // namespace qhgeo
