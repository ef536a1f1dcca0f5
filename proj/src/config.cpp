#include "qhgeo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qhgeo {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_any(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto b = s.find_first_not_of(seps, pos);
        if (b == std::string_view::npos) break;
        auto e = s.find_first_of(seps, b);
        if (e == std::string_view::npos) e = s.size();
        out.push_back(s.substr(b, e - b));
        pos = e;
    }
    return out;
}

std::vector<double> parse_list(std::string_view s, const std::string& key) {
    std::vector<double> out;
    for (std::string_view tok : split_any(s, " \t,")) {
        try {
            out.push_back(parse_real(tok));
        } catch (const ConfigError& e) {
            throw ConfigError(key + ": " + e.what());
        }
    }
    return out;
}

}  // namespace

double parse_real(std::string_view text) {
    const std::string_view t = trim(text);
    if (t == "inf" || t == "+inf" || t == "infinity") return kInf;
    if (t == "-inf") return -kInf;
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || t.empty())
        throw ConfigError("not a number: '" + std::string(t) + "'");
    return v;
}

Config Config::parse(std::string_view text, const std::string& source) {
    Config cfg;
    cfg.source_ = source;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(line_no);
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (!cfg.values_.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

std::string Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    try {
        return parse_real(get_string(key));
    } catch (const ConfigError& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string s = get_string(key);
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty())
        throw ConfigError(key + ": not an integer: '" + s + "'");
    return v;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string s = get_string(key);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty())
        throw ConfigError(key + ": not an unsigned integer: '" + s + "'");
    return v;
}

std::vector<double> Config::get_doubles(const std::string& key) const {
    return parse_list(get_string(key), key);
}

std::vector<double> Config::get_doubles(const std::string& key, std::vector<double> fallback) const {
    return has(key) ? get_doubles(key) : fallback;
}

Point Config::get_point(const std::string& key) const {
    const std::vector<double> xs = get_doubles(key);
    if (xs.empty()) throw ConfigError(key + ": empty point");
    return Point(std::span<const double>(xs));
}

std::vector<Point> Config::get_points(const std::string& key) const {
    std::vector<Point> out;
    const std::string s = get_string(key);
    for (std::string_view part : split_any(s, ";")) {
        if (trim(part).empty()) continue;
        const std::vector<double> xs = parse_list(part, key);
        out.emplace_back(std::span<const double>(xs));
    }
    if (out.empty()) throw ConfigError(key + ": no points");
    return out;
}

NormSpec norm_from_config(const Config& cfg) {
    const double p = cfg.get_double("norm", 2.0);
    try {
        if (cfg.has("weights")) return NormSpec::weighted(cfg.get_doubles("weights"), p);
        const std::int64_t dim = cfg.get_int("dim", 2);
        if (dim < 2) throw ConfigError("dim must be at least 2");
        return NormSpec::p_norm(static_cast<std::size_t>(dim), p);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("norm: ") + e.what());
    }
}

Domain domain_from_config(const Config& cfg) {
    const std::string kind = cfg.get_string("domain");
    try {
        if (kind == "punctured") return Domain::punctured(cfg.get_points("punctures"));
        if (kind == "half_space") return Domain::half_space(cfg.get_point("normal"), cfg.get_double("offset", 0.0));
        if (kind == "polytope") {
            std::vector<HalfSpace> faces;
            for (const Point& row : cfg.get_points("faces")) {
                if (row.dim() < 3) throw ConfigError("faces: each face needs a normal and an offset");
                Point a(row.dim() - 1);
                for (std::size_t i = 0; i + 1 < row.dim(); ++i) a[i] = row[i];
                faces.push_back({a, row[row.dim() - 1]});
            }
            return Domain::polytope(std::move(faces));
        }
        if (kind == "notched_box")
            return Domain::notched_box(cfg.get_point("lower"), cfg.get_point("upper"), cfg.get_point("notch_lower"),
                                       cfg.get_point("notch_upper"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("domain: " + std::string(e.what()));
    }
    throw ConfigError("unknown domain '" + kind + "'");
}

}  // namespace qhgeo
