#include "qhgeo/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qhgeo {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

const char* to_string(Relation rel) noexcept {
    switch (rel) {
        case Relation::LessEq: return "<=";
        case Relation::GreaterEq: return ">=";
        case Relation::Less: return "<";
        case Relation::Greater: return ">";
    }
    return "?";
}

void ReportDocument::input(const std::string& key, std::string value) {
    inputs_.emplace_back(key, std::move(value));
}

void ReportDocument::input(const std::string& key, double value) { input(key, format_double(value)); }

void ReportDocument::set(const std::string& name, double value) {
    for (auto& q : quantities_) {
        if (q.first == name) {
            q.second = value;
            return;
        }
    }
    quantities_.emplace_back(name, value);
}

double ReportDocument::get(const std::string& name) const {
    for (const auto& q : quantities_) {
        if (q.first == name) return q.second;
    }
    throw std::out_of_range("no quantity named " + name);
}

bool ReportDocument::has(const std::string& name) const {
    return std::any_of(quantities_.begin(), quantities_.end(), [&](const auto& q) { return q.first == name; });
}

const Verdict& ReportDocument::check(const std::string& name, const std::string& quantity, Relation rel,
                                     double threshold) {
    const double v = get(quantity);
    bool ok = false;
    switch (rel) {
        case Relation::LessEq: ok = v <= threshold; break;
        case Relation::GreaterEq: ok = v >= threshold; break;
        case Relation::Less: ok = v < threshold; break;
        case Relation::Greater: ok = v > threshold; break;
    }
    verdicts_.push_back({name, quantity, rel, threshold, ok});
    return verdicts_.back();
}

void ReportDocument::witness(std::string line) { witnesses_.push_back(std::move(line)); }

void ReportDocument::conclude(const std::string& key, std::string text) {
    conclusions_.emplace_back(key, std::move(text));
}

void ReportDocument::absorb(const ReportDocument& other, const std::string& prefix) {
    for (const auto& [k, v] : other.quantities_) set(prefix + k, v);
    for (Verdict v : other.verdicts_) {
        v.name = prefix + v.name;
        v.quantity = prefix + v.quantity;
        verdicts_.push_back(std::move(v));
    }
    for (const auto& w : other.witnesses_) witnesses_.push_back(prefix + w);
    for (const auto& [k, v] : other.conclusions_) conclusions_.emplace_back(prefix + k, v);
}

bool ReportDocument::passed() const noexcept {
    return std::all_of(verdicts_.begin(), verdicts_.end(), [](const Verdict& v) { return v.passed; });
}

std::string ReportDocument::text() const {
    std::ostringstream os;
    os << "experiment: " << experiment_ << '\n';
    for (const auto& [k, v] : inputs_) os << "input." << k << ": " << v << '\n';
    for (const auto& [k, v] : quantities_) os << "quantity." << k << ": " << format_double(v) << '\n';
    for (const Verdict& v : verdicts_) {
        os << "verdict." << v.name << ": " << (v.passed ? "pass" : "FAIL") << " (" << v.quantity << ' '
           << to_string(v.relation) << ' ' << format_double(v.threshold) << ")\n";
    }
    for (std::size_t i = 0; i < witnesses_.size(); ++i) os << "witness." << i << ": " << witnesses_[i] << '\n';
    for (const auto& [k, v] : conclusions_) os << "conclusion." << k << ": " << v << '\n';
    os << "passed: " << (passed() ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace qhgeo
