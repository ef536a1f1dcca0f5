#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qhgeo {

// Shortest decimal that parses back to the same double; "inf", "-inf" and
// "nan" for the special values.
std::string format_double(double v);

enum class Relation { LessEq, GreaterEq, Less, Greater };

const char* to_string(Relation rel) noexcept;

struct Verdict {
    std::string name;
    std::string quantity;
    Relation relation = Relation::LessEq;
    double threshold = 0.0;
    bool passed = false;
};

// Result of one experiment: echoed inputs, named quantities, verdicts that
// compare a quantity against a threshold, and free-form witness lines.
class ReportDocument {
public:
    explicit ReportDocument(std::string experiment) : experiment_(std::move(experiment)) {}

    void input(const std::string& key, std::string value);
    void input(const std::string& key, double value);

    // Inserts or overwrites; first insertion fixes the output position.
    void set(const std::string& name, double value);
    double get(const std::string& name) const;  // throws std::out_of_range
    bool has(const std::string& name) const;

    // Evaluates the stored quantity; NaN never passes.
    const Verdict& check(const std::string& name, const std::string& quantity, Relation rel, double threshold);

    void witness(std::string line);
    void conclude(const std::string& key, std::string text);

    // Appends another report's quantities, verdicts and witnesses with every
    // name prefixed by `prefix`.
    void absorb(const ReportDocument& other, const std::string& prefix);

    const std::string& experiment() const noexcept { return experiment_; }
    const std::vector<std::pair<std::string, std::string>>& inputs() const noexcept { return inputs_; }
    const std::vector<std::pair<std::string, double>>& quantities() const noexcept { return quantities_; }
    const std::vector<Verdict>& verdicts() const noexcept { return verdicts_; }
    const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }
    const std::vector<std::pair<std::string, std::string>>& conclusions() const noexcept { return conclusions_; }

    bool passed() const noexcept;

    // `key: value` lines.
    std::string text() const;

private:
    std::string experiment_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<std::pair<std::string, double>> quantities_;
    std::vector<Verdict> verdicts_;
    std::vector<std::string> witnesses_;
    std::vector<std::pair<std::string, std::string>> conclusions_;
};

}  // namespace qhgeo
