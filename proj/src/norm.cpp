#include "qhgeo/norm.hpp"

#include "qhgeo/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qhgeo {

std::string to_string(const Point& p) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? ", " : "") << p[i];
    os << ')';
    return os.str();
}

NormSpec::NormSpec(NormKind kind, double p, std::size_t dim, std::vector<double> weights)
    : kind_(kind), p_(p), dim_(dim), weights_(std::move(weights)) {
    if (!(p_ >= 1.0)) throw std::invalid_argument("norm exponent must satisfy p >= 1");
    if (dim_ < 2) throw std::invalid_argument("norm dimension must be at least 2");
    if (kind_ == NormKind::WeightedPNorm) {
        if (weights_.size() != dim_) throw std::invalid_argument("weights length must equal dim");
        for (double w : weights_) {
            if (!(w > 0.0) || !std::isfinite(w))
                throw std::invalid_argument("norm weights must be positive and finite");
        }
    }
}

NormSpec NormSpec::p_norm(std::size_t dim, double p) { return {NormKind::PNorm, p, dim, {}}; }

NormSpec NormSpec::weighted(std::vector<double> weights, double p) {
    const std::size_t dim = weights.size();
    return {NormKind::WeightedPNorm, p, dim, std::move(weights)};
}

namespace {

// ||v||_p with optional per-coordinate scale: |v_i| * scale_i.
template <class Scale>
double p_norm_impl(const Point& v, double p, Scale&& scale) {
    const std::size_t n = v.dim();
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]) * scale(i));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(v[i]) * scale(i);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = v[i] * scale(i);
            s += a * a;
        }
        return std::sqrt(s);
    }
    // Factor out the largest entry so that pow() does not overflow/underflow.
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]) * scale(i));
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(v[i]) * scale(i) / m, p);
    return m * std::pow(s, 1.0 / p);
}

}  // namespace

double NormSpec::operator()(const Point& v) const {
    if (v.dim() != dim_) throw std::invalid_argument("vector dimension does not match norm");
    if (kind_ == NormKind::PNorm) return p_norm_impl(v, p_, [](std::size_t) { return 1.0; });
    return p_norm_impl(v, p_, [this](std::size_t i) { return weights_[i]; });
}

double NormSpec::dual(const Point& a) const {
    if (a.dim() != dim_) throw std::invalid_argument("vector dimension does not match norm");
    const double q = dual_exponent(p_);
    if (kind_ == NormKind::PNorm) return p_norm_impl(a, q, [](std::size_t) { return 1.0; });
    return p_norm_impl(a, q, [this](std::size_t i) { return 1.0 / weights_[i]; });
}

std::string NormSpec::describe() const {
    std::ostringstream os;
    os << (kind_ == NormKind::PNorm ? "l^" : "weighted l^");
    if (std::isinf(p_)) {
        os << "inf";
    } else {
        os << p_;
    }
    os << '(' << dim_ << ')';
    return os.str();
}

double norm(const NormSpec& spec, const Point& v) { return spec(v); }

double dual_norm(const NormSpec& spec, const Point& a) { return spec.dual(a); }

double dual_exponent(double p) {
    if (p == 1.0) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// A 2-D section of the unit sphere, parameterized by angle.
struct SphereChart {
    const NormSpec* spec;
    Point e1;
    Point e2;

    Point direction(double theta) const {
        Point u = std::cos(theta) * e1 + std::sin(theta) * e2;
        return u;
    }
    Point at(double theta) const {
        Point u = direction(theta);
        return u * (1.0 / (*spec)(u));
    }
};

std::vector<SphereChart> make_charts(const NormSpec& spec, std::size_t count, std::uint64_t seed) {
    std::vector<SphereChart> charts;
    const std::size_t n = spec.dim();
    if (n == 2) {
        charts.push_back({&spec, Point{1.0, 0.0}, Point{0.0, 1.0}});
        return charts;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (std::size_t c = 0; c < count; ++c) {
        Point a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = gauss(rng);
            b[i] = gauss(rng);
        }
        a *= 1.0 / std::sqrt(dot(a, a));
        b -= dot(a, b) * a;
        const double nb = std::sqrt(dot(b, b));
        if (nb < 1e-12) {
            --c;
            continue;
        }
        b *= 1.0 / nb;
        charts.push_back({&spec, a, b});
    }
    return charts;
}

// For x = chart.at(theta), the angular offset phi in (0, pi] with
// ||x - chart.at(theta + phi)|| = eps. Distance from x grows monotonically
// along the arc from x to -x, where it equals 2, so bisection is safe; eps = 2
// lands at the clamped end of the chart.
double partner_offset(const SphereChart& chart, const Point& x, double theta, double eps) {
    const NormSpec& spec = *chart.spec;
    auto g = [&](double phi) { return spec(x - chart.at(theta + phi)); };
    return bisect_crossing(g, 0.0, std::numbers::pi, eps, 1e-15);
}

}  // namespace

ModulusEstimate modulus_of_convexity_estimate(const NormSpec& spec, double eps,
                                              std::int64_t budget, std::uint64_t seed) {
    if (!(eps > 0.0 && eps <= 2.0)) throw std::invalid_argument("eps must lie in (0, 2]");
    if (budget < 8) throw std::invalid_argument("sample budget too small");

    const std::size_t n_charts =
        spec.dim() == 2 ? 1 : static_cast<std::size_t>(std::max<std::int64_t>(1, budget / 256));
    const auto charts = make_charts(spec, n_charts, seed);
    const std::int64_t per_chart = std::max<std::int64_t>(8, budget / static_cast<std::int64_t>(charts.size()));

    ModulusEstimate best{eps, 1.0, 0};
    for (const SphereChart& chart : charts) {
        auto depth = [&](double theta) {
            const Point x = chart.at(theta);
            const double phi = partner_offset(chart, x, theta, eps);
            const Point y = chart.at(theta + phi);
            return 1.0 - spec(x + y) / 2.0;
        };
        double best_theta = 0.0;
        double best_val = kInf;
        for (std::int64_t k = 0; k < per_chart; ++k) {
            const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(per_chart);
            const double v = depth(theta);
            if (v < best_val) {
                best_val = v;
                best_theta = theta;
            }
        }
        const double h = kTwoPi / static_cast<double>(per_chart);
        const ScalarMin polished = golden_section_min(depth, best_theta - h, best_theta + h, 1e-13);
        best_val = std::min(best_val, polished.value);
        best.value = std::min(best.value, best_val);
        best.samples_used += per_chart;
    }
    best.value = std::clamp(best.value, 0.0, 1.0);
    return best;
}

ModulusEstimate modulus_of_smoothness_estimate(const NormSpec& spec, double tau,
                                               std::int64_t budget, std::uint64_t seed) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
    if (budget < 16) throw std::invalid_argument("sample budget too small");

    const std::size_t n_charts =
        spec.dim() == 2 ? 1 : static_cast<std::size_t>(std::max<std::int64_t>(1, budget / 1024));
    const auto charts = make_charts(spec, n_charts, seed);
    const auto per_chart = budget / static_cast<std::int64_t>(charts.size());
    const auto side = std::max<std::int64_t>(4, static_cast<std::int64_t>(std::sqrt(static_cast<double>(per_chart))));

    ModulusEstimate best{tau, 0.0, 0};
    for (const SphereChart& chart : charts) {
        auto excess = [&](double theta, double psi) {
            const Point x = chart.at(theta);
            const Point y = chart.at(psi) * tau;
            return (spec(x + y) + spec(x - y)) / 2.0 - 1.0;
        };
        double bt = 0.0, bp = 0.0, bv = -kInf;
        for (std::int64_t i = 0; i < side; ++i) {
            for (std::int64_t k = 0; k < side; ++k) {
                const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(side);
                const double psi = kTwoPi * static_cast<double>(k) / static_cast<double>(side);
                const double v = excess(theta, psi);
                if (v > bv) {
                    bv = v;
                    bt = theta;
                    bp = psi;
                }
            }
        }
        // Alternating golden-section polish with shrinking windows.
        double h = kTwoPi / static_cast<double>(side);
        for (int round = 0; round < 12; ++round) {
            const auto t = golden_section_min([&](double th) { return -excess(th, bp); }, bt - h, bt + h, 1e-13);
            bt = t.arg;
            const auto s = golden_section_min([&](double ps) { return -excess(bt, ps); }, bp - h, bp + h, 1e-13);
            bp = s.arg;
            bv = std::max(bv, -s.value);
            h *= 0.5;
        }
        best.value = std::max(best.value, bv);
        best.samples_used += side * side;
    }
    best.value = std::max(best.value, 0.0);
    return best;
}

}  // namespace qhgeo
