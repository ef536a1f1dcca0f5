#include "qhgeo/paths.hpp"

#include "qhgeo/parallel.hpp"
#include "qhgeo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qhgeo {

const char* to_string(MetricKind kind) noexcept {
    return kind == MetricKind::QuasiHyperbolic ? "k" : "j";
}

Polyline::Polyline(std::vector<Point> vertices, Unchecked) : v_(std::move(vertices)) {
    if (v_.size() < 2) throw std::invalid_argument("polyline needs at least two vertices");
    const std::size_t dim = v_.front().dim();
    for (const Point& p : v_) {
        if (p.dim() != dim) throw std::invalid_argument("polyline vertices differ in dimension");
    }
}

Polyline::Polyline(std::vector<Point> vertices) : Polyline(std::move(vertices), Unchecked{}) {
    for (std::size_t i = 1; i < v_.size(); ++i) {
        if (v_[i] == v_[i - 1]) throw std::invalid_argument("polyline has repeated consecutive vertices");
    }
}

Polyline Polyline::with_stationary(std::vector<Point> vertices) { return {std::move(vertices), Unchecked{}}; }

Polyline Polyline::constant(const Point& x, std::size_t vertex_count) {
    return with_stationary(std::vector<Point>(std::max<std::size_t>(2, vertex_count), x));
}

Polyline Polyline::reversed() const {
    std::vector<Point> r(v_.rbegin(), v_.rend());
    return {std::move(r), Unchecked{}};
}

double norm_length(const NormSpec& spec, const Polyline& path) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) total += spec(path[i + 1] - path[i]);
    return total;
}

namespace {

// Places n + 1 points at equal spacing of a cumulative per-segment measure;
// `locate(i, remaining)` returns the parameter within segment i.
template <class Locate>
Polyline resample(const Polyline& path, const std::vector<double>& seg, std::size_t n, Locate&& locate) {
    double total = 0.0;
    for (double s : seg) total += s;
    std::vector<Point> out;
    out.reserve(n + 1);
    out.push_back(path.front());
    std::size_t i = 0;
    double before = 0.0;  // measure of segments [0, i)
    for (std::size_t k = 1; k < n; ++k) {
        const double target = total * static_cast<double>(k) / static_cast<double>(n);
        while (i + 1 < seg.size() && before + seg[i] < target) {
            before += seg[i];
            ++i;
        }
        const double u = seg[i] > 0.0 ? std::clamp(locate(i, target - before), 0.0, 1.0) : 0.0;
        out.push_back(lerp(path[i], path[i + 1], u));
    }
    out.push_back(path.back());
    return Polyline::with_stationary(std::move(out));
}

}  // namespace

Polyline arclength_reparameterize(const NormSpec& spec, const Polyline& path, std::size_t n) {
    if (n == 0) throw std::invalid_argument("segment count must be positive");
    std::vector<double> seg(path.segment_count());
    for (std::size_t i = 0; i < seg.size(); ++i) seg[i] = spec(path[i + 1] - path[i]);
    if (norm_length(spec, path) <= 0.0) throw std::invalid_argument("cannot reparameterize a zero-length path");
    return resample(path, seg, n, [&](std::size_t i, double remaining) { return remaining / seg[i]; });
}

Polyline qh_arclength_reparameterize(const Domain& domain, const NormSpec& spec, const Polyline& path,
                                     std::size_t n, double tol) {
    if (n == 0) throw std::invalid_argument("segment count must be positive");
    const std::vector<double> seg = qh_segment_lengths(domain, spec, path, tol);
    double total = 0.0;
    for (double s : seg) total += s;
    if (!(total > 0.0) || !std::isfinite(total))
        throw std::invalid_argument("quasihyperbolic reparameterization needs a finite positive length");
    const double part_tol = tol / static_cast<double>(n);
    return resample(path, seg, n, [&](std::size_t i, double remaining) {
        const Point& p = path[i];
        const Point& q = path[i + 1];
        const double len = spec(q - p);
        auto partial = [&](double u) { return qh_segment_length(domain, spec, p, lerp(p, q, u), part_tol); };
        // safeguarded Newton on the cumulative length, whose derivative is
        // ||q - p|| / d(p + u (q - p))
        double lo = 0.0, hi = 1.0;
        double u = std::clamp(remaining / seg[i], 0.0, 1.0);
        for (int iter = 0; iter < 60 && hi - lo > 1e-13; ++iter) {
            const double g = partial(u) - remaining;
            if (std::abs(g) <= part_tol) return u;
            if (g < 0.0) lo = u;
            else hi = u;
            const double step = g * boundary_distance_unchecked(domain, spec, lerp(p, q, u)) / len;
            const double next = u - step;
            u = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
        }
        return u;
    });
}

double qh_segment_length(const Domain& domain, const NormSpec& spec, const Point& p, const Point& q,
                         double tol) {
    if (p == q) return 0.0;
    const double len = spec(q - p);
    // d is 1-Lipschitz: the endpoint values already certify most segments
    const double dp = boundary_distance_unchecked(domain, spec, p);
    const double dq = boundary_distance_unchecked(domain, spec, q);
    if (!contains(domain, p) || !contains(domain, q)) return kInf;
    if (0.5 * (dp + dq - len) <= kClearanceFloor &&
        min_boundary_distance_on_segment(domain, spec, p, q).min_distance <= 0.0)
        return kInf;
    auto inv_d = [&](double t) { return 1.0 / boundary_distance_unchecked(domain, spec, lerp(p, q, t)); };
    const QuadratureResult r = adaptive_simpson(inv_d, 0.0, 1.0, tol / len);
    return len * r.value;
}

std::vector<double> qh_segment_lengths_serial(const Domain& domain, const NormSpec& spec,
                                              const Polyline& path, double tol) {
    const std::size_t n = path.segment_count();
    const double seg_tol = tol / static_cast<double>(n);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = qh_segment_length(domain, spec, path[i], path[i + 1], seg_tol);
    return out;
}

std::vector<double> qh_segment_lengths(const Domain& domain, const NormSpec& spec, const Polyline& path,
                                       double tol) {
    const std::size_t n = path.segment_count();
    const double seg_tol = tol / static_cast<double>(n);
    std::vector<double> out(n);
    const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_cap()) if (count > 8)
    for (long i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = qh_segment_length(domain, spec, path[k], path[k + 1], seg_tol);
    }
    return out;
}

namespace {

double ordered_sum(const std::vector<double>& xs) {
    double total = 0.0;
    for (double x : xs) total += x;
    return total;
}

}  // namespace

double qh_polyline_length(const Domain& domain, const NormSpec& spec, const Polyline& path, double tol) {
    return ordered_sum(qh_segment_lengths(domain, spec, path, tol));
}

double qh_polyline_length_serial(const Domain& domain, const NormSpec& spec, const Polyline& path,
                                 double tol) {
    return ordered_sum(qh_segment_lengths_serial(domain, spec, path, tol));
}

double j_distance(const Domain& domain, const NormSpec& spec, const Point& x, const Point& y) {
    const double dx = boundary_distance(domain, spec, x);
    const double dy = boundary_distance(domain, spec, y);
    if (x == y) return 0.0;
    return std::log1p(spec(x - y) / std::min(dx, dy));
}

Polyline average_path(const Polyline& path0, const Polyline& path1, double s) {
    if (path0.size() != path1.size()) throw std::invalid_argument("average_path: vertex counts differ");
    if (path0.dim() != path1.dim()) throw std::invalid_argument("average_path: dimensions differ");
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("average_path: s must lie in [0, 1]");
    std::vector<Point> out;
    out.reserve(path0.size());
    for (std::size_t i = 0; i < path0.size(); ++i) out.push_back(lerp(path0[i], path1[i], s));
    return Polyline::with_stationary(std::move(out));
}

Polyline pad_with_endpoint(const Polyline& path, std::size_t vertex_count) {
    if (vertex_count < path.size()) throw std::invalid_argument("pad_with_endpoint: path already longer");
    std::vector<Point> out = path.vertices();
    out.resize(vertex_count, path.back());
    return Polyline::with_stationary(std::move(out));
}

Polyline concat(const Polyline& a, const Polyline& b) {
    if (!(a.back() == b.front())) throw std::invalid_argument("concat: paths do not meet");
    std::vector<Point> out = a.vertices();
    out.insert(out.end(), b.vertices().begin() + 1, b.vertices().end());
    return Polyline::with_stationary(std::move(out));
}

}  // namespace qhgeo
