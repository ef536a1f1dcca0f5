#pragma once

#include "qhgeo/domain.hpp"
#include "qhgeo/norm.hpp"
#include "qhgeo/point.hpp"

#include <span>
#include <vector>

namespace qhgeo {

enum class MetricKind { QuasiHyperbolic, DistanceRatio };

const char* to_string(MetricKind kind) noexcept;

// A broken line through at least two vertices of equal dimension.
//
// The regular constructor rejects repeated consecutive vertices. Padded paths
// (a path held at its endpoint) and the constant path are built with
// with_stationary(); their zero-length segments contribute nothing to any
// length.
class Polyline {
public:
    explicit Polyline(std::vector<Point> vertices);
    static Polyline with_stationary(std::vector<Point> vertices);
    static Polyline constant(const Point& x, std::size_t vertex_count);

    const std::vector<Point>& vertices() const noexcept { return v_; }
    const Point& operator[](std::size_t i) const noexcept { return v_[i]; }
    std::size_t size() const noexcept { return v_.size(); }
    std::size_t segment_count() const noexcept { return v_.size() - 1; }
    std::size_t dim() const noexcept { return v_.front().dim(); }
    const Point& front() const noexcept { return v_.front(); }
    const Point& back() const noexcept { return v_.back(); }

    Polyline reversed() const;

private:
    struct Unchecked {};
    Polyline(std::vector<Point> vertices, Unchecked);

    std::vector<Point> v_;
};

// Sum of segment norms; for broken lines the supremum over partitions is
// attained at the vertices.
double norm_length(const NormSpec& spec, const Polyline& path);

// n + 1 vertices at equal norm-arclength spacing along `path`. Throws
// std::invalid_argument for a zero-length path or n == 0.
Polyline arclength_reparameterize(const NormSpec& spec, const Polyline& path, std::size_t n);

// n + 1 vertices at equal quasihyperbolic-arclength spacing, located by
// inverting the cumulative quasihyperbolic length.
Polyline qh_arclength_reparameterize(const Domain& domain, const NormSpec& spec, const Polyline& path,
                                     std::size_t n, double tol = 1e-10);

inline constexpr double kDefaultQuadTol = 1e-8;

// ||q - p|| * int_0^1 dt / d(p + t (q - p)) by adaptive Simpson with absolute
// error tol. Returns +inf when the segment touches the boundary.
double qh_segment_length(const Domain& domain, const NormSpec& spec, const Point& p, const Point& q,
                         double tol = kDefaultQuadTol);

// Per-segment quasihyperbolic lengths, each to tol / segment_count.
// Segments run in parallel (OpenMP); the serial variant is the reference.
std::vector<double> qh_segment_lengths(const Domain& domain, const NormSpec& spec, const Polyline& path,
                                       double tol = kDefaultQuadTol);
std::vector<double> qh_segment_lengths_serial(const Domain& domain, const NormSpec& spec,
                                              const Polyline& path, double tol = kDefaultQuadTol);

// Sum of qh_segment_lengths in segment order; +inf if any segment is
// infeasible.
double qh_polyline_length(const Domain& domain, const NormSpec& spec, const Polyline& path,
                          double tol = kDefaultQuadTol);
double qh_polyline_length_serial(const Domain& domain, const NormSpec& spec, const Polyline& path,
                                 double tol = kDefaultQuadTol);

// log(1 + ||x - y|| / min(d(x), d(y))). Throws std::domain_error when either
// point lies outside the domain.
double j_distance(const Domain& domain, const NormSpec& spec, const Point& x, const Point& y);

// Vertex-wise s * path1 + (1 - s) * path0. Throws std::invalid_argument when
// the vertex counts differ or s is outside [0, 1].
Polyline average_path(const Polyline& path0, const Polyline& path1, double s);

// Holds the path at its endpoint until it has `vertex_count` vertices.
Polyline pad_with_endpoint(const Polyline& path, std::size_t vertex_count);

// a followed by b; a.back() must equal b.front().
Polyline concat(const Polyline& a, const Polyline& b);

}  // namespace qhgeo
