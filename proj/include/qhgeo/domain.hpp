#pragma once

#include "qhgeo/norm.hpp"
#include "qhgeo/point.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qhgeo {

// R^n minus a finite set of points.
struct PuncturedSpace {
    std::vector<Point> punctures;
};

// The open half-space {x : a.x + b < 0}.
struct HalfSpace {
    Point normal;
    double offset = 0.0;
};

// Finite intersection of open half-spaces with nonempty interior.
struct ConvexPolytope {
    std::vector<HalfSpace> faces;
    Point interior_point;  // certified at construction
};

// An open axis-aligned box with a closed axis-aligned box removed. With the
// notch in a corner this is the L-shaped domain, starlike with respect to the
// points that see the reflex corner.
struct NotchedBox {
    Point lower;
    Point upper;
    Point notch_lower;
    Point notch_upper;
};

class Domain {
public:
    using Variant = std::variant<PuncturedSpace, HalfSpace, ConvexPolytope, NotchedBox>;

    static Domain punctured(std::vector<Point> punctures);
    static Domain half_space(Point normal, double offset);
    static Domain polytope(std::vector<HalfSpace> faces);
    static Domain notched_box(Point lower, Point upper, Point notch_lower, Point notch_upper);

    const Variant& variant() const noexcept { return v_; }
    std::size_t dim() const noexcept { return dim_; }
    bool is_convex() const noexcept;
    std::string describe() const;

    template <class T>
    const T* as() const noexcept {
        return std::get_if<T>(&v_);
    }

private:
    Domain(Variant v, std::size_t dim) : v_(std::move(v)), dim_(dim) {}

    Variant v_;
    std::size_t dim_;
};

struct ClearanceResult {
    double min_distance = 0.0;
    double argmin_parameter = 0.0;
};

// Minimum segment clearance treated as touching the boundary.
inline constexpr double kClearanceFloor = 1e-12;

// x in the open set; punctures and boundary points are excluded exactly.
// Throws std::invalid_argument on dimension mismatch.
bool contains(const Domain& domain, const Point& x);

// d(x) = dist(x, complement of the domain) under `spec`. Throws
// std::domain_error when x is not in the domain.
double boundary_distance(const Domain& domain, const NormSpec& spec, const Point& x);

// Same as boundary_distance but without the membership check; returns the
// distance to the complement pieces, which is 0 or meaningless outside.
double boundary_distance_unchecked(const Domain& domain, const NormSpec& spec, const Point& x);

// min over t in [0,1] of d(p + t (q - p)). A segment that touches or leaves
// the domain reports min_distance = 0 with the offending parameter.
ClearanceResult min_boundary_distance_on_segment(const Domain& domain, const NormSpec& spec,
                                                 const Point& p, const Point& q);

// Distance from x to the closed box [lo, hi]; exact for absolute norms.
double distance_to_box(const NormSpec& spec, const Point& x, const Point& lo, const Point& hi);

}  // namespace qhgeo
