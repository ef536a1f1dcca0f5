#include "qhgeo/domain.hpp"

#include "qhgeo/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qhgeo {

namespace {

void require_dim(const Point& p, std::size_t dim, const char* what) {
    if (p.dim() != dim) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

double euclid(const Point& a) { return std::sqrt(dot(a, a)); }

// Solves the square system A x = b in place (row-major, n x n) with partial
// pivoting. Returns false when the system is numerically singular.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        }
        if (std::abs(a[piv * n + col]) < 1e-12) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * b[c];
        b[i] = s / a[i * n + i];
    }
    return true;
}

// Finds a point of maximal (capped) Euclidean depth inside the polytope by
// enumerating vertices of the depth LP
//     maximize s  subject to  a_i.x + b_i + s |a_i| <= 0,  s <= 1,  |x_j| <= 1e6.
// Returns nullopt when the best depth is not positive.
std::optional<Point> chebyshev_point(const std::vector<HalfSpace>& faces, std::size_t dim) {
    struct Row {
        std::vector<double> coef;  // over (x, s)
        double rhs;
    };
    const std::size_t nv = dim + 1;
    std::vector<Row> rows;
    for (const HalfSpace& f : faces) {
        Row r{std::vector<double>(nv), -f.offset};
        for (std::size_t j = 0; j < dim; ++j) r.coef[j] = f.normal[j];
        r.coef[dim] = euclid(f.normal);
        rows.push_back(std::move(r));
    }
    {
        Row cap{std::vector<double>(nv, 0.0), 1.0};
        cap.coef[dim] = 1.0;
        rows.push_back(std::move(cap));
    }
    constexpr double kBox = 1e6;
    for (std::size_t j = 0; j < dim; ++j) {
        Row hi{std::vector<double>(nv, 0.0), kBox};
        hi.coef[j] = 1.0;
        Row lo{std::vector<double>(nv, 0.0), kBox};
        lo.coef[j] = -1.0;
        rows.push_back(std::move(hi));
        rows.push_back(std::move(lo));
    }

    const std::size_t m = rows.size();
    std::vector<std::size_t> pick(nv);
    std::iota(pick.begin(), pick.end(), 0);
    double best_s = 0.0;
    std::optional<Point> best;
    while (true) {
        std::vector<double> a(nv * nv), b(nv);
        for (std::size_t r = 0; r < nv; ++r) {
            for (std::size_t c = 0; c < nv; ++c) a[r * nv + c] = rows[pick[r]].coef[c];
            b[r] = rows[pick[r]].rhs;
        }
        if (solve_dense(a, b, nv)) {
            bool feasible = true;
            for (const Row& row : rows) {
                double lhs = 0.0;
                for (std::size_t c = 0; c < nv; ++c) lhs += row.coef[c] * b[c];
                if (lhs > row.rhs + 1e-9 * (1.0 + std::abs(row.rhs))) {
                    feasible = false;
                    break;
                }
            }
            if (feasible && b[dim] > best_s) {
                best_s = b[dim];
                Point x(dim);
                for (std::size_t j = 0; j < dim; ++j) x[j] = b[j];
                best = x;
            }
        }
        // next combination
        std::size_t i = nv;
        while (i > 0 && pick[i - 1] == m - nv + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t k = i; k < nv; ++k) pick[k] = pick[k - 1] + 1;
    }
    if (best_s <= 1e-12) return std::nullopt;
    return best;
}

// Signed clearance of x from a face (positive inside).
double face_clearance(const HalfSpace& h, const NormSpec& spec, const Point& x) {
    return -(dot(h.normal, x) + h.offset) / spec.dual(h.normal);
}

bool in_closed_box(const Point& x, const Point& lo, const Point& hi) {
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    }
    return true;
}

Point axis(std::size_t dim, std::size_t i) {
    Point e(dim);
    e[i] = 1.0;
    return e;
}

double outer_box_clearance(const NotchedBox& nb, const NormSpec& spec, const Point& x) {
    double d = kInf;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const double scale = spec.dual(axis(x.dim(), i));
        d = std::min(d, (x[i] - nb.lower[i]) / scale);
        d = std::min(d, (nb.upper[i] - x[i]) / scale);
    }
    return d;
}

}  // namespace

double distance_to_box(const NormSpec& spec, const Point& x, const Point& lo, const Point& hi) {
    Point delta(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
        delta[i] = x[i] - std::clamp(x[i], lo[i], hi[i]);
    }
    return spec(delta);
}

Domain Domain::punctured(std::vector<Point> punctures) {
    if (punctures.empty()) throw std::invalid_argument("punctured space needs at least one puncture");
    const std::size_t dim = punctures.front().dim();
    if (dim < 2) throw std::invalid_argument("domain dimension must be at least 2");
    for (std::size_t i = 0; i < punctures.size(); ++i) {
        require_dim(punctures[i], dim, "puncture");
        for (std::size_t k = 0; k < i; ++k) {
            if (punctures[i] == punctures[k]) throw std::invalid_argument("punctures must be distinct");
        }
    }
    return {PuncturedSpace{std::move(punctures)}, dim};
}

Domain Domain::half_space(Point normal, double offset) {
    const std::size_t dim = normal.dim();
    if (dim < 2) throw std::invalid_argument("domain dimension must be at least 2");
    if (euclid(normal) == 0.0) throw std::invalid_argument("half-space normal must be nonzero");
    if (!std::isfinite(offset)) throw std::invalid_argument("half-space offset must be finite");
    return {HalfSpace{std::move(normal), offset}, dim};
}

Domain Domain::polytope(std::vector<HalfSpace> faces) {
    if (faces.empty()) throw std::invalid_argument("polytope needs at least one face");
    const std::size_t dim = faces.front().normal.dim();
    if (dim < 2) throw std::invalid_argument("domain dimension must be at least 2");
    for (const HalfSpace& f : faces) {
        require_dim(f.normal, dim, "polytope face");
        if (euclid(f.normal) == 0.0) throw std::invalid_argument("polytope face normal must be nonzero");
    }
    auto inner = chebyshev_point(faces, dim);
    if (!inner) throw std::invalid_argument("polytope has empty interior");
    return {ConvexPolytope{std::move(faces), *inner}, dim};
}

Domain Domain::notched_box(Point lower, Point upper, Point notch_lower, Point notch_upper) {
    const std::size_t dim = lower.dim();
    if (dim < 2) throw std::invalid_argument("domain dimension must be at least 2");
    require_dim(upper, dim, "box");
    require_dim(notch_lower, dim, "notch");
    require_dim(notch_upper, dim, "notch");
    bool notch_covers = true;
    for (std::size_t i = 0; i < dim; ++i) {
        if (!(lower[i] < upper[i])) throw std::invalid_argument("box must have lower < upper");
        if (!(notch_lower[i] <= notch_upper[i])) throw std::invalid_argument("notch must have lower <= upper");
        if (notch_lower[i] > lower[i] || notch_upper[i] < upper[i]) notch_covers = false;
    }
    if (notch_covers) throw std::invalid_argument("notch removes the whole box");
    return {NotchedBox{std::move(lower), std::move(upper), std::move(notch_lower), std::move(notch_upper)}, dim};
}

bool Domain::is_convex() const noexcept {
    return std::holds_alternative<HalfSpace>(v_) || std::holds_alternative<ConvexPolytope>(v_);
}

std::string Domain::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PuncturedSpace>) {
                os << "punctured{";
                for (std::size_t i = 0; i < d.punctures.size(); ++i)
                    os << (i ? ", " : "") << to_string(d.punctures[i]);
                os << '}';
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                os << "halfspace{a=" << to_string(d.normal) << ", b=" << d.offset << '}';
            } else if constexpr (std::is_same_v<T, ConvexPolytope>) {
                os << "polytope{" << d.faces.size() << " faces}";
            } else {
                os << "notched_box{" << to_string(d.lower) << ".." << to_string(d.upper) << " minus "
                   << to_string(d.notch_lower) << ".." << to_string(d.notch_upper) << '}';
            }
        },
        v_);
    return os.str();
}

bool contains(const Domain& domain, const Point& x) {
    require_dim(x, domain.dim(), "contains");
    return std::visit(
        [&](const auto& d) -> bool {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PuncturedSpace>) {
                return std::none_of(d.punctures.begin(), d.punctures.end(),
                                    [&](const Point& z) { return z == x; });
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                return dot(d.normal, x) + d.offset < 0.0;
            } else if constexpr (std::is_same_v<T, ConvexPolytope>) {
                return std::all_of(d.faces.begin(), d.faces.end(),
                                   [&](const HalfSpace& h) { return dot(h.normal, x) + h.offset < 0.0; });
            } else {
                for (std::size_t i = 0; i < x.dim(); ++i) {
                    if (!(x[i] > d.lower[i] && x[i] < d.upper[i])) return false;
                }
                return !in_closed_box(x, d.notch_lower, d.notch_upper);
            }
        },
        domain.variant());
}

double boundary_distance_unchecked(const Domain& domain, const NormSpec& spec, const Point& x) {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PuncturedSpace>) {
                double m = kInf;
                for (const Point& z : d.punctures) m = std::min(m, spec(x - z));
                return m;
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                return std::abs(dot(d.normal, x) + d.offset) / spec.dual(d.normal);
            } else if constexpr (std::is_same_v<T, ConvexPolytope>) {
                double m = kInf;
                for (const HalfSpace& h : d.faces) m = std::min(m, face_clearance(h, spec, x));
                return std::max(m, 0.0);
            } else {
                const double outer = outer_box_clearance(d, spec, x);
                const double notch = distance_to_box(spec, x, d.notch_lower, d.notch_upper);
                return std::max(0.0, std::min(outer, notch));
            }
        },
        domain.variant());
}

double boundary_distance(const Domain& domain, const NormSpec& spec, const Point& x) {
    if (spec.dim() != domain.dim()) throw std::invalid_argument("norm and domain dimensions differ");
    if (!contains(domain, x)) throw std::domain_error("boundary_distance: point " + to_string(x) + " is not in the domain");
    return boundary_distance_unchecked(domain, spec, x);
}

ClearanceResult min_boundary_distance_on_segment(const Domain& domain, const NormSpec& spec,
                                                 const Point& p, const Point& q) {
    require_dim(p, domain.dim(), "segment");
    require_dim(q, domain.dim(), "segment");
    ClearanceResult best{kInf, 0.0};
    auto consider = [&](double value, double t) {
        if (value < best.min_distance) best = {value, t};
    };
    // An affine clearance is minimized at an endpoint.
    auto affine = [&](double at0, double at1) {
        consider(at0, 0.0);
        consider(at1, 1.0);
    };
    auto convex_along = [&](auto&& dist) {
        const ScalarMin m = golden_section_min([&](double t) { return dist(lerp(p, q, t)); }, 0.0, 1.0, 1e-12);
        consider(m.value, m.arg);
    };

    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, PuncturedSpace>) {
                for (const Point& z : d.punctures) convex_along([&](const Point& x) { return spec(x - z); });
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                affine(face_clearance(d, spec, p), face_clearance(d, spec, q));
            } else if constexpr (std::is_same_v<T, ConvexPolytope>) {
                for (const HalfSpace& h : d.faces) affine(face_clearance(h, spec, p), face_clearance(h, spec, q));
            } else {
                affine(outer_box_clearance(d, spec, p), outer_box_clearance(d, spec, q));
                convex_along([&](const Point& x) { return distance_to_box(spec, x, d.notch_lower, d.notch_upper); });
            }
        },
        domain.variant());

    if (best.min_distance <= kClearanceFloor) best.min_distance = 0.0;
    return best;
}

}  // namespace qhgeo
