#include "qhgeo/geodesic.hpp"

#include "qhgeo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>

namespace qhgeo {

void SolverParams::validate() const {
    if (!(grid_spacing > 0.0) || !std::isfinite(grid_spacing))
        throw std::invalid_argument("grid_spacing must be positive");
    if (!(grid_margin >= 0.0)) throw std::invalid_argument("grid_margin must be non-negative");
    if (neighbor_stencil != 8 && neighbor_stencil != 16)
        throw std::invalid_argument("neighbor_stencil must be 8 or 16");
    if (refine_rounds < 0) throw std::invalid_argument("refine_rounds must be non-negative");
    if (!(refine_step > 0.0)) throw std::invalid_argument("refine_step must be positive");
    if (!(quad_tol > 0.0)) throw std::invalid_argument("quad_tol must be positive");
    if (ball_constraint && !(ball_constraint->radius >= 0.0))
        throw std::invalid_argument("ball constraint radius must be non-negative");
}

Point Grid::node(std::size_t idx) const {
    const long i = static_cast<long>(idx) % nx + i0;
    const long j = static_cast<long>(idx) / nx + j0;
    return {origin[0] + static_cast<double>(i) * spacing, origin[1] + static_cast<double>(j) * spacing};
}

long Grid::index(long i, long j) const noexcept {
    const long a = i - i0, b = j - j0;
    if (a < 0 || b < 0 || a >= nx || b >= ny) return -1;
    return b * nx + a;
}

std::vector<std::array<int, 2>> stencil_offsets(int stencil) {
    std::vector<std::array<int, 2>> off = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    if (stencil == 16) off.insert(off.end(), {{{1, 2}}, {{2, 1}}, {{1, -2}}, {{2, -1}}});
    return off;
}

namespace {

constexpr double kConstraintSlack = 1e-9;
constexpr std::size_t kMaxNodes = 4'000'000;

void require_planar(const Domain& domain, const NormSpec& spec) {
    if (domain.dim() != 2 || spec.dim() != 2)
        throw std::invalid_argument("the lattice solver works in two dimensions only");
}

bool within_constraint(const Domain& domain, const NormSpec& spec, const std::optional<BallConstraint>& c,
                       const Point& p) {
    if (!c) return true;
    return j_distance(domain, spec, c->center, p) <= c->radius + kConstraintSlack;
}

double edge_weight(const Domain& domain, const NormSpec& spec, const Grid& grid, std::size_t idx,
                   const std::array<int, 2>& off, double tol) {
    const long i = static_cast<long>(idx) % grid.nx + grid.i0;
    const long j = static_cast<long>(idx) / grid.nx + grid.j0;
    const long other = grid.index(i + off[0], j + off[1]);
    if (other < 0 || !grid.feasible[idx] || !grid.feasible[static_cast<std::size_t>(other)]) return kInf;
    const Point p = grid.node(idx);
    const Point q = grid.node(static_cast<std::size_t>(other));
    // d is 1-Lipschitz, so the endpoint values bound the clearance from below
    const double floor = std::min(grid.clearance[idx], grid.clearance[static_cast<std::size_t>(other)]) -
                         0.5 * spec(q - p);
    if (floor <= grid.spacing / 8.0 &&
        min_boundary_distance_on_segment(domain, spec, p, q).min_distance <= grid.spacing / 8.0)
        return kInf;
    return qh_segment_length(domain, spec, p, q, tol);
}

}  // namespace

Grid make_grid(const Domain& domain, const NormSpec& spec, const Point& origin, const Point& lo, const Point& hi,
               double spacing, const std::optional<BallConstraint>& constraint) {
    require_planar(domain, spec);
    if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
    Grid g;
    g.origin = origin;
    g.spacing = spacing;
    g.i0 = static_cast<long>(std::floor((lo[0] - origin[0]) / spacing));
    g.j0 = static_cast<long>(std::floor((lo[1] - origin[1]) / spacing));
    const long i1 = static_cast<long>(std::ceil((hi[0] - origin[0]) / spacing));
    const long j1 = static_cast<long>(std::ceil((hi[1] - origin[1]) / spacing));
    g.nx = i1 - g.i0 + 1;
    g.ny = j1 - g.j0 + 1;
    if (static_cast<double>(g.nx) * static_cast<double>(g.ny) > static_cast<double>(kMaxNodes))
        throw std::invalid_argument("lattice too large; increase grid_spacing");
    g.feasible.assign(g.size(), 0);
    g.clearance.assign(g.size(), 0.0);
    const auto count = static_cast<long>(g.size());
#pragma omp parallel for schedule(static) num_threads(thread_cap()) if (count > 4096)
    for (long k = 0; k < count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const Point p = g.node(idx);
        if (!contains(domain, p)) continue;
        const double d = boundary_distance_unchecked(domain, spec, p);
        if (d <= spacing / 4.0) continue;
        if (!within_constraint(domain, spec, constraint, p)) continue;
        g.feasible[idx] = 1;
        g.clearance[idx] = d;
    }
    return g;
}

std::vector<double> grid_edge_weights_serial(const Domain& domain, const NormSpec& spec, const Grid& grid,
                                             int stencil, double tol) {
    const auto off = stencil_offsets(stencil);
    std::vector<double> w(grid.size() * off.size());
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        for (std::size_t k = 0; k < off.size(); ++k)
            w[idx * off.size() + k] = edge_weight(domain, spec, grid, idx, off[k], tol);
    }
    return w;
}

std::vector<double> grid_edge_weights(const Domain& domain, const NormSpec& spec, const Grid& grid, int stencil,
                                      double tol) {
    const auto off = stencil_offsets(stencil);
    std::vector<double> w(grid.size() * off.size());
    const auto count = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(thread_cap()) if (count > 256)
    for (long n = 0; n < count; ++n) {
        const auto idx = static_cast<std::size_t>(n);
        for (std::size_t k = 0; k < off.size(); ++k)
            w[idx * off.size() + k] = edge_weight(domain, spec, grid, idx, off[k], tol);
    }
    return w;
}

std::vector<double> grid_dijkstra(const Grid& grid, const std::vector<double>& weights, int stencil,
                                  std::size_t source, std::vector<long>* pred) {
    const auto off = stencil_offsets(stencil);
    const std::size_t m = off.size();
    std::vector<double> dist(grid.size(), kInf);
    std::vector<long> from(grid.size(), -1);
    std::vector<std::uint8_t> done(grid.size(), 0);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        const long i = static_cast<long>(u) % grid.nx + grid.i0;
        const long j = static_cast<long>(u) / grid.nx + grid.j0;
        for (std::size_t k = 0; k < m; ++k) {
            for (int sgn : {1, -1}) {
                const long v = grid.index(i + sgn * off[k][0], j + sgn * off[k][1]);
                if (v < 0) continue;
                const auto vi = static_cast<std::size_t>(v);
                const double w = sgn > 0 ? weights[u * m + k] : weights[vi * m + k];
                if (!std::isfinite(w) || done[vi]) continue;
                const double nd = du + w;
                if (nd < dist[vi] || (nd == dist[vi] && static_cast<long>(u) < from[vi])) {
                    dist[vi] = nd;
                    from[vi] = static_cast<long>(u);
                    heap.push({nd, vi});
                }
            }
        }
    }
    if (pred) *pred = std::move(from);
    return dist;
}

namespace {

struct Attachment {
    std::size_t node;
    double weight;
};

// Feasible nodes within two spacings of p with the weight of the segment
// node -> p.
std::vector<Attachment> attach(const Domain& domain, const NormSpec& spec, const Grid& grid, const Point& p,
                               double tol) {
    std::vector<Attachment> out;
    const long ci = std::lround((p[0] - grid.origin[0]) / grid.spacing);
    const long cj = std::lround((p[1] - grid.origin[1]) / grid.spacing);
    for (long dj = -2; dj <= 2; ++dj) {
        for (long di = -2; di <= 2; ++di) {
            const long idx = grid.index(ci + di, cj + dj);
            if (idx < 0 || !grid.feasible[static_cast<std::size_t>(idx)]) continue;
            const Point q = grid.node(static_cast<std::size_t>(idx));
            const double w = qh_segment_length(domain, spec, q, p, tol);
            if (std::isfinite(w)) out.push_back({static_cast<std::size_t>(idx), w});
        }
    }
    return out;
}

// Lattice edges only steer the search; the final length is re-integrated at
// quad_tol.
double lattice_tol(const SolverParams& params) { return std::max(params.quad_tol, 1e-6 * params.grid_spacing); }

std::pair<Point, Point> solver_box(const Point& x, const Point& y, const SolverParams& params) {
    const double extent = std::max({std::abs(x[0] - y[0]), std::abs(x[1] - y[1]), 2.0 * params.grid_spacing});
    const double pad = params.grid_margin * 0.5 * extent + 2.0 * params.grid_spacing;
    return {{std::min(x[0], y[0]) - pad, std::min(x[1], y[1]) - pad},
            {std::max(x[0], y[0]) + pad, std::max(x[1], y[1]) + pad}};
}

}  // namespace

Polyline grid_shortest_path(const Domain& domain, const NormSpec& spec, const Point& x, const Point& y,
                            const SolverParams& params) {
    params.validate();
    require_planar(domain, spec);
    if (!contains(domain, x) || !contains(domain, y)) throw std::domain_error("endpoints must lie in the domain");
    if (x == y) return Polyline::constant(x, 2);
    const auto [lo, hi] = solver_box(x, y, params);
    Grid grid = make_grid(domain, spec, x, lo, hi, params.grid_spacing, params.ball_constraint);
    const auto src = static_cast<std::size_t>(grid.index(0, 0));
    grid.feasible[src] = 1;  // x is always a node
    grid.clearance[src] = boundary_distance(domain, spec, x);
    const std::vector<double> w =
        grid_edge_weights(domain, spec, grid, params.neighbor_stencil, lattice_tol(params));
    std::vector<long> pred;
    const std::vector<double> dist = grid_dijkstra(grid, w, params.neighbor_stencil, src, &pred);
    double best = kInf;
    long best_node = -1;
    for (const Attachment& a : attach(domain, spec, grid, y, params.quad_tol)) {
        const double total = dist[a.node] + a.weight;
        if (total < best || (total == best && static_cast<long>(a.node) < best_node)) {
            best = total;
            best_node = static_cast<long>(a.node);
        }
    }
    if (best_node < 0 || !std::isfinite(best))
        throw GridDisconnected("no feasible lattice path at spacing " + std::to_string(params.grid_spacing));
    std::vector<Point> verts;
    for (long n = best_node; n >= 0; n = pred[static_cast<std::size_t>(n)])
        verts.push_back(grid.node(static_cast<std::size_t>(n)));
    std::reverse(verts.begin(), verts.end());
    verts.front() = x;
    if (!(verts.back() == y)) verts.push_back(y);
    if (verts.size() < 2) verts.push_back(y);
    return Polyline::with_stationary(std::move(verts));
}

namespace {

std::size_t resample_count(double qh_length) {
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(qh_length / 0.1)), 8, 64);
}

constexpr std::size_t kMaxRefineVertices = 1024;

}  // namespace

Polyline refine_polyline(const Domain& domain, const NormSpec& spec, const Polyline& path,
                         const SolverParams& params, std::vector<double>* round_lengths) {
    params.validate();
    if (round_lengths) round_lengths->clear();
    if (params.refine_rounds == 0 || path.size() < 2) return path;
    const double tol = params.quad_tol;
    const auto& constraint = params.ball_constraint;
    auto seg_len = [&](const Point& p, const Point& q) { return qh_segment_length(domain, spec, p, q, tol); };

    std::vector<Point> v = path.vertices();
    // drop stationary steps; the descent needs distinct neighbours
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() < 2) return path;
    {
        const Polyline base = Polyline::with_stationary(v);
        const double base_len = qh_polyline_length(domain, spec, base, tol);
        if (std::isfinite(base_len) && base_len > 0.0) {
            // even spacing in quasihyperbolic arclength; kept only when it
            // does not lengthen the path or leave the constraint
            const Polyline even =
                qh_arclength_reparameterize(domain, spec, base, resample_count(base_len), tol * 1e-2);
            std::vector<Point> ev = even.vertices();
            ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
            bool ok = ev.size() >= 2 && ev.front() == v.front() && ev.back() == v.back();
            for (const Point& p : ev) ok = ok && within_constraint(domain, spec, constraint, p);
            if (ok) {
                const double ev_len = qh_polyline_length(domain, spec, Polyline::with_stationary(ev), tol);
                if (ev_len <= base_len + tol) v = std::move(ev);
            }
        }
    }

    std::vector<double> seg(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) seg[i] = seg_len(v[i], v[i + 1]);

    static const std::array<std::array<double, 2>, 8> kDirs = [] {
        std::array<std::array<double, 2>, 8> d{};
        for (int k = 0; k < 8; ++k) d[k] = {std::cos(k * std::numbers::pi / 4), std::sin(k * std::numbers::pi / 4)};
        return d;
    }();
    const std::size_t dim = v.front().dim();

    double step = params.refine_step;
    for (int round = 0; round < params.refine_rounds; ++round) {
        bool moved = false;
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            const double current = seg[i - 1] + seg[i];
            double best = current;
            Point best_p = v[i];
            double best_a = seg[i - 1], best_b = seg[i];
            // coordinate directions in every plane spanned by two axes
            for (std::size_t ax = 0; ax < dim; ++ax) {
                for (std::size_t ay = ax + 1; ay < dim; ++ay) {
                    for (const auto& d : kDirs) {
                        Point cand = v[i];
                        cand[ax] += step * d[0];
                        cand[ay] += step * d[1];
                        if (cand == v[i - 1] || cand == v[i + 1]) continue;
                        if (!contains(domain, cand)) continue;
                        if (!within_constraint(domain, spec, constraint, cand)) continue;
                        const double a = seg_len(v[i - 1], cand);
                        if (!(a < best)) continue;
                        const double b = seg_len(cand, v[i + 1]);
                        if (a + b < best) {
                            best = a + b;
                            best_p = cand;
                            best_a = a;
                            best_b = b;
                        }
                    }
                }
            }
            if (best < current) {
                v[i] = best_p;
                seg[i - 1] = best_a;
                seg[i] = best_b;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;

        // split segments carrying more than twice the mean weight
        double total = 0.0;
        for (double s : seg) total += s;
        const double mean = total / static_cast<double>(seg.size());
        if (v.size() < kMaxRefineVertices) {
            std::vector<Point> nv{v.front()};
            std::vector<double> ns;
            for (std::size_t i = 0; i < seg.size(); ++i) {
                if (seg[i] > 2.0 * mean && nv.size() + 2 < kMaxRefineVertices) {
                    const Point mid = lerp(v[i], v[i + 1], 0.5);
                    if (!(mid == v[i]) && !(mid == v[i + 1]) && within_constraint(domain, spec, constraint, mid)) {
                        nv.push_back(mid);
                        ns.push_back(seg_len(v[i], mid));
                        ns.push_back(seg_len(mid, v[i + 1]));
                        nv.push_back(v[i + 1]);
                        continue;
                    }
                }
                nv.push_back(v[i + 1]);
                ns.push_back(seg[i]);
            }
            v = std::move(nv);
            seg = std::move(ns);
        }

        if (round_lengths) {
            double len = 0.0;
            for (double s : seg) len += s;
            round_lengths->push_back(len);
        }
        if (step < 1e-12 * std::max(1.0, params.refine_step)) {
            if (round_lengths) round_lengths->resize(static_cast<std::size_t>(params.refine_rounds),
                                                     round_lengths->back());
            break;
        }
    }
    return Polyline::with_stationary(std::move(v));
}

DistanceEstimate qh_distance(const Domain& domain, const NormSpec& spec, const Point& x, const Point& y,
                             const SolverParams& params) {
    params.validate();
    const double lower = j_distance(domain, spec, x, y);
    if (x == y) return {0.0, 0.0, Polyline::constant(x, 2)};
    Polyline start = grid_shortest_path(domain, spec, x, y, params);
    double start_len = qh_polyline_length(domain, spec, start, params.quad_tol);
    if (!params.ball_constraint) {
        const Polyline chord({x, y});
        const double chord_len = qh_polyline_length(domain, spec, chord, params.quad_tol);
        if (chord_len < start_len) {
            start = chord;
            start_len = chord_len;
        }
    }
    Polyline path = refine_polyline(domain, spec, start, params);
    double upper = qh_polyline_length(domain, spec, path, params.quad_tol);
    if (upper > start_len) {
        path = start;
        upper = start_len;
    }
    if (lower > upper + params.quad_tol)
        throw std::logic_error("j exceeds the quasihyperbolic upper bound; quadrature failure");
    return {lower, upper, std::move(path)};
}

KDistanceField::KDistanceField(const Domain& domain, const NormSpec& spec, const Point& center,
                               double half_width, const SolverParams& params)
    : domain_(domain), spec_(spec), center_(center), tol_(params.quad_tol) {
    params.validate();
    require_planar(domain, spec);
    if (!contains(domain, center)) throw std::domain_error("field center must lie in the domain");
    if (!(half_width > 0.0)) throw std::invalid_argument("field half width must be positive");
    const Point lo{center[0] - half_width, center[1] - half_width};
    const Point hi{center[0] + half_width, center[1] + half_width};
    grid_ = make_grid(domain, spec, center, lo, hi, params.grid_spacing);
    const auto src = static_cast<std::size_t>(grid_.index(0, 0));
    grid_.feasible[src] = 1;
    grid_.clearance[src] = boundary_distance(domain, spec, center);
    const std::vector<double> w = grid_edge_weights(domain, spec, grid_, params.neighbor_stencil, lattice_tol(params));
    dist_ = grid_dijkstra(grid_, w, params.neighbor_stencil, src);
}

double KDistanceField::upper(const Point& p) const {
    if (!contains(domain_, p)) return kInf;
    if (p == center_) return 0.0;
    double best = qh_segment_length(domain_, spec_, center_, p, tol_);
    for (const Attachment& a : attach(domain_, spec_, grid_, p, tol_)) {
        if (std::isfinite(dist_[a.node])) best = std::min(best, dist_[a.node] + a.weight);
    }
    return best;
}

double KDistanceField::lower(const Point& p) const {
    if (!contains(domain_, p)) return kInf;
    return j_distance(domain_, spec_, center_, p);
}

}  // namespace qhgeo
