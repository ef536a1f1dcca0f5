#pragma once

#include "qhgeo/domain.hpp"
#include "qhgeo/norm.hpp"
#include "qhgeo/paths.hpp"
#include "qhgeo/point.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qhgeo {

// Nodes whose certified lower bound (the j-distance) to `center` exceeds
// `radius` are pruned; everything else is kept.
struct BallConstraint {
    Point center;
    double radius = 0.0;
    MetricKind metric = MetricKind::QuasiHyperbolic;
};

struct SolverParams {
    double grid_spacing = 0.05;
    double grid_margin = 2.0;  // box inflation, in units of the half chord
    int neighbor_stencil = 16;  // 8 or 16
    int refine_rounds = 200;
    double refine_step = 0.01;
    double quad_tol = kDefaultQuadTol;
    std::optional<BallConstraint> ball_constraint;

    // Throws std::invalid_argument on a non-positive spacing/step/tolerance,
    // a negative margin or round count, or a stencil other than 8 or 16.
    void validate() const;
};

struct DistanceEstimate {
    double lower = 0.0;
    double upper = 0.0;
    Polyline path;
};

class GridDisconnected : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lattice anchored at `origin` (origin is node (0,0)) covering [lo, hi].
struct Grid {
    Point origin;
    double spacing = 0.0;
    long i0 = 0, j0 = 0;  // lattice index of the first column / row
    long nx = 0, ny = 0;
    std::vector<std::uint8_t> feasible;
    std::vector<double> clearance;  // d at feasible nodes

    std::size_t size() const noexcept { return static_cast<std::size_t>(nx * ny); }
    Point node(std::size_t idx) const;
    // Index of lattice point (i, j), or -1 when outside the box.
    long index(long i, long j) const noexcept;
};

// Half of the symmetric stencil: each undirected edge is stored once, at the
// node it leaves in the +direction.
std::vector<std::array<int, 2>> stencil_offsets(int stencil);

// Builds the lattice and marks nodes inside the domain with clearance above
// spacing / 4 (and inside the constraint, when given). Only 2-D.
Grid make_grid(const Domain& domain, const NormSpec& spec, const Point& origin, const Point& lo, const Point& hi,
               double spacing, const std::optional<BallConstraint>& constraint = std::nullopt);

// Quasihyperbolic weights of all lattice edges, size() * offsets.size(),
// +inf for pruned edges (clearance at most spacing / 8). The parallel kernel and the serial reference return
// identical arrays.
std::vector<double> grid_edge_weights(const Domain& domain, const NormSpec& spec, const Grid& grid, int stencil,
                                      double tol);
std::vector<double> grid_edge_weights_serial(const Domain& domain, const NormSpec& spec, const Grid& grid,
                                             int stencil, double tol);

// Single-source Dijkstra over the lattice. Ties are broken by node index.
// `pred` (optional) receives the predecessor of every settled node, -1 for
// the source and unreached nodes.
std::vector<double> grid_dijkstra(const Grid& grid, const std::vector<double>& weights, int stencil,
                                  std::size_t source, std::vector<long>* pred = nullptr);

// Weight-minimal lattice polyline from x to y. Throws GridDisconnected when
// no feasible path exists at this resolution, std::invalid_argument outside
// 2-D.
Polyline grid_shortest_path(const Domain& domain, const NormSpec& spec, const Point& x, const Point& y,
                            const SolverParams& params);

// Local descent on vertex positions. `round_lengths`, when given, receives
// the quasihyperbolic length after each round.
Polyline refine_polyline(const Domain& domain, const NormSpec& spec, const Polyline& path,
                         const SolverParams& params, std::vector<double>* round_lengths = nullptr);

// Bracket [j(x,y), length of the refined grid path]. Throws std::logic_error
// if the bracket is ever inverted beyond quad_tol.
DistanceEstimate qh_distance(const Domain& domain, const NormSpec& spec, const Point& x, const Point& y,
                             const SolverParams& params = {});

// One-to-all lattice distances from a center, used to bracket k(center, p)
// at many points: upper(p) is the best of the straight segment and the
// lattice paths ending at nodes within two spacings of p.
class KDistanceField {
public:
    KDistanceField(const Domain& domain, const NormSpec& spec, const Point& center, double half_width,
                   const SolverParams& params);

    double upper(const Point& p) const;
    double lower(const Point& p) const;
    const Point& center() const noexcept { return center_; }
    std::size_t node_count() const noexcept { return grid_.size(); }

private:
    Domain domain_;
    NormSpec spec_;
    Point center_;
    double tol_;
    Grid grid_;
    std::vector<double> dist_;
};

}  // namespace qhgeo
