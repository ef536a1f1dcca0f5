#pragma once

#include "qhgeo/point.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace qhgeo {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class NormKind { PNorm, WeightedPNorm };

// A (weighted) p-norm on R^n, n >= 2, p in [1, inf].
//
// The weighted norm is ||v|| = (sum_i (w_i |v_i|)^p)^(1/p), and
// max_i w_i |v_i| for p = inf. Every member of the family is an absolute
// (coordinate-wise monotone) norm; the domain code relies on that when it
// measures distances to boxes by clamping.
class NormSpec {
public:
    static NormSpec p_norm(std::size_t dim, double p);
    static NormSpec weighted(std::vector<double> weights, double p);

    NormKind kind() const noexcept { return kind_; }
    double p() const noexcept { return p_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    double operator()(const Point& v) const;
    double dual(const Point& a) const;

    std::string describe() const;

private:
    NormSpec(NormKind kind, double p, std::size_t dim, std::vector<double> weights);

    NormKind kind_;
    double p_;
    std::size_t dim_;
    std::vector<double> weights_;  // empty for PNorm
};

// Throws std::invalid_argument on dimension mismatch.
double norm(const NormSpec& spec, const Point& v);

// Norm of the dual space, used for distances to hyperplanes.
double dual_norm(const NormSpec& spec, const Point& a);

// q with 1/p + 1/q = 1; the pair (1, inf) is dual both ways.
double dual_exponent(double p);

struct ModulusEstimate {
    double argument = 0.0;
    double value = 0.0;
    std::int64_t samples_used = 0;
};

// Upper estimate of delta_X(eps) = inf{1 - ||x+y||/2 : ||x|| = ||y|| = 1,
// ||x - y|| = eps}. Pairs are searched on 2-D sections of the unit sphere: the
// coordinate plane when dim == 2, seeded random planes otherwise. For each x
// the partner y is located by bisection along the sphere chart, then the best
// sampled x is polished by golden-section search.
ModulusEstimate modulus_of_convexity_estimate(const NormSpec& spec, double eps,
                                              std::int64_t budget = 4096,
                                              std::uint64_t seed = 0);

// Lower estimate of rho_X(tau) = sup{(||x+y|| + ||x-y||)/2 - 1 : ||x|| = 1,
// ||y|| = tau}.
ModulusEstimate modulus_of_smoothness_estimate(const NormSpec& spec, double tau,
                                               std::int64_t budget = 4096,
                                               std::uint64_t seed = 0);

// Closed forms for the Euclidean plane.
inline double euclidean_convexity_modulus(double eps) {
    return 1.0 - std::sqrt(std::max(0.0, 1.0 - eps * eps / 4.0));
}
inline double euclidean_smoothness_modulus(double tau) {
    return std::sqrt(1.0 + tau * tau) - 1.0;
}

}  // namespace qhgeo
