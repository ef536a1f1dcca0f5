#pragma once

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace qhgeo {

// A point (or vector) of R^n. Storage is inline for n <= 4, which covers the
// planar workloads that dominate; larger dimensions spill to the heap.
class Point {
public:
    using storage_type = boost::container::small_vector<double, 4>;

    Point() = default;
    explicit Point(std::size_t dim, double fill = 0.0) : v_(dim, fill) {}
    Point(std::initializer_list<double> xs) : v_(xs.begin(), xs.end()) {}
    explicit Point(std::span<const double> xs) : v_(xs.begin(), xs.end()) {}

    std::size_t dim() const noexcept { return v_.size(); }
    double operator[](std::size_t i) const noexcept { return v_[i]; }
    double& operator[](std::size_t i) noexcept { return v_[i]; }

    std::span<const double> coords() const noexcept { return {v_.data(), v_.size()}; }
    std::span<double> coords() noexcept { return {v_.data(), v_.size()}; }

    auto begin() const noexcept { return v_.begin(); }
    auto end() const noexcept { return v_.end(); }

    Point& operator+=(const Point& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
        return *this;
    }
    Point& operator-=(const Point& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
        return *this;
    }
    Point& operator*=(double s) noexcept {
        for (double& x : v_) x *= s;
        return *this;
    }

    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator*(Point a, double s) { return a *= s; }
    friend Point operator*(double s, Point a) { return a *= s; }
    friend Point operator-(Point a) { return a *= -1.0; }

    friend bool operator==(const Point& a, const Point& b) noexcept { return a.v_ == b.v_; }

private:
    void check_same_dim(const Point& o) const {
        if (o.dim() != dim()) throw std::invalid_argument("point dimension mismatch");
    }

    storage_type v_;
};

inline double dot(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("point dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

// p + t (q - p), evaluated coordinate-wise so that t = 0 and t = 1 reproduce
// the endpoints exactly.
inline Point lerp(const Point& p, const Point& q, double t) {
    if (p.dim() != q.dim()) throw std::invalid_argument("point dimension mismatch");
    if (t == 1.0) return q;
    Point out(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) out[i] = (1.0 - t) * p[i] + t * q[i];
    return out;
}

std::string to_string(const Point& p);

}  // namespace qhgeo
