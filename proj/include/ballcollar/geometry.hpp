#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ballcollar/vec.hpp"

// Poincare ball model primitives: classified points of the closed ball,
// inversion spheres, the two metrics, and sphere inversions.

namespace ballcollar {

// Classification tolerance for membership on the sphere at infinity.
inline constexpr double tol_norm = 1e-9;
// Singularity guard for inversion centers.
inline constexpr double tol_center = 1e-12;

enum class PointKind { interior, boundary };

// A point of the closed unit ball, classified as interior or boundary.
// Interior: |x| < 1 - tol_norm.  Boundary: | |x| - 1 | <= tol_norm.
class Point {
public:
    explicit Point(Vec coords) : x_(std::move(coords)) {
        if (x_.size() < 2)
            throw std::invalid_argument("points need dimension >= 2");
        double n = ballcollar::norm(x_);
        if (n > 1.0 + tol_norm)
            throw std::domain_error("point lies outside the closed unit ball");
        kind_ = (n < 1.0 - tol_norm) ? PointKind::interior : PointKind::boundary;
    }

    static Point origin(int n) { return Point(zero_vec(n)); }

    // Unit-normalizes a nonzero direction onto the sphere at infinity.
    static Point boundary(Vec direction) {
        double n = ballcollar::norm(direction);
        if (n == 0.0)
            throw std::invalid_argument("boundary direction must be nonzero");
        return Point(scaled(direction, 1.0 / n));
    }

    const Vec& coords() const { return x_; }
    int dim() const { return static_cast<int>(x_.size()); }
    PointKind kind() const { return kind_; }
    bool is_interior() const { return kind_ == PointKind::interior; }
    bool is_boundary() const { return kind_ == PointKind::boundary; }
    double norm() const { return ballcollar::norm(x_); }

private:
    Vec x_;
    PointKind kind_;
};

inline double euclidean_distance(const Vec& x, const Vec& y) {
    return norm(sub(x, y));
}

inline double euclidean_distance(const Point& x, const Point& y) {
    return euclidean_distance(x.coords(), y.coords());
}

// arcosh(1 + s) through the log form log(1 + s + sqrt(s (s + 2))).
// Stable for s near 0 and for the huge s that near-boundary pairs produce
// (the naive acosh argument overflows its useful range around 1e8).
inline double arcosh1p(double s) {
    if (s < 0.0) throw std::domain_error("arcosh1p needs s >= 0");
    return std::log1p(s + std::sqrt(s * (s + 2.0)));
}

// cosh d(x,y) = 1 + 2 |x-y|^2 / ((1-|x|^2)(1-|y|^2)); interior points only.
inline double hyperbolic_distance(const Point& x, const Point& y) {
    if (!x.is_interior() || !y.is_interior())
        throw std::domain_error("hyperbolic distance needs interior points");
    require_same_dim(x.coords(), y.coords());
    double hx = 1.0 - norm_sq(x.coords());
    double hy = 1.0 - norm_sq(y.coords());
    double d2 = norm_sq(sub(x.coords(), y.coords()));
    return arcosh1p(2.0 * d2 / (hx * hy));
}

// d(0, t e) = log((1+t)/(1-t)) along any ray; the radial closed form.
inline double radial_hyperbolic_distance(double t) {
    if (t < 0.0 || t >= 1.0)
        throw std::domain_error("radial parameter must lie in [0, 1)");
    return std::log1p(t) - std::log1p(-t);
}

// Sphere S(center, radius); `boundary_orthogonal` certifies |c|^2 = 1 + r^2,
// the condition for the inversion to preserve the unit ball.
struct InversionSphere {
    Vec center;
    double radius;
    bool boundary_orthogonal;

    InversionSphere(Vec c, double r, bool orthogonal = false)
        : center(std::move(c)), radius(r), boundary_orthogonal(orthogonal) {
        if (center.size() < 2)
            throw std::invalid_argument("spheres need dimension >= 2");
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw std::domain_error("sphere radius must be positive and finite");
        if (boundary_orthogonal) {
            double res = std::abs(norm_sq(center) - 1.0 - radius * radius);
            if (res > tol_norm)
                throw std::domain_error("sphere is not orthogonal to the unit sphere");
        }
    }

    int dim() const { return static_cast<int>(center.size()); }
};

// The unique sphere centered at c orthogonal to the unit sphere: r = sqrt(|c|^2 - 1).
inline InversionSphere make_boundary_orthogonal_sphere(Vec center) {
    double m2 = norm_sq(center);
    if (m2 <= 1.0)
        throw std::domain_error("orthogonal sphere centers must lie outside the closed unit ball");
    double r = std::sqrt(m2 - 1.0);
    return InversionSphere(std::move(center), r, true);
}

// i(x) = c + (r / |x-c|)^2 (x - c); undefined at the center.
inline Vec reflect_in_sphere(const InversionSphere& s, const Vec& x) {
    Vec w = sub(x, s.center);
    double d2 = norm_sq(w);
    if (d2 <= tol_center * tol_center)
        throw std::domain_error("inversion is singular at the sphere center");
    double t = s.radius * s.radius / d2;
    return add(s.center, scaled(w, t));
}

// Point overload; only meaningful for ball-preserving (boundary-orthogonal)
// spheres, where the image stays in the closed ball.
inline Point reflect_in_sphere(const InversionSphere& s, const Point& x) {
    return Point(reflect_in_sphere(s, x.coords()));
}

// A boundary-orthogonal sphere bounds a totally geodesic half-space of the
// ball.  For x outside the sphere the hyperbolic distance to that half-space
// is arsinh((|x-c|^2 - r^2) / (r (1 - |x|^2))); inside it is zero.
inline double hyperbolic_distance_to_halfspace(const InversionSphere& s, const Point& x) {
    if (!s.boundary_orthogonal)
        throw std::invalid_argument("half-space distance needs a boundary-orthogonal sphere");
    if (!x.is_interior())
        throw std::domain_error("half-space distance is defined for interior points");
    if (s.dim() != x.dim())
        throw std::invalid_argument("sphere/point dimension mismatch");
    double pw = norm_sq(sub(x.coords(), s.center)) - s.radius * s.radius;
    if (pw <= 0.0) return 0.0;
    double h = 1.0 - norm_sq(x.coords());
    return std::asinh(pw / (s.radius * h));
}

// d(i(x), i(y)) = ratio * d(x, y) with ratio = r^2 / (d(x,c) d(y,c)).
inline double reflection_distance_ratio(const InversionSphere& s, const Vec& x, const Vec& y) {
    double dx = euclidean_distance(x, s.center);
    double dy = euclidean_distance(y, s.center);
    if (dx <= tol_center || dy <= tol_center)
        throw std::domain_error("distance ratio is singular at the sphere center");
    if (euclidean_distance(x, y) == 0.0)
        throw std::invalid_argument("distance ratio needs two distinct points");
    return s.radius * s.radius / (dx * dy);
}

}  // namespace ballcollar
