// Upper half-plane and upper half-space models: points, distances,
// geodesics, horoballs, and initial tangent directions. Everything here
// is double-precision; exact arithmetic lives in exact_matrix.hpp.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace census {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

struct H2Point {
    double re = 0.0;
    double im = 1.0;

    std::complex<double> z() const { return {re, im}; }
};

struct H3Point {
    std::complex<double> horizontal{0.0, 0.0};
    double height = 1.0;
};

inline void require_interior(const H2Point& p) {
    if (!(p.im > 0.0)) throw std::domain_error("half-plane point must have positive imaginary part");
}

inline void require_interior(const H3Point& p) {
    if (!(p.height > 0.0)) throw std::domain_error("half-space point must have positive height");
}

/// cosh d = 1 + |p-q|^2 / (2 Im p Im q)
inline double dist_h2(const H2Point& p, const H2Point& q) {
    require_interior(p);
    require_interior(q);
    double dre = p.re - q.re, dim = p.im - q.im;
    double u = (dre * dre + dim * dim) / (2.0 * p.im * q.im);
    // acosh(1+u) in a form stable near u = 0
    return 2.0 * std::asinh(std::sqrt(u / 2.0));
}

inline double dist_h3(const H3Point& p, const H3Point& q) {
    require_interior(p);
    require_interior(q);
    double dh = std::norm(p.horizontal - q.horizontal);
    double dv = p.height - q.height;
    double u = (dh + dv * dv) / (2.0 * p.height * q.height);
    return 2.0 * std::asinh(std::sqrt(u / 2.0));
}

// Geodesic of the half-plane with both endpoints on the boundary:
// a vertical line (one endpoint at infinity) or a semicircle centered
// on the real axis.
struct Geodesic2 {
    bool vertical = false;
    double foot = 0.0;    // vertical: real part of the line
    double center = 0.0;  // semicircle
    double radius = 1.0;
};

inline Geodesic2 geodesic_between(double p, double q) {
    Geodesic2 g;
    if (std::isinf(p) && std::isinf(q)) throw std::domain_error("need two distinct boundary points");
    if (std::isinf(p) || std::isinf(q)) {
        g.vertical = true;
        g.foot = std::isinf(p) ? q : p;
        return g;
    }
    if (p == q) throw std::domain_error("need two distinct boundary points");
    g.center = (p + q) / 2.0;
    g.radius = std::abs(p - q) / 2.0;
    return g;
}

inline double dist_to_geodesic(const H2Point& x, const Geodesic2& g) {
    require_interior(x);
    if (g.vertical) return std::asinh(std::abs(x.re - g.foot) / x.im);
    double r2 = std::norm(x.z() - std::complex<double>(g.center, 0.0));
    return std::asinh(std::abs(r2 - g.radius * g.radius) / (2.0 * g.radius * x.im));
}

// Horoball: base point on the boundary plus a size parameter. For base
// infinity the parameter is the cutoff height H (the set Im z >= H);
// for a finite base it is the Euclidean diameter of the ball.
struct Horoball {
    bool at_infinity = true;
    double base = 0.0;
    double param = 1.0;

    static Horoball at_inf(double height) { return {true, 0.0, check(height)}; }
    static Horoball at(double base, double diameter) { return {false, base, check(diameter)}; }

private:
    static double check(double v) {
        if (!(v > 0.0)) throw std::domain_error("horoball size parameter must be positive");
        return v;
    }
};

/// Signed horospherical distance from x to the horoball boundary:
/// negative inside the horoball, zero on the horosphere.
inline double signed_horoball_distance(const H2Point& x, const Horoball& h) {
    require_interior(x);
    if (h.at_infinity) return std::log(h.param / x.im);
    // send base -> infinity by z -> -1/(z - base); the ball of diameter D
    // becomes the region above height 1/D
    double n2 = std::norm(x.z() - std::complex<double>(h.base, 0.0));
    return std::log(n2 / (h.param * x.im));
}

inline double dist_to_horoball(const H2Point& x, const Horoball& h) {
    return std::max(0.0, signed_horoball_distance(x, h));
}

/// Direction at x0 of the geodesic toward y, as an angle in [0, 2pi)
/// measured in the coordinate frame of the model at x0.
inline double tangent_angle(const H2Point& x0, const H2Point& y) {
    require_interior(x0);
    require_interior(y);
    if (x0.re == y.re && x0.im == y.im) throw std::domain_error("tangent direction undefined at coincident points");
    std::complex<double> tangent;
    if (x0.re == y.re) {
        tangent = {0.0, y.im > x0.im ? 1.0 : -1.0};
    } else {
        // circle orthogonal to the real axis through both points
        double center = (std::norm(y.z()) - std::norm(x0.z())) / (2.0 * (y.re - x0.re));
        std::complex<double> radial = x0.z() - center;
        tangent = std::complex<double>(0.0, 1.0) * radial;  // counterclockwise
        double phi_x = std::arg(radial);
        double phi_y = std::arg(y.z() - center);
        if (phi_y < phi_x) tangent = -tangent;
    }
    double angle = std::arg(tangent);
    if (angle < 0.0) angle += 2.0 * kPi;
    return angle;
}

/// Fold an angle to the nonoriented range (0, pi].
inline double fold_angle(double theta) {
    theta = std::fmod(std::abs(theta), 2.0 * kPi);
    if (theta > kPi) theta = 2.0 * kPi - theta;
    return theta;
}

}  // namespace census
