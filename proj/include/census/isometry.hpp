// Isometries of H^2 and H^3 as unimodular 2x2 matrices up to sign:
// classification into identity / elliptic / parabolic / loxodromic,
// translation lengths, axes, horospherical data for parabolics, and
// fixed-point data for elliptics.
//
// Two backends share the classification logic: exact integer matrices
// (trace comparisons are exact) and double-precision ones (a tolerance
// band around |tr| = 2 is reported as ambiguous rather than guessed).
#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include "census/exact_matrix.hpp"
#include "census/geometry.hpp"

namespace census {

struct KindError : std::domain_error {
    using std::domain_error::domain_error;
};

enum class IsometryClass { Identity, Elliptic, Parabolic, Loxodromic };

inline const char* to_string(IsometryClass k) {
    switch (k) {
        case IsometryClass::Identity: return "identity";
        case IsometryClass::Elliptic: return "elliptic";
        case IsometryClass::Parabolic: return "parabolic";
        case IsometryClass::Loxodromic: return "loxodromic";
    }
    return "?";
}

struct IsometryKind {
    IsometryClass type = IsometryClass::Identity;
    double length = 0.0;  // loxodromic: translation length > 0
    double angle = 0.0;   // loxodromic: holonomy in (-pi, pi]; elliptic: rotation angle in (0, pi]
    bool ambiguous = false;  // numeric backend only: trace inside the parabolic band
};

// ---------------------------------------------------------------------------
// numeric backends

struct Mobius2 {
    double a = 1, b = 0, c = 0, d = 1;

    static Mobius2 identity() { return {}; }

    friend Mobius2 operator*(const Mobius2& x, const Mobius2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }

    Mobius2 inverse() const { return {d, -b, -c, a}; }
    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    /// rescale so the determinant is 1 up to rounding (det must be positive)
    Mobius2 normalized() const {
        double s = std::sqrt(det());
        return {a / s, b / s, c / s, d / s};
    }

    std::complex<double> apply(std::complex<double> z) const {
        return (a * z + b) / (c * z + d);
    }

    H2Point apply(const H2Point& p) const {
        std::complex<double> w = apply(p.z());
        return {w.real(), w.imag()};
    }
};

inline Mobius2 to_mobius(const ExactIsometry2& m) {
    return {static_cast<double>(m.a), static_cast<double>(m.b),
            static_cast<double>(m.c), static_cast<double>(m.d)};
}

struct Isometry3 {
    std::complex<double> a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};

    friend Isometry3 operator*(const Isometry3& x, const Isometry3& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }

    Isometry3 inverse() const { return {d, -b, -c, a}; }
    std::complex<double> det() const { return a * d - b * c; }
    std::complex<double> trace() const { return a + d; }

    // canonical phase: first nonzero entry has argument in [0, pi)
    Isometry3 canonical(double tol = 1e-14) const {
        const std::complex<double>* entries[4] = {&a, &b, &c, &d};
        for (auto* e : entries) {
            if (std::abs(*e) <= tol) continue;
            double arg = std::arg(*e);
            if (arg < 0.0 || arg >= kPi - 1e-15) return {-a, -b, -c, -d};
            break;
        }
        return *this;
    }

    /// Poincare extension to the upper half-space.
    H3Point apply(const H3Point& p) const {
        std::complex<double> cz_d = c * p.horizontal + d;
        double denom = std::norm(cz_d) + std::norm(c) * p.height * p.height;
        std::complex<double> num =
            (a * p.horizontal + b) * std::conj(cz_d) + a * std::conj(c) * p.height * p.height;
        return {num / denom, p.height / denom};
    }
};

inline Isometry3 embed_h3(const Mobius2& m) {
    return {{m.a, 0}, {m.b, 0}, {m.c, 0}, {m.d, 0}};
}

// The unit-determinant check compares against the rounding floor of the
// entries: forming a d - b c with entries of size E loses about E^2 ulps.
inline void require_unimodular(const Mobius2& m, double tol = 1e-12) {
    double scale = std::max(1.0, std::abs(m.a * m.d) + std::abs(m.b * m.c));
    if (std::abs(m.det() - 1.0) > tol * scale)
        throw std::invalid_argument("matrix determinant must be 1");
}

inline void require_unimodular(const Isometry3& m, double tol = 1e-12) {
    double scale = std::max(1.0, std::abs(m.a * m.d) + std::abs(m.b * m.c));
    if (std::abs(m.det() - std::complex<double>(1.0, 0.0)) > tol * scale)
        throw std::invalid_argument("matrix determinant must be 1");
}

// ---------------------------------------------------------------------------
// classification

inline IsometryKind classify(const ExactIsometry2& g) {
    IsometryKind k;
    if (g.is_identity()) return k;
    std::int64_t tr = g.trace();
    std::int64_t abs_tr = tr < 0 ? -tr : tr;
    if (abs_tr > 2) {
        k.type = IsometryClass::Loxodromic;
        k.length = 2.0 * std::acosh(static_cast<double>(abs_tr) / 2.0);
    } else if (abs_tr == 2) {
        k.type = IsometryClass::Parabolic;
    } else {
        k.type = IsometryClass::Elliptic;
        k.angle = 2.0 * std::acos(static_cast<double>(abs_tr) / 2.0);
    }
    return k;
}

inline IsometryKind classify(const Mobius2& g, double tol = 1e-9) {
    require_unimodular(g);
    IsometryKind k;
    double abs_tr = std::abs(g.trace());
    bool near_identity = std::abs(g.b) <= tol && std::abs(g.c) <= tol &&
                         std::abs(std::abs(g.a) - 1.0) <= tol && std::abs(std::abs(g.d) - 1.0) <= tol;
    if (near_identity) return k;
    if (std::abs(abs_tr - 2.0) <= tol) {
        k.type = IsometryClass::Parabolic;
        k.ambiguous = true;
    } else if (abs_tr > 2.0) {
        k.type = IsometryClass::Loxodromic;
        k.length = 2.0 * std::acosh(abs_tr / 2.0);
    } else {
        k.type = IsometryClass::Elliptic;
        k.angle = 2.0 * std::acos(abs_tr / 2.0);
    }
    return k;
}

/// lambda = ell + i theta with ell > 0, theta in (-pi, pi]: g is conjugate
/// to (z, r) -> e^ell (e^{i theta} z, r). Recovered as 2 log mu from the
/// eigenvalue mu of modulus > 1.
inline std::complex<double> complex_translation_length(const Isometry3& g) {
    require_unimodular(g);
    std::complex<double> tr = g.trace();
    std::complex<double> half = tr / 2.0;
    std::complex<double> root = std::sqrt(half * half - 1.0);
    std::complex<double> mu = half + root;
    if (std::abs(mu) < 1.0) mu = half - root;
    double ell = 2.0 * std::log(std::abs(mu));
    if (!(ell > 1e-12)) throw KindError("complex translation length requires a loxodromic isometry");
    double theta = 2.0 * std::arg(mu);
    while (theta > kPi) theta -= 2.0 * kPi;
    while (theta <= -kPi) theta += 2.0 * kPi;
    return {ell, theta};
}

inline IsometryKind classify(const Isometry3& g, double tol = 1e-9) {
    require_unimodular(g);
    IsometryKind k;
    std::complex<double> tr = g.trace();
    bool near_identity = std::abs(g.b) <= tol && std::abs(g.c) <= tol && std::abs(g.a - g.d) <= tol &&
                         std::abs(std::abs(tr) - 2.0) <= tol;
    if (near_identity) return k;
    if (std::abs(tr.imag()) <= tol && std::abs(std::abs(tr.real()) - 2.0) <= tol) {
        k.type = IsometryClass::Parabolic;
        k.ambiguous = true;
        return k;
    }
    if (std::abs(tr.imag()) <= tol && std::abs(tr.real()) < 2.0) {
        k.type = IsometryClass::Elliptic;
        k.angle = 2.0 * std::acos(std::abs(tr.real()) / 2.0);
        return k;
    }
    std::complex<double> lambda = complex_translation_length(g);
    k.type = IsometryClass::Loxodromic;
    k.length = lambda.real();
    k.angle = lambda.imag();
    return k;
}

// ---------------------------------------------------------------------------
// loxodromic axis

struct AxisEndpoints {
    double attracting = 0.0;   // may be +-infinity
    double repelling = 0.0;
};

/// Fixed points on the boundary of the upper half-plane.
inline AxisEndpoints axis(const Mobius2& g) {
    IsometryKind k = classify(g);
    if (k.type != IsometryClass::Loxodromic)
        throw KindError("axis requires a loxodromic isometry");
    if (std::abs(g.c) < 1e-300) {
        // fixes infinity; other fixed point solves (a-d) z + b = 0
        double finite = g.b / (g.d - g.a);
        bool attract_inf = std::abs(g.a) > std::abs(g.d);
        return attract_inf ? AxisEndpoints{kInfinity, finite} : AxisEndpoints{finite, kInfinity};
    }
    double tr = g.trace();
    double disc = std::sqrt(tr * tr - 4.0);
    double r1 = (g.a - g.d + disc) / (2.0 * g.c);
    double r2 = (g.a - g.d - disc) / (2.0 * g.c);
    // attracting fixed point has |derivative| < 1; derivative is 1/(c z + d)^2
    double d1 = std::abs(g.c * r1 + g.d);
    return d1 > 1.0 ? AxisEndpoints{r1, r2} : AxisEndpoints{r2, r1};
}

inline AxisEndpoints axis(const ExactIsometry2& g) { return axis(to_mobius(g)); }

inline Geodesic2 axis_geodesic(const Mobius2& g) {
    AxisEndpoints e = axis(g);
    return geodesic_between(e.attracting, e.repelling);
}

inline double dist_to_axis(const H2Point& x, const Mobius2& g) {
    return dist_to_geodesic(x, axis_geodesic(g));
}

inline double dist_to_axis(const H2Point& x, const ExactIsometry2& g) {
    return dist_to_axis(x, to_mobius(g));
}

// ---------------------------------------------------------------------------
// parabolic data

struct ParabolicData {
    double fixed_point = 0.0;  // +-infinity allowed
    bool fixes_infinity = false;
    double translation = 0.0;  // |translation amount| after normalizing the fixed point to infinity
    double horospherical_length = 0.0;  // for the supplied horoball
    Horoball horoball;
};

/// Fixed point of a parabolic, and the translation amount seen after any
/// normalization sending the fixed point to infinity via z -> -1/(z - p).
/// For g fixing infinity the translation is read off directly.
inline ParabolicData parabolic_base_data(const Mobius2& g) {
    IsometryKind k = classify(g);
    if (k.type != IsometryClass::Parabolic)
        throw KindError("parabolic data requires a parabolic isometry");
    ParabolicData out;
    // sign with trace +2: v = g + identity has rank 1 and v = tr/2 +- nilpotent
    double s = g.trace() > 0 ? 1.0 : -1.0;
    double a = s * g.a, b = s * g.b, c = s * g.c, d = s * g.d;
    if (std::abs(c) < 1e-300) {
        out.fixes_infinity = true;
        out.fixed_point = kInfinity;
        out.translation = std::abs(b / d);
    } else {
        out.fixed_point = (a - d) / (2.0 * c);
        out.translation = std::abs(c);
    }
    return out;
}

/// Horospherical translation length of a parabolic on the boundary of a
/// horoball based at its fixed point: sinh(ell/2) = |c| / (2 H) in the
/// coordinates where the fixed point is infinity and the horoball is the
/// set above height H.
inline ParabolicData parabolic_data(const Mobius2& g, const Horoball& h, double tol = 1e-9) {
    ParabolicData out = parabolic_base_data(g);
    if (out.fixes_infinity != h.at_infinity ||
        (!h.at_infinity && std::abs(out.fixed_point - h.base) > tol))
        throw std::invalid_argument("horoball must be based at the parabolic fixed point");
    double height = h.at_infinity ? h.param : 1.0 / h.param;
    out.horospherical_length = 2.0 * std::asinh(out.translation / (2.0 * height));
    out.horoball = h;
    return out;
}

inline ParabolicData parabolic_data(const ExactIsometry2& g, const Horoball& h) {
    return parabolic_data(to_mobius(g), h);
}

/// The horoball at the fixed point of g on whose boundary g translates by
/// exactly the horospherical length ell (the class normalization pushed
/// forward to this conjugate).
inline Horoball horoball_for_length(const Mobius2& g, double ell) {
    ParabolicData base = parabolic_base_data(g);
    double height = base.translation / (2.0 * std::sinh(ell / 2.0));
    return base.fixes_infinity ? Horoball::at_inf(height) : Horoball::at(base.fixed_point, 1.0 / height);
}

inline Horoball horoball_for_length(const ExactIsometry2& g, double ell) {
    return horoball_for_length(to_mobius(g), ell);
}

// ---------------------------------------------------------------------------
// elliptic data

struct EllipticData {
    H2Point fixed_point;
    double angle = 0.0;  // nonoriented rotation angle in (0, pi]
};

inline EllipticData elliptic_data(const Mobius2& g) {
    IsometryKind k = classify(g);
    if (k.type != IsometryClass::Elliptic)
        throw KindError("elliptic data requires an elliptic isometry");
    // fixed points solve c z^2 + (d - a) z - b = 0; elliptic => c != 0
    double disc = 4.0 - g.trace() * g.trace();
    H2Point fix{(g.a - g.d) / (2.0 * g.c), std::sqrt(disc) / (2.0 * std::abs(g.c))};
    return {fix, k.angle};
}

/// Rotation of tangent vectors at the fixed point, via the derivative of
/// the Mobius map: the oracle for the elliptic angle convention.
inline double tangent_rotation_at_fixed_point(const Mobius2& g) {
    EllipticData e = elliptic_data(g);
    std::complex<double> deriv = 1.0 / std::pow(g.c * e.fixed_point.z() + g.d, 2);
    return fold_angle(std::arg(deriv));
}

}  // namespace census
