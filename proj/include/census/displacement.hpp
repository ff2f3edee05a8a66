// Closed-form displacement laws d(x, g x) as a function of the distance s
// to the invariant convex set of g (axis, horoball, or fixed point), their
// two-sided bounds, and the exact and asymptotic inverses s = psi(t).
//
// All laws are driven by the class invariants record: kind, translation /
// horospherical length ell, rotation angle theta, and the derived quantity
//   tau = sqrt((cosh ell - cos theta)/2)   loxodromic (orientation-preserving),
//   tau = 2 sinh(ell/2)                    parabolic,
//   tau = sin(theta/2)                     elliptic,
// so that psi(t) = t/2 - log tau + o(1) uniformly in the three kinds.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "census/isometry.hpp"

namespace census {

struct ConjClassInvariants {
    IsometryClass kind = IsometryClass::Loxodromic;
    double ell = 0.0;    // translation length, or horospherical length for the chosen horoball
    double theta = 0.0;  // loxodromic holonomy, or elliptic rotation angle
    int iota = 1;        // reciprocity / dihedral flag (user-supplied)
    int index = 1;       // index i_K of the class (user-supplied)

    std::complex<double> lambda() const { return {ell, theta}; }

    double tau() const {
        switch (kind) {
            case IsometryClass::Loxodromic:
                return std::sqrt((std::cosh(ell) - std::cos(theta)) / 2.0);
            case IsometryClass::Parabolic:
                return 2.0 * std::sinh(ell / 2.0);
            case IsometryClass::Elliptic:
                return std::sin(theta / 2.0);
            case IsometryClass::Identity:
                break;
        }
        throw KindError("invariants undefined for the identity class");
    }

    /// Smallest displacement of the class: attained on the convex set for
    /// loxodromic/parabolic kinds, zero for elliptic ones.
    double min_displacement() const {
        return kind == IsometryClass::Elliptic ? 0.0 : ell;
    }
};

inline ConjClassInvariants loxodromic_invariants(double ell, double theta = 0.0, int iota = 1,
                                                 int index = 1) {
    if (!(ell > 0.0)) throw std::domain_error("translation length must be positive");
    return {IsometryClass::Loxodromic, ell, theta, iota, index};
}

inline ConjClassInvariants parabolic_invariants(double ell, int iota = 1, int index = 1) {
    if (!(ell > 0.0)) throw std::domain_error("horospherical length must be positive");
    return {IsometryClass::Parabolic, ell, 0.0, iota, index};
}

inline ConjClassInvariants elliptic_invariants(double theta, int iota = 1, int index = 1) {
    if (!(theta > 0.0 && theta <= kPi + 1e-12)) throw std::domain_error("rotation angle must lie in (0, pi]");
    return {IsometryClass::Elliptic, 0.0, std::min(theta, kPi), iota, index};
}

// ---------------------------------------------------------------------------
// displacement laws

/// Loxodromic law at distance s from the axis, complex translation length
/// lambda = ell + i theta:  sinh^2(d/2) = sinh^2 s (cosh ell - cos theta)/2
///                                      + sinh^2(ell/2).
/// For theta = 0 this is d = 2 argsinh(cosh s sinh(ell/2)).
inline double disp_loxo(double s, std::complex<double> lambda) {
    double ell = lambda.real();
    if (!(ell > 0.0)) throw std::domain_error("disp_loxo: Re(lambda) must be positive");
    if (s < 0.0) throw std::domain_error("disp_loxo: s must be nonnegative");
    double tau2 = (std::cosh(ell) - std::cos(lambda.imag())) / 2.0;
    double sh = std::sinh(s);
    double v = sh * sh * tau2 + std::pow(std::sinh(ell / 2.0), 2);
    return 2.0 * std::asinh(std::sqrt(v));
}

struct Bounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// 2 argsinh(cosh s sinh(ell/2)) <= d(x, g x) <= 2 s + ell; the lower bound
/// is 2s + 2 log sinh(ell/2) + O(e^{-2s}), so the gap tends to
/// ell - 2 log sinh(ell/2).
inline Bounds disp_loxo_bounds(double s, double ell) {
    if (!(ell > 0.0)) throw std::domain_error("disp_loxo_bounds: ell must be positive");
    if (s < 0.0) throw std::domain_error("disp_loxo_bounds: s must be nonnegative");
    return {2.0 * std::asinh(std::cosh(s) * std::sinh(ell / 2.0)), 2.0 * s + ell};
}

/// Parabolic law with the signed horospherical coordinate: beta < 0 inside
/// the horoball. Exact in the half-plane for every beta.
inline double disp_para_signed(double beta, double ell) {
    if (!(ell > 0.0)) throw std::domain_error("disp_para: ell must be positive");
    return 2.0 * std::asinh(std::exp(beta) * std::sinh(ell / 2.0));
}

/// d = 2 argsinh(e^s sinh(ell/2)) at distance s >= 0 from the horoball.
inline double disp_para(double s, double ell) {
    if (s < 0.0) throw std::domain_error("disp_para: s must be nonnegative");
    return disp_para_signed(s, ell);
}

/// 2 argsinh(e^s sinh(ell/2)) <= d <= 2 s + ell (uniformly translating case).
inline Bounds disp_para_bounds(double s, double ell) {
    if (!(ell > 0.0)) throw std::domain_error("disp_para_bounds: ell must be positive");
    if (s < 0.0) throw std::domain_error("disp_para_bounds: s must be nonnegative");
    return {disp_para(s, ell), 2.0 * s + ell};
}

/// Elliptic law: d = 2 argsinh(sinh s sin(theta/2)); the parenthesization
/// sin(theta/2) is the one consistent with tau and with the rotation-matrix
/// oracle (see the displacement tests).
inline double disp_ell(double s, double theta) {
    if (!(theta > 0.0 && theta <= kPi + 1e-12)) throw std::domain_error("disp_ell: theta must lie in (0, pi]");
    if (s < 0.0) throw std::domain_error("disp_ell: s must be nonnegative");
    return 2.0 * std::asinh(std::sinh(s) * std::sin(theta / 2.0));
}

inline double displacement_law(const ConjClassInvariants& inv, double s) {
    switch (inv.kind) {
        case IsometryClass::Loxodromic: return disp_loxo(s, inv.lambda());
        case IsometryClass::Parabolic: return disp_para(s, inv.ell);
        case IsometryClass::Elliptic: return disp_ell(s, inv.theta);
        case IsometryClass::Identity: break;
    }
    throw KindError("no displacement law for the identity class");
}

// ---------------------------------------------------------------------------
// equitranslation inverses

/// Signed inverse of the parabolic law (no clamping; negative inside the
/// horoball). Engines compare against signed horoball distances with this.
inline double psi_signed_parabolic(double t, double ell) {
    if (!(t > 0.0)) throw std::domain_error("psi: t must be positive");
    return std::log(std::sinh(t / 2.0) / std::sinh(ell / 2.0));
}

/// Exact inverse s = psi(t) of the displacement law, so that
/// displacement_law(inv, psi_exact(inv, t)) = t. Domain: t >= minimal
/// displacement of the class; the parabolic branch is clamped at 0 (the
/// distance to a convex set vanishes inside it).
inline double psi_exact(const ConjClassInvariants& inv, double t) {
    double t_min = inv.min_displacement();
    if (t < t_min - 1e-12)
        throw std::domain_error("psi_exact: t below the minimal displacement " + std::to_string(t_min));
    t = std::max(t, t_min);
    switch (inv.kind) {
        case IsometryClass::Loxodromic: {
            double sh2 = std::pow(std::sinh(t / 2.0), 2) - std::pow(std::sinh(inv.ell / 2.0), 2);
            return std::asinh(std::sqrt(std::max(0.0, sh2)) / inv.tau());
        }
        case IsometryClass::Parabolic:
            return std::max(0.0, psi_signed_parabolic(t, inv.ell));
        case IsometryClass::Elliptic:
            return std::asinh(std::sinh(t / 2.0) / std::sin(inv.theta / 2.0));
        case IsometryClass::Identity:
            break;
    }
    throw KindError("no psi for the identity class");
}

/// First-order expansion psi(t) = t/2 - log tau, with remainder O(e^{-t})
/// (loxodromic, parabolic) or O(e^{-t/2}) (elliptic).
inline double psi_asymptotic(const ConjClassInvariants& inv, double t) {
    switch (inv.kind) {
        case IsometryClass::Loxodromic:
            return 0.5 * (t - std::log((std::cosh(inv.ell) - std::cos(inv.theta)) / 2.0));
        case IsometryClass::Parabolic:
            return t / 2.0 - std::log(std::sinh(inv.ell / 2.0)) - std::log(2.0);
        case IsometryClass::Elliptic:
            return t / 2.0 - std::log(std::sin(inv.theta / 2.0));
        case IsometryClass::Identity:
            break;
    }
    throw KindError("no psi for the identity class");
}

}  // namespace census
