// Complex hyperbolic plane in the Siegel-domain style projective model:
// the Hermitian form <z, w> = -z0 conj(w2) + z1 conj(w1) - z2 conj(w0) of
// signature (1, 2), the projective distance, horospheres H_s centred at
// infinity, and the parabolic isometries fixing infinity (Heisenberg
// translations and their rotational extensions). Enough to check which
// parabolics translate horospheres uniformly.
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "census/geometry.hpp"

namespace census {
namespace chc {

using Cx = std::complex<double>;

/// Homogeneous coordinates [w0 : w : w2] on P^2(C); interior points have
/// q < 0 after normalizing w2 = 1.
struct CHPoint {
    Cx w0{0, 0};
    Cx w{0, 0};
    Cx w2{1, 0};
};

inline Cx inner(const CHPoint& x, const CHPoint& y) {
    return -x.w0 * std::conj(y.w2) + x.w * std::conj(y.w) - x.w2 * std::conj(y.w0);
}

inline double q_form(const CHPoint& x) { return inner(x, x).real(); }

inline void require_interior_ch(const CHPoint& x) {
    double qx = q_form(x);
    double scale = std::norm(x.w0) + std::norm(x.w) + std::norm(x.w2);
    if (!(qx < -1e-12 * scale)) throw std::domain_error("point is not interior (q >= 0)");
}

/// d(X, Y) = argcosh sqrt(<x,y><y,x> / (q(x) q(y))), independent of the
/// homogeneous representatives.
inline double ch_dist(const CHPoint& x, const CHPoint& y) {
    require_interior_ch(x);
    require_interior_ch(y);
    double num = std::norm(inner(x, y));
    double den = q_form(x) * q_form(y);
    double ratio = num / den;
    return std::acosh(std::sqrt(std::max(1.0, ratio)));
}

/// Point of the horosphere H_s = {q = -s} over the Heisenberg coordinate
/// (w, v): w0 = (|w|^2 + s)/2 + i v.
inline CHPoint horosphere_point(double s, Cx w, double v) {
    if (!(s > 0.0)) throw std::domain_error("horosphere parameter must be positive");
    return {Cx((std::norm(w) + s) / 2.0, v), w, Cx(1, 0)};
}

/// Parabolic isometry fixing infinity:
///   [[1, conj(a), z0], [0, A, b], [0, 0, 1]]
/// with |A| = 1, b = A a, Re z0 = |a|^2 / 2. Heisenberg translations are
/// the case A = 1; vertical ones additionally have a = 0.
struct ParabolicCH {
    Cx rotation{1, 0};  // A
    Cx a{0, 0};
    Cx z0{0, 0};

    Cx b() const { return rotation * a; }

    void validate(double tol = 1e-12) const {
        if (std::abs(std::abs(rotation) - 1.0) > tol)
            throw std::invalid_argument("rotational part must be unitary");
        if (std::abs(z0.real() - std::norm(a) / 2.0) > tol)
            throw std::invalid_argument("Re z0 must equal |a|^2 / 2 (form preservation)");
    }

    bool is_heisenberg(double tol = 1e-12) const { return std::abs(rotation - Cx(1, 0)) <= tol; }
    bool is_vertical(double tol = 1e-12) const { return is_heisenberg(tol) && std::abs(a) <= tol; }
};

/// Heisenberg translation T_Z for a boundary point Z = [z0 : z : 1].
inline ParabolicCH heis_translation(Cx z0, Cx z) {
    ParabolicCH t;
    t.rotation = Cx(1, 0);
    t.a = z;
    t.z0 = z0;
    t.validate();
    return t;
}

inline ParabolicCH vertical_translation(double v) { return heis_translation(Cx(0, v), Cx(0, 0)); }

inline CHPoint heis_apply(const ParabolicCH& t, const CHPoint& x) {
    t.validate(1e-9);
    return {x.w0 + std::conj(t.a) * x.w + t.z0 * x.w2,
            t.rotation * x.w + t.b() * x.w2,
            x.w2};
}

/// Composition, again a parabolic fixing infinity; for two Heisenberg
/// translations this realizes the Heisenberg group law.
inline ParabolicCH compose(const ParabolicCH& s, const ParabolicCH& t) {
    ParabolicCH r;
    r.rotation = s.rotation * t.rotation;
    r.a = std::conj(std::conj(s.a) * t.rotation) + t.a;
    r.z0 = s.z0 + t.z0 + std::conj(s.a) * t.b();
    return r;
}

struct DisplacementSpread {
    double min = 0.0;
    double max = 0.0;
    std::vector<double> values;
};

/// Displacement of a parabolic on a sample of points of H_s. Vertical
/// Heisenberg translations displace every point of the horosphere equally;
/// anything else has unbounded displacement as |w| grows.
inline DisplacementSpread displacement_on_horosphere(const ParabolicCH& t, double s,
                                                     const std::vector<CHPoint>& sample) {
    if (sample.empty()) throw std::invalid_argument("need a nonempty sample");
    DisplacementSpread out;
    bool first = true;
    for (const CHPoint& x : sample) {
        double qx = q_form(x);
        if (std::abs(qx + s) > 1e-9 * std::max(1.0, std::abs(s)))
            throw std::invalid_argument("sample point is not on the requested horosphere");
        double d = ch_dist(x, heis_apply(t, x));
        out.values.push_back(d);
        out.min = first ? d : std::min(out.min, d);
        out.max = first ? d : std::max(out.max, d);
        first = false;
    }
    return out;
}

}  // namespace chc
}  // namespace census
