// Randomized verification of the displacement laws against matrix-computed
// displacements, and of the two-sided bounds. Used by the verify-laws job
// and by the acceptance suite. All sampling is pre-generated from the seed
// so results do not depend on the worker count.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "census/chc.hpp"
#include "census/displacement.hpp"
#include "census/isometry.hpp"

namespace census {

struct LawCheck {
    std::string law;
    double max_rel_error = 0.0;
    int samples = 0;
};

struct BoundsCheck {
    std::string law;
    int samples = 0;
    int violations = 0;
    double gap_error_at_10 = 0.0;  // |gap(s=10) - (ell - 2 log sinh(ell/2))|, loxodromic only
};

namespace verify_detail {

inline double rel_err(double got, double want) {
    double scale = std::max({std::abs(got), std::abs(want), 1e-30});
    return std::abs(got - want) / scale;
}

/// Random element of SL(2, R) with entries of moderate size.
inline Mobius2 random_sl2r(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        Mobius2 m{u(rng), u(rng), u(rng), u(rng)};
        double det = m.det();
        if (std::abs(det) < 0.05) continue;
        if (det < 0) {
            m.b = -m.b;
            m.d = -m.d;
            det = -det;
        }
        double s = std::sqrt(det);
        return {m.a / s, m.b / s, m.c / s, m.d / s};
    }
}

/// Point at hyperbolic distance s from the vertical axis, on the unit
/// circle geodesic through i (the angle-of-parallelism parametrization).
inline H2Point point_off_axis(double s) { return {std::tanh(s), 1.0 / std::cosh(s)}; }

}  // namespace verify_detail

/// Plane loxodromic law vs d(x, g x), including a randomly conjugated copy
/// where the axis distance is recomputed from the conjugated matrix.
inline LawCheck check_loxo_plane(int samples, std::mt19937_64& rng) {
    using namespace verify_detail;
    std::uniform_real_distribution<double> ell_d(0.05, 6.0), s_d(0.0, 8.0);
    LawCheck out{"loxodromic-plane", 0.0, samples};
    for (int i = 0; i < samples; ++i) {
        double ell = ell_d(rng), s = s_d(rng);
        Mobius2 g{std::exp(ell / 2.0), 0.0, 0.0, std::exp(-ell / 2.0)};
        H2Point x = point_off_axis(s);
        double want = disp_loxo(s, {ell, 0.0});
        out.max_rel_error = std::max(out.max_rel_error, rel_err(dist_h2(x, g.apply(x)), want));

        Mobius2 q = random_sl2r(rng);
        Mobius2 gc = q * g * q.inverse();
        H2Point xc = q.apply(x);
        double sc = dist_to_axis(xc, gc);
        double want_c = disp_loxo(sc, {ell, 0.0});
        out.max_rel_error = std::max(out.max_rel_error, rel_err(dist_h2(xc, gc.apply(xc)), want_c));
    }
    return out;
}

/// Space loxodromic law with complex translation length, on the normal form
/// (z, r) -> e^ell (e^{i theta} z, r).
inline LawCheck check_loxo_space(int samples, std::mt19937_64& rng) {
    using namespace verify_detail;
    std::uniform_real_distribution<double> ell_d(0.05, 6.0), s_d(0.0, 8.0), th_d(-kPi, kPi),
        ph_d(0.0, 2.0 * kPi);
    LawCheck out{"loxodromic-space", 0.0, samples};
    for (int i = 0; i < samples; ++i) {
        double ell = ell_d(rng), s = s_d(rng), theta = th_d(rng), phi = ph_d(rng);
        std::complex<double> half{ell / 2.0, theta / 2.0};
        Isometry3 g{std::exp(half), 0.0, 0.0, std::exp(-half)};
        H3Point x{std::tanh(s) * std::exp(std::complex<double>(0.0, phi)), 1.0 / std::cosh(s)};
        double want = disp_loxo(s, {ell, theta});
        out.max_rel_error = std::max(out.max_rel_error, rel_err(dist_h3(x, g.apply(x)), want));
        std::complex<double> lambda = complex_translation_length(g);
        out.max_rel_error = std::max(out.max_rel_error, rel_err(lambda.real(), ell));
    }
    return out;
}

/// Parabolic law, unconjugated and through the pushed-horoball route used
/// by the geometric counter.
inline LawCheck check_parabolic(int samples, std::mt19937_64& rng) {
    using namespace verify_detail;
    std::uniform_real_distribution<double> c_d(0.2, 5.0), h_d(0.3, 3.0), s_d(0.0, 8.0),
        u_d(-3.0, 3.0);
    LawCheck out{"parabolic-plane", 0.0, samples};
    for (int i = 0; i < samples; ++i) {
        double c = c_d(rng), height = h_d(rng), s = s_d(rng), u = u_d(rng);
        double ell = 2.0 * std::asinh(c / (2.0 * height));
        Mobius2 g{1.0, c, 0.0, 1.0};
        H2Point x{u, height * std::exp(-s)};
        double want = disp_para(s, ell);
        out.max_rel_error = std::max(out.max_rel_error, rel_err(dist_h2(x, g.apply(x)), want));

        Mobius2 q = random_sl2r(rng);
        Mobius2 gc = q * g * q.inverse();
        H2Point xc = q.apply(x);
        Horoball pushed = horoball_for_length(gc, ell);
        double beta = signed_horoball_distance(xc, pushed);
        double want_c = disp_para_signed(beta, ell);
        out.max_rel_error = std::max(out.max_rel_error, rel_err(dist_h2(xc, gc.apply(xc)), want_c));
    }
    return out;
}

/// Elliptic law about the fixed point i; the angle comes from classify, the
/// convention is pinned by the tangent-rotation oracle in the tests.
inline LawCheck check_elliptic(int samples, std::mt19937_64& rng) {
    using namespace verify_detail;
    std::uniform_real_distribution<double> phi_d(0.025, kPi / 2.0 - 0.025), s_d(0.0, 8.0);
    LawCheck out{"elliptic-plane", 0.0, samples};
    for (int i = 0; i < samples; ++i) {
        double phi = phi_d(rng), s = s_d(rng);
        Mobius2 g{std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi)};
        double theta = classify(g).angle;
        H2Point x{0.0, std::exp(s)};
        double want = disp_ell(s, theta);
        out.max_rel_error = std::max(out.max_rel_error, rel_err(dist_h2(x, g.apply(x)), want));

        Mobius2 q = random_sl2r(rng);
        Mobius2 gc = q * g * q.inverse();
        H2Point xc = q.apply(x);
        double sc = dist_h2(xc, elliptic_data(gc).fixed_point);
        double want_c = disp_ell(sc, theta);
        out.max_rel_error = std::max(out.max_rel_error, rel_err(dist_h2(xc, gc.apply(xc)), want_c));
    }
    return out;
}

inline std::vector<LawCheck> verify_laws(int samples_per_law, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<LawCheck> out;
    out.push_back(check_loxo_plane(samples_per_law, rng));
    out.push_back(check_loxo_space(samples_per_law, rng));
    out.push_back(check_parabolic(samples_per_law, rng));
    out.push_back(check_elliptic(samples_per_law, rng));
    return out;
}

/// Sandwich checks: law value between the two-sided bounds, with the
/// asymptotic gap identity evaluated at s = 10.
inline std::vector<BoundsCheck> verify_bounds(int samples_per_law, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ell_d(0.05, 6.0), s_d(0.0, 10.0);
    const double tol = 1e-10;
    std::vector<BoundsCheck> out;

    BoundsCheck loxo{"loxodromic", samples_per_law, 0, 0.0};
    for (int i = 0; i < samples_per_law; ++i) {
        double ell = ell_d(rng), s = s_d(rng);
        Mobius2 g{std::exp(ell / 2.0), 0.0, 0.0, std::exp(-ell / 2.0)};
        H2Point x = verify_detail::point_off_axis(s);
        double oracle = dist_h2(x, g.apply(x));
        Bounds b = disp_loxo_bounds(s, ell);
        if (oracle < b.lower - tol || oracle > b.upper + tol) ++loxo.violations;
    }
    {
        double ell = 2.0;
        Bounds b = disp_loxo_bounds(10.0, ell);
        double expected_gap = ell - 2.0 * std::log(std::sinh(ell / 2.0));
        loxo.gap_error_at_10 = std::abs((b.upper - b.lower) - expected_gap);
        ell = 1.0;  // sinh(ell/2) < 1 side
        b = disp_loxo_bounds(10.0, ell);
        expected_gap = ell - 2.0 * std::log(std::sinh(ell / 2.0));
        loxo.gap_error_at_10 = std::max(loxo.gap_error_at_10,
                                        std::abs((b.upper - b.lower) - expected_gap));
    }
    out.push_back(loxo);

    BoundsCheck para{"parabolic", samples_per_law, 0, 0.0};
    std::uniform_real_distribution<double> c_d(0.2, 5.0), h_d(0.3, 3.0);
    for (int i = 0; i < samples_per_law; ++i) {
        double c = c_d(rng), height = h_d(rng), s = s_d(rng);
        double ell = 2.0 * std::asinh(c / (2.0 * height));
        Mobius2 g{1.0, c, 0.0, 1.0};
        H2Point x{0.0, height * std::exp(-s)};
        double oracle = dist_h2(x, g.apply(x));
        Bounds b = disp_para_bounds(s, ell);
        if (oracle < b.lower - tol || oracle > b.upper + tol) ++para.violations;
    }
    out.push_back(para);
    return out;
}

// ---------------------------------------------------------------------------
// complex hyperbolic spread experiment

struct ChcSpread {
    std::string kind;
    double spread = 0.0;                 // max - min over the sample (vertical case)
    std::vector<double> scale_max;       // max displacement at |w| = 1, 10, 100
};

inline std::vector<ChcSpread> chc_check(int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0), phase(0.0, 2.0 * kPi);
    std::vector<ChcSpread> out;
    const double s = 2.0;

    {
        chc::ParabolicCH t = chc::vertical_translation(2.0 * 1.3);
        std::vector<chc::CHPoint> sample;
        for (int i = 0; i < points; ++i)
            sample.push_back(chc::horosphere_point(
                s, std::complex<double>(10.0 * u(rng), 10.0 * u(rng)), 10.0 * u(rng)));
        auto spread = chc::displacement_on_horosphere(t, s, sample);
        out.push_back({"vertical", spread.max - spread.min, {}});
    }
    {
        chc::ParabolicCH t = chc::heis_translation(
            std::complex<double>(0.5, 0.7), std::exp(std::complex<double>(0.0, phase(rng))));
        ChcSpread r{"nonvertical", 0.0, {}};
        for (double scale : {1.0, 10.0, 100.0}) {
            std::vector<chc::CHPoint> sample;
            for (int i = 0; i < points; ++i)
                sample.push_back(chc::horosphere_point(
                    s, scale * std::exp(std::complex<double>(0.0, phase(rng))), u(rng)));
            r.scale_max.push_back(chc::displacement_on_horosphere(t, s, sample).max);
        }
        out.push_back(r);
    }
    {
        chc::ParabolicCH t;
        t.rotation = std::exp(std::complex<double>(0.0, 0.8));
        t.a = {0.0, 0.0};
        t.z0 = {0.0, 0.4};
        ChcSpread r{"rotational", 0.0, {}};
        for (double scale : {1.0, 10.0, 100.0}) {
            std::vector<chc::CHPoint> sample;
            for (int i = 0; i < points; ++i)
                sample.push_back(chc::horosphere_point(
                    s, scale * std::exp(std::complex<double>(0.0, phase(rng))), u(rng)));
            r.scale_max.push_back(chc::displacement_on_horosphere(t, s, sample).max);
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace census
