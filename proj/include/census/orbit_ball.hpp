// Exact enumeration of orbit balls {g : d(x0, g x0) <= R} in discrete
// subgroups of PSL(2, R) given by integer generator matrices. Breadth-first
// word expansion with exact-matrix deduplication; frontier elements beyond
// R + prune_margin are dropped, and expansion continues until L consecutive
// layers contribute nothing inside R. The group gives no a priori
// certificate that word paths stay near geodesics, so completeness is
// re-checked post hoc (run again with L+1 layers and compare).
//
// Entries are overflow-checked; on overflow the whole enumeration restarts
// transparently on big-integer matrices.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "census/exact_matrix.hpp"
#include "census/geometry.hpp"
#include "census/isometry.hpp"

namespace census {

struct BallCapExceeded : std::runtime_error {
    BallCapExceeded(std::size_t cap)
        : std::runtime_error("orbit ball exceeded the element cap (" + std::to_string(cap) +
                             "); the generators may not span a discrete group, or the radius is "
                             "too large for desk scale") {}
};

struct SaturationFailure : std::runtime_error {
    SaturationFailure()
        : std::runtime_error("ball enumeration is not saturated: one more BFS layer changed the "
                             "result; increase saturation_layers or prune_margin") {}
};

struct BallOptions {
    double prune_margin = 1.0;     // keep expanding through elements up to R + this
    int saturation_layers = 3;     // stop after this many consecutive fruitless layers
    std::size_t element_cap = 30'000'000;
    bool verify_saturation = true;  // re-run with saturation_layers + 1 and compare
};

struct BallResult {
    std::vector<ExactIsometry2> elements;  // sorted; exactly {g : d(x0, g x0) <= R}
    bool escalated = false;                // enumeration needed big-integer arithmetic
    int layers_used = 0;
};

namespace detail {

/// 2 cosh d(x0, g x0) for x0 = u + i v, computed from the entries in
/// double precision. Reduces to the Frobenius norm at x0 = i.
template <class I>
double orbit_cosh2(const Matrix2<I>& g, const H2Point& x0) {
    if (x0.re == 0.0 && x0.im == 1.0) return g.frobenius2();
    double a = entry_to_double(g.a), b = entry_to_double(g.b);
    double c = entry_to_double(g.c), d = entry_to_double(g.d);
    double u = x0.re, v = x0.im;
    // numerator |g x0 - x0|^2 / (Im g x0) with Im g x0 = v / |c x0 + d|^2
    double cr = c * u + d, ci = c * v;
    double den2 = cr * cr + ci * ci;
    double nr = (a * u + b) * cr + a * v * ci;  // Re(num * conj(den))
    double ni = a * v * cr - (a * u + b) * ci;  // Im(num * conj(den))
    double gr = nr / den2, gi = ni / den2;
    double diff2 = (gr - u) * (gr - u) + (gi - v) * (gi - v);
    return 2.0 + diff2 * den2 / (v * v);
}

template <class I>
struct BallRun {
    std::vector<Matrix2<I>> in_ball;
    int layers = 0;
};

template <class I>
BallRun<I> enumerate_layers(const std::vector<Matrix2<I>>& gens, const H2Point& x0, double radius,
                            const BallOptions& opts, int saturation_layers) {
    std::vector<Matrix2<I>> moves;
    for (const Matrix2<I>& g : gens) {
        moves.push_back(g.canonical());
        moves.push_back(g.inverse());
    }
    const double keep_cosh2 = 2.0 * std::cosh(radius);
    const double expand_cosh2 = 2.0 * std::cosh(radius + opts.prune_margin);

    std::unordered_set<Matrix2<I>, Matrix2Hash<I>> visited;
    BallRun<I> run;
    Matrix2<I> id = Matrix2<I>::identity().canonical();
    visited.insert(id);
    run.in_ball.push_back(id);
    std::vector<Matrix2<I>> frontier{id}, next;

    int fruitless = 0;
    while (!frontier.empty() && fruitless < saturation_layers) {
        ++run.layers;
        next.clear();
        bool found_in_ball = false;
        for (const Matrix2<I>& g : frontier) {
            for (const Matrix2<I>& m : moves) {
                Matrix2<I> h = g * m;
                if (!visited.insert(h).second) continue;
                if (visited.size() > opts.element_cap) throw BallCapExceeded(opts.element_cap);
                double c2 = orbit_cosh2(h, x0);
                if (c2 <= keep_cosh2) {
                    run.in_ball.push_back(h);
                    found_in_ball = true;
                }
                if (c2 <= expand_cosh2) next.push_back(h);
            }
        }
        fruitless = found_in_ball ? 0 : fruitless + 1;
        frontier.swap(next);
    }
    std::sort(run.in_ball.begin(), run.in_ball.end());
    return run;
}

}  // namespace detail

/// Exact orbit ball of radius R around x0, deterministic in (generators,
/// x0, R) only. Throws BallCapExceeded / SaturationFailure; escalates to
/// big-integer entries on 64-bit overflow.
inline BallResult matrix_ball_enumerate(const std::vector<ExactIsometry2>& generators,
                                        const H2Point& x0, double radius,
                                        const BallOptions& opts = {}) {
    if (generators.empty()) throw std::invalid_argument("need at least one generator");
    if (radius < 0.0) throw std::invalid_argument("radius must be nonnegative");
    for (const ExactIsometry2& g : generators)
        if (g.det() != 1) throw std::invalid_argument("generators must be unimodular");

    BallResult result;
    try {
        auto run = detail::enumerate_layers(generators, x0, radius, opts, opts.saturation_layers);
        if (opts.verify_saturation) {
            auto check =
                detail::enumerate_layers(generators, x0, radius, opts, opts.saturation_layers + 1);
            if (check.in_ball != run.in_ball) throw SaturationFailure();
        }
        result.elements = std::move(run.in_ball);
        result.layers_used = run.layers;
        return result;
    } catch (const OverflowError&) {
        // fall through to the big-integer backend
    }

    std::vector<BigIsometry2> big_gens;
    for (const ExactIsometry2& g : generators) big_gens.push_back(to_big(g));
    auto run = detail::enumerate_layers(big_gens, x0, radius, opts, opts.saturation_layers);
    if (opts.verify_saturation) {
        auto check =
            detail::enumerate_layers(big_gens, x0, radius, opts, opts.saturation_layers + 1);
        if (check.in_ball != run.in_ball) throw SaturationFailure();
    }
    result.escalated = true;
    result.layers_used = run.layers;
    result.elements.reserve(run.in_ball.size());
    for (const BigIsometry2& g : run.in_ball) result.elements.push_back(to_exact(g));
    std::sort(result.elements.begin(), result.elements.end());
    return result;
}

}  // namespace census
