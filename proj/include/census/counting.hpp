// Conjugacy-class counting engines N_{K, x0}(t) for torsion-free matrix
// groups, by two independent routes over one exact conjugate enumeration:
//
//   direct    — count conjugates alpha with d(x0, alpha x0) <= t,
//   geometric — count conjugates alpha with d(x0, C_alpha) <= psi(t),
//               where C_alpha is the axis or pushed-forward horoball of
//               alpha and psi is the exact equitranslation inverse.
//
// In the half-plane the displacement laws are exact equalities, so the two
// integer series must agree at every threshold; run() checks that, plus a
// completeness saturation check (enlarging the enumeration radius by one
// changes no count).
//
// Also here: direction-vector sampling for equidistribution experiments
// and the counter for conjugates of a cusp stabilizer (subgroup classes).
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "census/displacement.hpp"
#include "census/group_spec.hpp"
#include "census/orbit_ball.hpp"

namespace census {

struct SeriesMeta {
    std::string engine;
    std::string group;
    std::string class_name;
    H2Point basepoint;
    double enumeration_radius = 0.0;
    double margin = 0.0;
    bool saturation_passed = false;
};

struct CountSeries {
    std::vector<double> thresholds;  // strictly increasing
    std::vector<std::uint64_t> counts;  // nondecreasing
    SeriesMeta meta;

    friend bool operator==(const CountSeries& x, const CountSeries& y) {
        return x.thresholds == y.thresholds && x.counts == y.counts;
    }
};

struct DirectionSample {
    std::vector<double> angles;  // one angle in [0, 2 pi) per counted conjugate
    double threshold = 0.0;
};

/// One counted conjugate: the exact matrix, its orbit displacement, the
/// signed distance from the basepoint to its convex set, and the direction
/// of the initial tangent vector at the basepoint.
struct ConjugateRecord {
    ExactIsometry2 element;
    double displacement = 0.0;
    double convex_distance = 0.0;  // axis distance, or signed horoball distance
    double angle = 0.0;
};

struct CountingOptions {
    double t_max = 16.0;
    double step = 0.5;
    std::optional<double> margin;          // completeness margin Delta; auto when unset
    std::optional<double> horoball_height;  // parabolic normalization at the class rep cusp
    int threads = 1;
    BallOptions ball;
};

struct ClassData {
    ConjClassInvariants invariants;
    ExactIsometry2 representative;
    std::string name;
    // parabolic only: representative's own horoball of the class normalization
    std::optional<Horoball> rep_horoball;
    // margin ingredients
    double base_distance = 0.0;  // |signed distance| from x0 to the representative's convex set
    double root_length = 0.0;    // translation length bound for the centralizer generator
};

struct CensusRun {
    ClassData cls;
    std::vector<ConjugateRecord> records;  // sorted by displacement
    CountSeries direct;
    CountSeries geometric;
    bool saturation_passed = false;
    double enumeration_radius = 0.0;
    double margin = 0.0;
    std::size_t ball_size = 0;
    bool escalated = false;
};

namespace detail {

inline std::vector<double> threshold_grid(double t_max, double step) {
    if (!(step > 0.0) || !(t_max > 0.0)) throw std::invalid_argument("t_max and step must be positive");
    std::vector<double> grid;
    for (int k = 1;; ++k) {
        double t = step * k;
        if (t > t_max + 1e-9) break;
        grid.push_back(t);
    }
    if (grid.empty() || grid.back() < t_max - 1e-9) grid.push_back(t_max);
    return grid;
}

/// Fixed-size chunks mapped possibly in parallel; the output ordering is a
/// function of the input ordering alone, never of the thread count.
template <class In, class Fn>
void deterministic_map(const std::vector<In>& input, int threads, Fn&& fn) {
    const std::size_t chunk = 4096;
    std::size_t n_chunks = (input.size() + chunk - 1) / chunk;
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (std::size_t c = cursor.fetch_add(1); c < n_chunks; c = cursor.fetch_add(1)) {
            std::size_t lo = c * chunk, hi = std::min(input.size(), lo + chunk);
            for (std::size_t i = lo; i < hi; ++i) fn(i, input[i]);
        }
    };
    if (threads <= 1 || n_chunks <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    int n = std::min<int>(threads, static_cast<int>(n_chunks));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
}

}  // namespace detail

/// Classify a representative and assemble the class invariants, including
/// the parabolic horoball normalization (user height, else the maximal
/// embedded height known for the group, else the basepoint horosphere).
inline ClassData make_class_data(const GroupSpec& group, const ExactIsometry2& rep,
                                 const std::string& name, const CountingOptions& opts,
                                 int iota = 1, int index = 1) {
    ClassData cls;
    cls.representative = rep.canonical();
    cls.name = name;
    IsometryKind kind = classify(cls.representative);
    switch (kind.type) {
        case IsometryClass::Identity:
            throw std::invalid_argument("the identity class is not counted");
        case IsometryClass::Elliptic:
            throw std::invalid_argument(
                "elliptic classes require torsion; the counting engines support torsion-free groups only");
        case IsometryClass::Loxodromic: {
            cls.invariants = loxodromic_invariants(kind.length, 0.0, iota, index);
            cls.base_distance = dist_to_axis(group.basepoint, cls.representative);
            cls.root_length = kind.length;  // upper bound for the primitive root length
            break;
        }
        case IsometryClass::Parabolic: {
            ParabolicData base = parabolic_base_data(to_mobius(cls.representative));
            double height;
            if (opts.horoball_height)
                height = *opts.horoball_height;
            else if (group.max_embedded_height)
                height = *group.max_embedded_height;
            else
                height = 1.0;
            Horoball ball = base.fixes_infinity ? Horoball::at_inf(height)
                                                : Horoball::at(base.fixed_point, 1.0 / height);
            ParabolicData data = parabolic_data(to_mobius(cls.representative), ball);
            cls.invariants = parabolic_invariants(data.horospherical_length, iota, index);
            cls.rep_horoball = ball;
            cls.base_distance = std::abs(signed_horoball_distance(group.basepoint, ball));
            cls.root_length = data.horospherical_length;
            break;
        }
    }
    return cls;
}

namespace detail {

/// Margin Delta such that every conjugate alpha with d(x0, alpha x0) <= t
/// has a conjugator in the orbit ball of radius psi(t) + Delta: the route
/// to a coset representative travels to the convex set (<= psi(t)), along
/// it within a centralizer fundamental domain, and back to x0.
inline double completeness_margin(const ClassData& cls, const GroupSpec& group) {
    if (cls.invariants.kind == IsometryClass::Parabolic) {
        // renormalize to the horoball through the basepoint's horosphere,
        // where the base distance vanishes and the fundamental-domain hop
        // along the horosphere costs at most 2 sinh(ell'/2)
        Horoball through = *cls.rep_horoball;
        double beta0 = signed_horoball_distance(group.basepoint, through);
        double sinh_half = std::sinh(cls.root_length / 2.0) * std::exp(beta0);
        double ell_prim = 2.0 * std::asinh(sinh_half);
        return std::max(ell_prim, 2.0 * sinh_half) + 1.0;
    }
    return cls.base_distance + cls.root_length + 1.0;
}

/// psi evaluated against the representative's normalization, shifted to the
/// basepoint horosphere in the parabolic case (counts are normalization
/// independent, the enumeration radius is smallest there).
inline double enumeration_psi(const ClassData& cls, const GroupSpec& group, double t) {
    if (cls.invariants.kind == IsometryClass::Parabolic) {
        Horoball through = *cls.rep_horoball;
        double beta0 = signed_horoball_distance(group.basepoint, through);
        double sinh_half = std::sinh(cls.invariants.ell / 2.0) * std::exp(beta0);
        return std::max(0.0, std::log(std::sinh(t / 2.0) / sinh_half));
    }
    return psi_exact(cls.invariants, std::max(t, cls.invariants.min_displacement()));
}

inline CountSeries build_series(const std::vector<double>& grid,
                                const std::vector<double>& values, const SeriesMeta& meta) {
    CountSeries s;
    s.thresholds = grid;
    s.counts.assign(grid.size(), 0);
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::size_t j = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        while (j < sorted.size() && sorted[j] <= grid[i]) ++j;
        s.counts[i] = j;
    }
    s.meta = meta;
    return s;
}

}  // namespace detail

/// Shared engine: enumerate conjugators, form the distinct conjugates, and
/// measure each conjugate both ways. The saturation check compares the two
/// series against the ones obtained from a ball enlarged by one.
inline CensusRun run_conjugacy_census(const GroupSpec& group, const ExactIsometry2& rep,
                                      const std::string& class_name, const CountingOptions& opts) {
    if (!group.torsion_free)
        throw std::invalid_argument("counting engines support torsion-free groups only");
    CensusRun run;
    run.cls = make_class_data(group, rep, class_name, opts);
    const ConjClassInvariants& inv = run.cls.invariants;
    const H2Point x0 = group.basepoint;

    double margin = opts.margin ? *opts.margin : detail::completeness_margin(run.cls, group);
    double psi_top = std::max(0.0, detail::enumeration_psi(run.cls, group, opts.t_max));
    double radius_base = psi_top + margin;
    double radius_full = radius_base + 1.0;  // saturation: +1 must change nothing
    run.margin = margin;
    run.enumeration_radius = radius_full;

    BallResult ball = matrix_ball_enumerate(group.generators, x0, radius_full, opts.ball);
    run.ball_size = ball.elements.size();
    run.escalated = ball.escalated;

    // distinct conjugates, remembering which ones the smaller base ball
    // already discovers: the saturation check compares the two count series
    std::vector<ExactIsometry2> conjugates(ball.elements.size());
    detail::deterministic_map(ball.elements, opts.threads,
                              [&](std::size_t i, const ExactIsometry2& g) {
                                  conjugates[i] = g * run.cls.representative * g.inverse();
                              });
    const double base_cosh2 = 2.0 * std::cosh(radius_base);
    // conjugates displacing x0 beyond the threshold grid never enter any
    // count; drop them before the measurement pass
    const double disp_cosh2 = 2.0 * std::cosh(opts.t_max + 1e-6);
    std::vector<ExactIsometry2> unique_all;
    std::vector<char> in_base;
    std::unordered_map<ExactIsometry2, std::size_t, Matrix2Hash<std::int64_t>> first_index;
    for (std::size_t i = 0; i < ball.elements.size(); ++i) {
        if (detail::orbit_cosh2(conjugates[i], x0) > disp_cosh2) continue;
        bool base = detail::orbit_cosh2(ball.elements[i], x0) <= base_cosh2;
        auto [it, inserted] = first_index.emplace(conjugates[i], unique_all.size());
        if (inserted) {
            unique_all.push_back(conjugates[i]);
            in_base.push_back(0);
        }
        if (base) in_base[it->second] = 1;
    }

    std::vector<ConjugateRecord> records(unique_all.size());
    detail::deterministic_map(unique_all, opts.threads, [&](std::size_t i,
                                                            const ExactIsometry2& alpha) {
        ConjugateRecord r;
        r.element = alpha;
        Mobius2 m = to_mobius(alpha);
        H2Point image = m.apply(x0);
        r.displacement = dist_h2(x0, image);
        if (inv.kind == IsometryClass::Loxodromic) {
            r.convex_distance = dist_to_axis(x0, m);
        } else {
            Horoball pushed = horoball_for_length(m, inv.ell);
            r.convex_distance = signed_horoball_distance(x0, pushed);
        }
        r.angle = tangent_angle(x0, image);
        records[i] = r;
    });

    // the geometric route maps the convex-set distance back through the
    // displacement law, which is equivalent to comparing it against psi(t)
    auto geometric_value = [&](const ConjugateRecord& r) {
        return inv.kind == IsometryClass::Loxodromic
                   ? disp_loxo(std::max(0.0, r.convex_distance), inv.lambda())
                   : disp_para_signed(r.convex_distance, inv.ell);
    };

    std::vector<double> disp_all, geom_all, disp_base, geom_base;
    for (std::size_t i = 0; i < records.size(); ++i) {
        double d = records[i].displacement, g = geometric_value(records[i]);
        disp_all.push_back(d);
        geom_all.push_back(g);
        if (in_base[i]) {
            disp_base.push_back(d);
            geom_base.push_back(g);
        }
    }

    const std::vector<double> grid = detail::threshold_grid(opts.t_max, opts.step);
    SeriesMeta meta{"direct", group.name, class_name, x0, run.enumeration_radius, margin, false};
    CountSeries direct_full = detail::build_series(grid, disp_all, meta);
    meta.engine = "geometric";
    CountSeries geometric_full = detail::build_series(grid, geom_all, meta);
    CountSeries direct_base = detail::build_series(grid, disp_base, meta);
    CountSeries geometric_base = detail::build_series(grid, geom_base, meta);

    run.saturation_passed =
        direct_full.counts == direct_base.counts && geometric_full.counts == geometric_base.counts;
    if (!run.saturation_passed) throw SaturationFailure();

    std::sort(records.begin(), records.end(),
              [](const ConjugateRecord& x, const ConjugateRecord& y) {
                  if (x.displacement != y.displacement) return x.displacement < y.displacement;
                  return x.element < y.element;
              });
    run.records = std::move(records);
    run.direct = std::move(direct_full);
    run.geometric = std::move(geometric_full);
    run.direct.meta.saturation_passed = true;
    run.geometric.meta.saturation_passed = true;
    return run;
}

inline CountSeries conj_count_direct(const GroupSpec& group, const ExactIsometry2& rep,
                                     const std::string& class_name, const CountingOptions& opts) {
    return run_conjugacy_census(group, rep, class_name, opts).direct;
}

inline CountSeries conj_count_geometric(const GroupSpec& group, const ExactIsometry2& rep,
                                        const std::string& class_name,
                                        const CountingOptions& opts) {
    return run_conjugacy_census(group, rep, class_name, opts).geometric;
}

inline DirectionSample directions_at(const CensusRun& run, double t) {
    DirectionSample s;
    s.threshold = t;
    for (const ConjugateRecord& r : run.records)
        if (r.displacement <= t) s.angles.push_back(r.angle);
    return s;
}

// ---------------------------------------------------------------------------
// subgroup conjugacy classes

struct SubgroupSpec {
    ExactIsometry2 generator;  // parabolic generator of the cusp stabilizer
    double c_minus = 0.0;      // two-sided bounds on the boundary displacement
    double c_plus = 0.0;
    std::optional<double> horoball_height;
};

struct SubgroupRun {
    CountSeries series;
    std::vector<double> min_displacements;  // one per counted coset, sorted
    std::vector<double> convex_distances;   // signed, matching order
    bool bounds_respected = false;          // the two-sided sandwich on every coset with x0 outside
    bool saturation_passed = false;
};

/// Count conjugates of a cusp stabilizer <g> whose minimal displacement of
/// the basepoint is at most t. Cosets of the normalizer biject with the
/// conjugates of g; the minimal displacement over the conjugate subgroup is
/// attained at the primitive and is computed through the parabolic law from
/// the signed distance to the pushed horoball.
inline SubgroupRun subgroup_conj_count(const GroupSpec& group, const SubgroupSpec& sub,
                                       const CountingOptions& opts) {
    IsometryKind kind = classify(sub.generator);
    if (kind.type != IsometryClass::Parabolic)
        throw std::invalid_argument("subgroup counting expects a parabolic cusp stabilizer");
    if (sub.c_minus > sub.c_plus) throw std::invalid_argument("need c_minus <= c_plus");

    CountingOptions inner = opts;
    if (sub.horoball_height) inner.horoball_height = sub.horoball_height;
    CensusRun run = run_conjugacy_census(group, sub.generator, "subgroup", inner);
    const double ell = run.cls.invariants.ell;

    SubgroupRun out;
    out.saturation_passed = run.saturation_passed;
    out.bounds_respected = true;
    std::vector<double> mins;
    for (const ConjugateRecord& r : run.records) {
        double min_disp = disp_para_signed(r.convex_distance, ell);
        mins.push_back(min_disp);
        out.convex_distances.push_back(r.convex_distance);
        if (r.convex_distance >= 0.0) {
            Bounds b{2.0 * std::asinh(std::cosh(r.convex_distance) * std::sinh(sub.c_minus / 2.0)),
                     2.0 * r.convex_distance + sub.c_plus};
            if (min_disp < b.lower - 1e-9 || min_disp > b.upper + 1e-9) out.bounds_respected = false;
        }
    }
    out.min_displacements = mins;
    SeriesMeta meta{"subgroup", group.name, "conjugates of <" + run.cls.name + ">",
                    group.basepoint, run.enumeration_radius, run.margin, run.saturation_passed};
    out.series = detail::build_series(detail::threshold_grid(opts.t_max, opts.step), mins, meta);
    return out;
}

// ---------------------------------------------------------------------------
// direction statistics

struct Histogram {
    std::vector<std::uint64_t> bins;
    std::uint64_t total = 0;
};

inline Histogram direction_measure(const DirectionSample& sample, int n_bins) {
    if (sample.angles.empty()) throw std::invalid_argument("direction sample is empty");
    if (n_bins < 1) throw std::invalid_argument("need at least one bin");
    Histogram h;
    h.bins.assign(static_cast<std::size_t>(n_bins), 0);
    for (double a : sample.angles) {
        double u = a / (2.0 * kPi);
        auto idx = static_cast<std::size_t>(u * n_bins);
        if (idx >= h.bins.size()) idx = h.bins.size() - 1;
        ++h.bins[idx];
        ++h.total;
    }
    return h;
}

}  // namespace census
