// Asymptotic analysis of count series: growth-rate regression, empirical
// multiplicative constants, the closed-form lattice constants the counts
// converge to, and discrepancy statistics for direction histograms.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "census/counting.hpp"
#include "census/displacement.hpp"
#include "census/group_spec.hpp"

namespace census {

struct GrowthFit {
    double slope = 0.0;
    double intercept = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double residual_rms = 0.0;
    std::size_t points = 0;
};

/// Least-squares fit of log N(t) against t over [window_lo, window_hi];
/// zero counts are excluded. Requires at least 4 usable points.
inline GrowthFit fit_growth_rate(const CountSeries& series, double window_lo, double window_hi) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < series.thresholds.size(); ++i) {
        double t = series.thresholds[i];
        if (t < window_lo - 1e-9 || t > window_hi + 1e-9) continue;
        if (series.counts[i] == 0) continue;
        xs.push_back(t);
        ys.push_back(std::log(static_cast<double>(series.counts[i])));
    }
    if (xs.size() < 4)
        throw std::invalid_argument("fit_growth_rate: need at least 4 nonzero counts in the window");
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    GrowthFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.window_lo = window_lo;
    fit.window_hi = window_hi;
    fit.points = xs.size();
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

struct EmpiricalConstant {
    std::vector<double> thresholds;
    std::vector<double> values;  // C_hat(t) = N(t) e^{-delta t / 2}
    double tail_mean = 0.0;      // over the last third of nonzero thresholds
    double tail_min = 0.0;
    double tail_max = 0.0;
};

inline EmpiricalConstant empirical_constant(const CountSeries& series, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("growth exponent must be positive");
    EmpiricalConstant out;
    std::vector<double> nonzero_t;
    for (std::size_t i = 0; i < series.thresholds.size(); ++i) {
        double t = series.thresholds[i];
        double c = static_cast<double>(series.counts[i]) * std::exp(-delta * t / 2.0);
        out.thresholds.push_back(t);
        out.values.push_back(c);
        if (series.counts[i] > 0) nonzero_t.push_back(t);
    }
    if (nonzero_t.empty()) return out;
    std::size_t take = (nonzero_t.size() + 2) / 3;  // last third, rounded up
    double tail_start = nonzero_t[nonzero_t.size() - take];
    bool first = true;
    double sum = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < out.thresholds.size(); ++i) {
        if (out.thresholds[i] < tail_start - 1e-9 || series.counts[i] == 0) continue;
        double v = out.values[i];
        sum += v;
        ++n;
        out.tail_min = first ? v : std::min(out.tail_min, v);
        out.tail_max = first ? v : std::max(out.tail_max, v);
        first = false;
    }
    out.tail_mean = n ? sum / static_cast<double>(n) : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// theoretical constants for lattices

inline double sphere_volume(int dim) {
    // Vol(S^dim), dim >= 0
    if (dim < 0) throw std::invalid_argument("sphere dimension must be nonnegative");
    double n = static_cast<double>(dim) + 1.0;  // ambient dimension
    return 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
}

struct TheoreticalConstant {
    double value = 0.0;
    std::string formula;  // which closed form produced it
    double ell = 0.0;
    double theta = 0.0;
    int i_K = 1;
    int m_rep = 1;   // order of the representative in the maximal cyclic group
    int n_rep = 1;   // pointwise axis stabilizer meeting the centralizer
    double covolume = 0.0;
};

/// Loxodromic lattice constant in H^n:
///   Vol(S^{n-2}) ell / (2^{(n-1)/2} (n-1) m n Vol(M) (cosh ell - cos theta)^{(n-1)/2}).
/// For n = 2, theta = 0, primitive torsion-free this reduces to
/// ell / (Vol(M) sinh(ell/2)).
inline TheoreticalConstant loxodromic_constant_hn(int n, double ell, double theta, double covolume,
                                                  int m_rep = 1, int n_rep = 1) {
    if (n < 2) throw std::invalid_argument("dimension must be at least 2");
    if (!(covolume > 0.0)) throw std::invalid_argument("lattice covolume required");
    TheoreticalConstant c;
    double half = (n - 1) / 2.0;
    c.value = sphere_volume(n - 2) * ell /
              (std::pow(2.0, half) * (n - 1) * m_rep * n_rep * covolume *
               std::pow(std::cosh(ell) - std::cos(theta), half));
    c.formula = "loxodromic-lattice";
    c.ell = ell;
    c.theta = theta;
    c.m_rep = m_rep;
    c.n_rep = n_rep;
    c.covolume = covolume;
    return c;
}

/// Parabolic lattice constant in H^n:
///   i_K Vol(cusp cross-section) / (Vol(M) (2 sinh(ell/2))^{n-1}),
/// horoball-normalization independent. For a primitive class in dimension 2
/// the cusp cross-section has length 2 sinh(ell/2) and the value is
/// i_K / Vol(M).
inline TheoreticalConstant parabolic_constant_hn(int n, double ell, double cusp_volume,
                                                 double covolume, int i_K = 1) {
    if (!(covolume > 0.0)) throw std::invalid_argument("lattice covolume required");
    TheoreticalConstant c;
    c.value = i_K * cusp_volume / (covolume * std::pow(2.0 * std::sinh(ell / 2.0), n - 1));
    c.formula = "parabolic-lattice";
    c.ell = ell;
    c.i_K = i_K;
    c.covolume = covolume;
    return c;
}

/// Elliptic lattice constant in H^n (shape of the fixed-point law):
///   i_K |mu| |sigma_K| / (delta |m_BM| (sin(theta/2))^delta)
/// with the lattice normalizations |mu| = Vol(S^{n-1}) and
/// |m_BM| = 2^{n-1} Vol(S^{n-1}) Vol(M). The skinning mass of the fixed
/// point set is Vol(S^{n-1}) / stabilizer_order for a point fixed set.
inline TheoreticalConstant elliptic_constant_hn(int n, double theta, double covolume,
                                                int stabilizer_order = 1, int i_K = 1) {
    if (!(covolume > 0.0)) throw std::invalid_argument("lattice covolume required");
    TheoreticalConstant c;
    double mu = sphere_volume(n - 1);
    double sigma = mu / stabilizer_order;
    double m_bm = std::pow(2.0, n - 1) * mu * covolume;
    c.value = i_K * mu * sigma / ((n - 1) * m_bm * std::pow(std::sin(theta / 2.0), n - 1));
    c.formula = "elliptic-lattice";
    c.theta = theta;
    c.i_K = i_K;
    c.covolume = covolume;
    return c;
}

/// Surface specialization used by the gamma2 experiments: dispatch on the
/// class kind with the dimension-2 closed forms.
inline TheoreticalConstant theoretical_constant(const GroupSpec& group,
                                                const ConjClassInvariants& inv, int root_power = 1) {
    if (!group.lattice) throw std::invalid_argument("theoretical constants require lattice data");
    const LatticeData& lat = *group.lattice;
    switch (inv.kind) {
        case IsometryClass::Loxodromic:
            return loxodromic_constant_hn(2, inv.ell, inv.theta, lat.covolume, root_power, 1);
        case IsometryClass::Parabolic: {
            // cusp cross-section of the primitive: (2 sinh(ell_class/2)) / power
            double cusp = 2.0 * std::sinh(inv.ell / 2.0) / root_power;
            return parabolic_constant_hn(2, inv.ell, cusp, lat.covolume, inv.index);
        }
        case IsometryClass::Elliptic:
            return elliptic_constant_hn(2, inv.theta, lat.covolume, 1, inv.index);
        case IsometryClass::Identity:
            break;
    }
    throw std::invalid_argument("no constant for the identity class");
}

// ---------------------------------------------------------------------------
// discrepancy statistics

struct DiscrepancyStats {
    double tv = 0.0;       // total variation distance to the uniform bin law
    double sup_cdf = 0.0;  // sup |empirical CDF - uniform CDF| at bin edges
    double chi2 = 0.0;     // Pearson statistic against uniform
};

inline DiscrepancyStats discrepancy_stats(const Histogram& hist) {
    if (hist.total == 0 || hist.bins.empty())
        throw std::invalid_argument("discrepancy statistics need a nonempty histogram");
    DiscrepancyStats s;
    double n = static_cast<double>(hist.total);
    double b = static_cast<double>(hist.bins.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < hist.bins.size(); ++i) {
        double p = static_cast<double>(hist.bins[i]) / n;
        double q = 1.0 / b;
        s.tv += std::abs(p - q);
        cum += p;
        s.sup_cdf = std::max(s.sup_cdf, std::abs(cum - static_cast<double>(i + 1) / b));
        double expected = n / b;
        double diff = static_cast<double>(hist.bins[i]) - expected;
        s.chi2 += diff * diff / expected;
    }
    s.tv /= 2.0;
    return s;
}

}  // namespace census
