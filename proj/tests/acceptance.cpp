// Acceptance suite: one pass/fail line per criterion, exit code = number
// of failures. Runs the full desk-scale experiments, so expect roughly a
// minute of wall time.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "census/analysis.hpp"
#include "census/counting.hpp"
#include "census/heisenberg.hpp"
#include "census/run.hpp"
#include "census/verify.hpp"
#include "census/words.hpp"

using namespace census;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail) {
    std::printf("%s  criterion %2d: %s  [%s]\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

double elapsed(Clock::time_point from) {
    return std::chrono::duration<double>(Clock::now() - from).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmtd(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

int main() {
    std::printf("census acceptance suite\n");

    // ---- criterion 1: displacement laws vs matrix oracles -----------------
    {
        auto t0 = Clock::now();
        auto laws = verify_laws(10000, 2024);
        double dt = elapsed(t0);
        double worst = 0;
        for (const LawCheck& c : laws) worst = std::max(worst, c.max_rel_error);
        report(1, worst <= 1e-9 && dt < 10.0, "displacement laws match matrix oracles",
               "4 laws x 1e4 checks, max rel err " + fmtd(worst) + ", " + fmtd(dt) + " s");
    }

    // ---- criterion 2: two-sided bounds ------------------------------------
    {
        auto bounds = verify_bounds(10000, 2025);
        int violations = 0;
        double gap_err = 0;
        for (const BoundsCheck& c : bounds) {
            violations += c.violations;
            gap_err = std::max(gap_err, c.gap_error_at_10);
        }
        report(2, violations == 0 && gap_err <= 1e-3, "displacement bounds sandwich",
               std::to_string(violations) + " violations, gap error at s=10 " + fmtd(gap_err));
    }

    // ---- criterion 3: free-group exactness ---------------------------------
    {
        const Word words[] = {{1, 2}, {1, 1}, {1, 1, 2}, {1, 2, 1, 2}};
        bool exact = true;
        bool published_flagged = false;
        double worst_slope_err = 0;
        for (int k : {2, 3}) {
            for (const Word& w : words) {
                FreeClassSpec cls = cyclic_data(w);
                auto bfs = free_conj_count_bfs_series(k, cls, 14);
                CountSeries series;
                for (int n = 0; n <= 14; ++n) {
                    if (bfs[n] != free_conj_count_closed(k, cls, n)) exact = false;
                    auto published = free_conj_count_published(k, cls, n);
                    if (published && *published != bfs[n]) published_flagged = true;
                    series.thresholds.push_back(n);
                    series.counts.push_back(bfs[n]);
                }
                GrowthFit fit = fit_growth_rate(series, 8.0, 14.0);
                double target = std::log(2.0 * k - 1.0) / 2.0;
                worst_slope_err =
                    std::max(worst_slope_err, std::abs(fit.slope - target) / target);
            }
        }
        report(3, exact && published_flagged && worst_slope_err <= 0.02,
               "free-group counts: exhaustive = validated closed form",
               std::string("exact for k in {2,3}, four classes, n <= 14; literal flagged: ") +
                   (published_flagged ? "yes" : "no") + "; slope err " + fmtd(worst_slope_err));
    }

    // ---- criterion 4: Heisenberg quadratic growth --------------------------
    {
        auto t0 = Clock::now();
        HeisenbergSpec spec = HeisenbergSpec::standard(1);
        auto series = heis_conj_count_series(spec, {{1, 0}, 0}, 40);
        double dt = elapsed(t0);
        bool band_ok = true, ratio_ok = true;
        double lo = 1e9, hi = 0;
        for (int n = 10; n <= 40; ++n) {
            double v = static_cast<double>(series[n]) / (static_cast<double>(n) * n);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            if (v < 0.10 || v > 0.20) band_ok = false;
        }
        for (int n = 10; n <= 20; ++n) {
            double r = static_cast<double>(series[2 * n]) / static_cast<double>(series[n]);
            if (r < 2.5 || r > 6.0) ratio_ok = false;
        }
        // frozen search values
        bool frozen_ok = series[10] == 13 && series[20] == 51 && series[40] == 201;
        report(4, band_ok && ratio_ok && frozen_ok && dt < 60.0,
               "Heisenberg class grows quadratically",
               "N/n^2 in [" + fmtd(lo) + ", " + fmtd(hi) + "] on [10,40], ratios in [2.5,6], " +
                   fmtd(dt) + " s");
    }

    // ---- criteria 5, 7, 8: gamma2 loxodromic run ---------------------------
    GroupSpec gamma2 = gamma2_group();
    CountingOptions opts20;
    opts20.t_max = 20.0;
    auto t_loxo = Clock::now();
    CensusRun loxo = run_conjugacy_census(gamma2, gamma2.evaluate_word({1, 2}), "A*B", opts20);
    double loxo_dt = elapsed(t_loxo);
    {
        GrowthFit fit = fit_growth_rate(loxo.direct, 14.0, 20.0);
        EmpiricalConstant emp = empirical_constant(loxo.direct, 1.0);
        TheoreticalConstant theo = theoretical_constant(gamma2, loxo.cls.invariants, 1);
        double rel = std::abs(emp.tail_mean - theo.value) / theo.value;
        bool ok = std::abs(fit.slope - 0.5) <= 0.05 && rel <= 0.35 && loxo_dt < 300.0;
        report(5, ok, "gamma2 loxodromic class A*B at t_max = 20",
               "slope " + fmtd(fit.slope) + ", tail constant " + fmtd(emp.tail_mean) + " vs " +
                   fmtd(theo.value) + " (rel " + fmtd(rel) + "), " + fmtd(loxo_dt) + " s");
    }

    // ---- criterion 6: gamma2 parabolic run ---------------------------------
    CensusRun para = run_conjugacy_census(gamma2, gamma2.generator("A"), "A", opts20);
    {
        GrowthFit fit = fit_growth_rate(para.direct, 14.0, 20.0);
        EmpiricalConstant emp = empirical_constant(para.direct, 1.0);
        double theo = 1.0 / (2.0 * kPi);
        double rel = std::abs(emp.tail_mean - theo) / theo;

        // horoball-normalization independence: exact integer equality
        bool independent = true;
        CountSeries reference;
        for (double height : {1.0, 2.0, 5.0}) {
            CountingOptions o;
            o.t_max = 12.0;
            o.horoball_height = height;
            CensusRun run = run_conjugacy_census(gamma2, gamma2.generator("A"), "A", o);
            if (height == 1.0)
                reference = run.direct;
            else if (run.direct.counts != reference.counts)
                independent = false;
            TheoreticalConstant tc = theoretical_constant(gamma2, run.cls.invariants, 1);
            if (std::abs(tc.value - theo) > 1e-12) independent = false;
        }
        bool ok = std::abs(fit.slope - 0.5) <= 0.05 && rel <= 0.35 && independent;
        report(6, ok, "gamma2 parabolic class A at t_max = 20",
               "slope " + fmtd(fit.slope) + ", tail constant " + fmtd(emp.tail_mean) + " vs " +
                   fmtd(theo) + " (rel " + fmtd(rel) + "), horoball-independent: " +
                   (independent ? "yes" : "no"));
    }

    // ---- criterion 7: cross-engine identity --------------------------------
    {
        bool agree = true;
        for (const CensusRun* run : {&loxo, &para}) {
            for (std::size_t i = 0; i < run->direct.thresholds.size(); ++i) {
                if (run->direct.thresholds[i] > 16.0 + 1e-9) break;
                if (run->direct.counts[i] != run->geometric.counts[i]) agree = false;
            }
        }
        bool full_agree = loxo.direct.counts == loxo.geometric.counts &&
                          para.direct.counts == para.geometric.counts;
        bool saturated = loxo.saturation_passed && para.saturation_passed;
        report(7, agree && saturated, "direct and geometric counters agree",
               std::string("integer equality through t = 16 (through 20: ") +
                   (full_agree ? "yes" : "no") + "), margin +1 saturation passed");
    }

    // ---- criterion 8: equidistribution trend -------------------------------
    {
        DiscrepancyStats at14 =
            discrepancy_stats(direction_measure(directions_at(loxo, 14.0), 16));
        DiscrepancyStats at20 =
            discrepancy_stats(direction_measure(directions_at(loxo, 20.0), 16));
        bool ok = at20.tv < at14.tv && at20.sup_cdf < at14.sup_cdf && at20.chi2 < at14.chi2;
        report(8, ok, "direction discrepancies shrink from t = 14 to t = 20",
               "tv " + fmtd(at14.tv) + " -> " + fmtd(at20.tv) + ", sup " + fmtd(at14.sup_cdf) +
                   " -> " + fmtd(at20.sup_cdf) + ", chi2 " + fmtd(at14.chi2) + " -> " +
                   fmtd(at20.chi2));
    }

    // ---- criterion 9: subgroup conjugacy classes ---------------------------
    {
        SubgroupSpec sub;
        sub.generator = gamma2.generator("A");
        sub.c_minus = 2.0 * std::asinh(1.0);
        sub.c_plus = 2.0 * std::asinh(1.0);
        sub.horoball_height = 1.0;
        SubgroupRun run = subgroup_conj_count(gamma2, sub, opts20);
        GrowthFit fit = fit_growth_rate(run.series, 14.0, 20.0);
        bool ok =
            std::abs(fit.slope - 0.5) <= 0.07 && run.bounds_respected && run.saturation_passed;
        report(9, ok, "cusp-stabilizer conjugates (subgroup classes)",
               "slope " + fmtd(fit.slope) + ", two-sided bounds on every counted coset: " +
                   (run.bounds_respected ? "yes" : "no"));
    }

    // ---- criterion 10: complex hyperbolic spreads ---------------------------
    {
        auto spreads = chc_check(100, 2026);
        bool vertical_ok = spreads[0].spread <= 1e-10;
        bool growing = true;
        for (std::size_t k = 1; k < spreads.size(); ++k)
            growing = growing && spreads[k].scale_max[0] < spreads[k].scale_max[1] &&
                      spreads[k].scale_max[1] < spreads[k].scale_max[2];
        report(10, vertical_ok && growing, "vertical Heisenberg translations equitranslate H_2",
               "vertical spread " + fmtd(spreads[0].spread) +
                   ", nonvertical/rotational displacements grow across |w| = 1, 10, 100");
    }

    // ---- criterion 11: determinism ------------------------------------------
    {
        namespace fs = std::filesystem;
        JobSpec spec = parse_job(
            "command = equidist\ngroup = gamma2\nclass = A*B\nt_max = 10\nformat = both\n");
        auto base = fs::temp_directory_path() / "census_acceptance";
        std::vector<std::string> texts;
        int run_threads[3] = {1, 1, 3};
        for (int i = 0; i < 3; ++i) {
            spec.out = (base / ("run" + std::to_string(i))).string();
            Report r = run_job(spec, run_threads[i]);
            std::string all;
            for (const std::string& f : emit(r)) all += slurp(f) + "\x1e";
            texts.push_back(all);
        }
        bool ok = texts[0] == texts[1] && texts[0] == texts[2];
        fs::remove_all(base);
        report(11, ok, "byte-identical reports across reruns and 1 vs 3 workers",
               ok ? "3 emissions compared equal" : "emissions differ");
    }

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
