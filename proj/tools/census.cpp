// census — job runner for conjugacy-class orbit counting experiments.
//
//   census <command> [--job FILE] [overrides...]
//
// Commands: count, equidist, growth, verify-laws, chc-check.
// Exit codes: 0 success, 2 parse error, 3 invariant failure, 4 resource cap.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "census/run.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw census::JobParseError(0, "cannot open job file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Overrides {
    std::string job_file;
    std::string group, class_word, out, format, margin, basepoint;
    double t_max = -1.0;
    int n_max = -1;
    long long seed = -1;
    int threads = 1;
    int bins = -1;
    double step = -1.0;
    bool allow_above_cap = false;
};

census::JobSpec assemble(census::Command command, const Overrides& ov) {
    census::JobSpec spec;
    if (!ov.job_file.empty()) spec = census::parse_job(read_file(ov.job_file));
    spec.command = command;
    if (!ov.group.empty()) spec.group = ov.group;
    if (!ov.class_word.empty()) spec.class_word = ov.class_word;
    if (!ov.out.empty()) spec.out = ov.out;
    if (!ov.format.empty()) spec.format = ov.format;
    if (!ov.margin.empty()) spec.margin = ov.margin;
    if (!ov.basepoint.empty()) spec.basepoint = ov.basepoint;
    if (ov.t_max >= 0) spec.t_max = ov.t_max;
    if (ov.n_max >= 0) spec.n_max = ov.n_max;
    if (ov.seed >= 0) spec.seed = static_cast<std::uint64_t>(ov.seed);
    if (ov.bins > 0) spec.bins = ov.bins;
    if (ov.step > 0) spec.step = ov.step;
    if (ov.allow_above_cap) spec.allow_above_cap = true;
    // re-validate caps after overrides
    return census::parse_job(census::render_job(spec));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"census: orbit counting in conjugacy classes of hyperbolic isometry groups"};
    app.require_subcommand(1);

    Overrides ov;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--job", ov.job_file, "job description file");
        sub->add_option("--group", ov.group, "group preset (gamma2, free:k, heisenberg:k, custom)");
        sub->add_option("--class", ov.class_word, "class word, e.g. A*B");
        sub->add_option("--t-max", ov.t_max, "displacement threshold cap");
        sub->add_option("--n-max", ov.n_max, "word-length cap for growth jobs");
        sub->add_option("--step", ov.step, "threshold step");
        sub->add_option("--bins", ov.bins, "direction histogram bins");
        sub->add_option("--margin", ov.margin, "completeness margin, or auto");
        sub->add_option("--basepoint", ov.basepoint, "basepoint, e.g. i or 0.5+1i");
        sub->add_option("--seed", ov.seed, "seed for randomized verification");
        sub->add_option("--out", ov.out, "output path base");
        sub->add_option("--format", ov.format, "csv | json | both");
        sub->add_option("--threads", ov.threads, "worker threads (never changes results)");
        sub->add_flag("--allow-above-cap", ov.allow_above_cap, "acknowledge large runs");
    };

    using census::Command;
    std::pair<const char*, Command> commands[] = {
        {"count", Command::Count},       {"equidist", Command::Equidist},
        {"growth", Command::Growth},     {"verify-laws", Command::VerifyLaws},
        {"chc-check", Command::ChcCheck}};
    for (auto& [name, cmd] : commands) add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    Command command = Command::Count;
    for (auto& [name, cmd] : commands)
        if (app.get_subcommand(name)->parsed()) command = cmd;

    try {
        census::JobSpec spec = assemble(command, ov);
        census::Report report = census::run_job(spec, ov.threads);
        for (const std::string& path : census::emit(report)) std::cout << "wrote " << path << "\n";
        if (!report.ok) {
            for (const std::string& f : report.failures) std::cerr << "invariant failure: " << f << "\n";
            return 3;
        }
        return 0;
    } catch (const census::JobParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const census::ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 4;
    } catch (const census::BallCapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
