// Job descriptions, the key = value job-file format, experiment execution,
// and machine-readable report emission. One job per process invocation:
// parse -> run -> emit, with deterministic outputs for a fixed (spec, seed)
// regardless of worker count.
#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "census/analysis.hpp"
#include "census/chc.hpp"
#include "census/counting.hpp"
#include "census/displacement.hpp"
#include "census/group_spec.hpp"
#include "census/heisenberg.hpp"
#include "census/words.hpp"

namespace census {

using Json = nlohmann::ordered_json;

struct JobParseError : std::runtime_error {
    int line;
    JobParseError(int line_no, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

struct ResourceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command { Count, Equidist, Growth, VerifyLaws, ChcCheck };

inline const char* to_string(Command c) {
    switch (c) {
        case Command::Count: return "count";
        case Command::Equidist: return "equidist";
        case Command::Growth: return "growth";
        case Command::VerifyLaws: return "verify-laws";
        case Command::ChcCheck: return "chc-check";
    }
    return "?";
}

inline std::optional<Command> command_from(const std::string& s) {
    if (s == "count") return Command::Count;
    if (s == "equidist") return Command::Equidist;
    if (s == "growth") return Command::Growth;
    if (s == "verify-laws") return Command::VerifyLaws;
    if (s == "chc-check") return Command::ChcCheck;
    return std::nullopt;
}

struct JobSpec {
    Command command = Command::Count;
    std::string group = "gamma2";
    std::string class_word = "A*B";
    std::string basepoint = "i";
    double t_max = 16.0;
    int n_max = 12;
    double step = 0.5;
    int bins = 16;
    std::string margin = "auto";            // "auto" or a number
    std::string horoball_height = "auto";   // "auto" or a number
    std::uint64_t seed = 1;
    int samples = 10000;
    std::string out = "census_out";
    std::string format = "csv";             // csv | json | both
    bool allow_above_cap = false;
    int iota = 1;
    int index = 1;
    // inline generators for group = custom, in file order
    std::vector<std::pair<std::string, std::array<long long, 4>>> generators;
    std::optional<LatticeData> lattice;

    static constexpr double t_cap = 24.0;
    static constexpr int n_cap = 48;

    friend bool operator==(const JobSpec& x, const JobSpec& y) {
        return x.command == y.command && x.group == y.group && x.class_word == y.class_word &&
               x.basepoint == y.basepoint && x.t_max == y.t_max && x.n_max == y.n_max &&
               x.step == y.step && x.bins == y.bins && x.margin == y.margin &&
               x.horoball_height == y.horoball_height && x.seed == y.seed &&
               x.samples == y.samples && x.out == y.out && x.format == y.format &&
               x.allow_above_cap == y.allow_above_cap && x.iota == y.iota && x.index == y.index &&
               x.generators == y.generators &&
               x.lattice.has_value() == y.lattice.has_value() &&
               (!x.lattice || (x.lattice->genus == y.lattice->genus &&
                               x.lattice->punctures == y.lattice->punctures &&
                               x.lattice->covolume == y.lattice->covolume &&
                               x.lattice->critical_exponent == y.lattice->critical_exponent));
    }
};

// ---------------------------------------------------------------------------
// parsing

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t lo = s.find_first_not_of(" \t\r");
    if (lo == std::string::npos) return "";
    std::size_t hi = s.find_last_not_of(" \t\r");
    return s.substr(lo, hi - lo + 1);
}

inline double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw JobParseError(line, "expected a number, got '" + v + "'");
    }
}

inline long long parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw JobParseError(line, "expected an integer, got '" + v + "'");
    }
}

inline bool parse_bool(const std::string& v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw JobParseError(line, "expected true/false, got '" + v + "'");
}

}  // namespace detail

/// Parse the documented key = value / [section] job format. Unknown keys
/// are rejected with their line number.
inline JobSpec parse_job(const std::string& text) {
    JobSpec spec;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::string section;
    bool lattice_seen = false;
    LatticeData lattice{};
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw JobParseError(line_no, "unterminated section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section != "generators" && section != "lattice")
                throw JobParseError(line_no, "unknown section [" + section + "]");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw JobParseError(line_no, "expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw JobParseError(line_no, "empty key");

        if (section == "generators") {
            std::istringstream vs(value);
            std::array<long long, 4> m{};
            if (!(vs >> m[0] >> m[1] >> m[2] >> m[3]) || !(vs >> std::ws).eof())
                throw JobParseError(line_no, "generator needs four integer entries: a b c d");
            spec.generators.emplace_back(key, m);
            continue;
        }
        if (section == "lattice") {
            lattice_seen = true;
            if (key == "genus")
                lattice.genus = static_cast<int>(detail::parse_int(value, line_no));
            else if (key == "punctures")
                lattice.punctures = static_cast<int>(detail::parse_int(value, line_no));
            else if (key == "covolume")
                lattice.covolume = detail::parse_double(value, line_no);
            else if (key == "delta")
                lattice.critical_exponent = detail::parse_double(value, line_no);
            else
                throw JobParseError(line_no, "unknown lattice key '" + key + "'");
            continue;
        }

        if (key == "command") {
            auto c = command_from(value);
            if (!c) throw JobParseError(line_no, "unknown command '" + value + "'");
            spec.command = *c;
        } else if (key == "group") {
            spec.group = value;
        } else if (key == "class") {
            spec.class_word = value;
        } else if (key == "basepoint") {
            spec.basepoint = value;
        } else if (key == "t_max") {
            spec.t_max = detail::parse_double(value, line_no);
        } else if (key == "n_max") {
            spec.n_max = static_cast<int>(detail::parse_int(value, line_no));
        } else if (key == "step") {
            spec.step = detail::parse_double(value, line_no);
        } else if (key == "bins") {
            spec.bins = static_cast<int>(detail::parse_int(value, line_no));
        } else if (key == "margin") {
            if (value != "auto") detail::parse_double(value, line_no);
            spec.margin = value;
        } else if (key == "horoball_height") {
            if (value != "auto") detail::parse_double(value, line_no);
            spec.horoball_height = value;
        } else if (key == "seed") {
            spec.seed = static_cast<std::uint64_t>(detail::parse_int(value, line_no));
        } else if (key == "samples") {
            spec.samples = static_cast<int>(detail::parse_int(value, line_no));
        } else if (key == "out") {
            spec.out = value;
        } else if (key == "format") {
            if (value != "csv" && value != "json" && value != "both")
                throw JobParseError(line_no, "format must be csv, json or both");
            spec.format = value;
        } else if (key == "allow_above_cap") {
            spec.allow_above_cap = detail::parse_bool(value, line_no);
        } else if (key == "iota") {
            spec.iota = static_cast<int>(detail::parse_int(value, line_no));
        } else if (key == "index") {
            spec.index = static_cast<int>(detail::parse_int(value, line_no));
        } else {
            throw JobParseError(line_no, "unknown key '" + key + "'");
        }
    }
    if (lattice_seen) spec.lattice = lattice;

    if ((spec.command == Command::Count || spec.command == Command::Equidist) &&
        spec.t_max > JobSpec::t_cap && !spec.allow_above_cap)
        throw ResourceCapError("t_max exceeds the safety cap " + std::to_string(JobSpec::t_cap) +
                               "; ball sizes grow like e^{t/2}: set allow_above_cap = true to proceed");
    if (spec.command == Command::Growth && spec.n_max > JobSpec::n_cap && !spec.allow_above_cap)
        throw ResourceCapError("n_max exceeds the safety cap; set allow_above_cap = true to proceed");
    if (!(spec.step > 0.0)) throw JobParseError(0, "step must be positive");
    if (spec.bins < 1) throw JobParseError(0, "bins must be at least 1");
    return spec;
}

/// Canonical rendering; parse_job(render_job(s)) == s for valid specs.
inline std::string render_job(const JobSpec& spec) {
    std::ostringstream out;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "command = " << to_string(spec.command) << "\n";
    out << "group = " << spec.group << "\n";
    out << "class = " << spec.class_word << "\n";
    out << "basepoint = " << spec.basepoint << "\n";
    out << "t_max = " << num(spec.t_max) << "\n";
    out << "n_max = " << spec.n_max << "\n";
    out << "step = " << num(spec.step) << "\n";
    out << "bins = " << spec.bins << "\n";
    out << "margin = " << spec.margin << "\n";
    out << "horoball_height = " << spec.horoball_height << "\n";
    out << "seed = " << spec.seed << "\n";
    out << "samples = " << spec.samples << "\n";
    out << "out = " << spec.out << "\n";
    out << "format = " << spec.format << "\n";
    out << "allow_above_cap = " << (spec.allow_above_cap ? "true" : "false") << "\n";
    out << "iota = " << spec.iota << "\n";
    out << "index = " << spec.index << "\n";
    if (!spec.generators.empty()) {
        out << "[generators]\n";
        for (const auto& [name, m] : spec.generators)
            out << name << " = " << m[0] << " " << m[1] << " " << m[2] << " " << m[3] << "\n";
    }
    if (spec.lattice) {
        out << "[lattice]\n";
        out << "genus = " << spec.lattice->genus << "\n";
        out << "punctures = " << spec.lattice->punctures << "\n";
        out << "covolume = " << num(spec.lattice->covolume) << "\n";
        out << "delta = " << num(spec.lattice->critical_exponent) << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// job resolution helpers

inline H2Point parse_basepoint(const std::string& s) {
    std::string v = detail::trim(s);
    if (v == "i") return {0.0, 1.0};
    // accepted forms: "x+yi", "yi", "x + y i" with spaces stripped
    std::string compact;
    for (char c : v)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    std::size_t ipos = compact.find('i');
    if (ipos == std::string::npos || ipos + 1 != compact.size())
        throw std::invalid_argument("basepoint must look like 'i' or 'x+yi'");
    std::string body = compact.substr(0, ipos);
    std::size_t split = body.find_last_of("+-");
    double re = 0.0, im;
    if (split == std::string::npos || split == 0) {
        im = body.empty() || body == "+" ? 1.0 : (body == "-" ? -1.0 : std::stod(body));
    } else {
        re = std::stod(body.substr(0, split));
        std::string rest = body.substr(split);
        im = rest == "+" ? 1.0 : (rest == "-" ? -1.0 : std::stod(rest));
    }
    H2Point p{re, im};
    require_interior(p);
    return p;
}

/// Split "A*B^-1*A^2" into (label, power) factors.
inline std::vector<std::pair<std::string, int>> parse_word_factors(const std::string& word) {
    std::vector<std::pair<std::string, int>> factors;
    std::istringstream in(word);
    std::string tok;
    while (std::getline(in, tok, '*')) {
        tok = detail::trim(tok);
        if (tok.empty()) throw std::invalid_argument("empty factor in class word");
        std::size_t caret = tok.find('^');
        std::string label = detail::trim(caret == std::string::npos ? tok : tok.substr(0, caret));
        int power = 1;
        if (caret != std::string::npos) power = std::stoi(tok.substr(caret + 1));
        factors.emplace_back(label, power);
    }
    if (factors.empty()) throw std::invalid_argument("empty class word");
    return factors;
}

inline Word word_from_factors(const std::vector<std::pair<std::string, int>>& factors,
                              const std::vector<std::string>& labels) {
    Word w;
    for (const auto& [label, power] : factors) {
        int idx = -1;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) idx = static_cast<int>(i);
        if (idx < 0) throw std::invalid_argument("unknown generator label: " + label);
        for (int i = 0; i < std::abs(power); ++i) w.push_back(power > 0 ? idx + 1 : -(idx + 1));
    }
    return reduce(w);
}

inline GroupSpec resolve_matrix_group(const JobSpec& spec) {
    if (spec.group == "gamma2") {
        GroupSpec g = gamma2_group();
        g.basepoint = parse_basepoint(spec.basepoint);
        return g;
    }
    if (spec.group == "custom") {
        if (spec.generators.empty())
            throw std::invalid_argument("group = custom requires a [generators] section");
        GroupSpec g;
        g.name = "custom";
        for (const auto& [name, m] : spec.generators) {
            g.labels.push_back(name);
            g.generators.push_back(make_exact(m[0], m[1], m[2], m[3]));
        }
        g.basepoint = parse_basepoint(spec.basepoint);
        if (spec.lattice) {
            g.lattice = spec.lattice;
            g.lattice->check_gauss_bonnet();
        }
        return g;
    }
    throw std::invalid_argument("unknown matrix group preset: " + spec.group);
}

}  // namespace census
