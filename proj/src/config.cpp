#include "mosqfront/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "mosqfront/errors.hpp"

namespace mosqfront {

const char* to_string(TaskKind kind) {
    switch (kind) {
    case TaskKind::Simulate: return "simulate";
    case TaskKind::Threshold: return "threshold";
    case TaskKind::Steady: return "steady";
    case TaskKind::Classify: return "classify";
    case TaskKind::MuStar: return "mu-star";
    case TaskKind::Compare: return "compare";
    }
    return "simulate";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double_str(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

bool parse_int_str(const std::string& s, int& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size()) return false;
    if (v < -1000000000L || v > 1000000000L) return false;
    out = static_cast<int>(v);
    return true;
}

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"profile", {"D", "nu", "K1", "K2", "homogenization_radius"}},
        {"profile.r", {"kind", "value", "left", "right", "at", "base", "amp", "center", "width", "file", "limit"}},
        {"profile.gamma", {"kind", "value", "left", "right", "at", "base", "amp", "center", "width", "file", "limit"}},
        {"profile.mu1", {"kind", "value", "left", "right", "at", "base", "amp", "center", "width", "file", "limit"}},
        {"profile.mu2", {"kind", "value", "left", "right", "at", "base", "amp", "center", "width", "file", "limit"}},
        {"initial", {"kind", "h0", "amp_M", "amp_A", "file"}},
        {"solver", {"N", "dt_policy", "dt", "cfl_factor", "mu", "horizon", "boundary_stencil_order"}},
        {"classifier", {"eps_R", "eps_gap_rel", "eps_density_rel", "window_frac", "r0f_resolution"}},
        {"task", {"kind", "p", "q", "resolution", "L_sequence", "window", "mu_lo", "mu_hi", "tol"}},
        {"output", {"directory", "formats", "snapshot_times", "write_fields"}},
    };
    return s;
}

struct Parser {
    struct Entry {
        int line = 0;
        std::string value;
    };
    std::map<std::string, Entry> kv; // "section/key" -> entry
    std::set<std::string> sections;
    std::vector<std::string> diags;

    void diag(int line, const std::string& msg) {
        if (line > 0)
            diags.push_back("line " + std::to_string(line) + ": " + msg);
        else
            diags.push_back(msg);
    }

    void tokenize(const std::string& text) {
        std::istringstream in(text);
        std::string raw, section;
        bool section_known = false;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = raw;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') {
                    diag(line_no, "malformed section header '" + line + "'");
                    section.clear();
                    section_known = false;
                    continue;
                }
                section = trim(line.substr(1, line.size() - 2));
                section_known = schema().count(section) > 0;
                if (!section_known)
                    diag(line_no, "unknown section [" + section + "]");
                else
                    sections.insert(section);
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                diag(line_no, "expected 'key = value', got '" + line + "'");
                continue;
            }
            if (section.empty()) {
                diag(line_no, "key outside of any section");
                continue;
            }
            if (!section_known) continue; // section already diagnosed
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (!schema().at(section).count(key)) {
                diag(line_no, "unknown key '" + key + "' in [" + section + "]");
                continue;
            }
            const std::string id = section + "/" + key;
            if (kv.count(id)) {
                diag(line_no, "duplicate key '" + key + "' in [" + section + "]");
                continue;
            }
            kv[id] = {line_no, value};
        }
    }

    bool has(const std::string& sec, const std::string& key) const {
        return kv.count(sec + "/" + key) > 0;
    }
    int line_of(const std::string& sec, const std::string& key) const {
        const auto it = kv.find(sec + "/" + key);
        return it == kv.end() ? 0 : it->second.line;
    }

    void get_double(const std::string& sec, const std::string& key, double& target) {
        const auto it = kv.find(sec + "/" + key);
        if (it == kv.end()) return;
        double v;
        if (!parse_double_str(it->second.value, v))
            diag(it->second.line, "key '" + key + "': expected a finite number, got '" +
                                      it->second.value + "'");
        else
            target = v;
    }

    void get_int(const std::string& sec, const std::string& key, int& target) {
        const auto it = kv.find(sec + "/" + key);
        if (it == kv.end()) return;
        int v;
        if (!parse_int_str(it->second.value, v))
            diag(it->second.line,
                 "key '" + key + "': expected an integer, got '" + it->second.value + "'");
        else
            target = v;
    }

    void get_bool(const std::string& sec, const std::string& key, bool& target) {
        const auto it = kv.find(sec + "/" + key);
        if (it == kv.end()) return;
        if (it->second.value == "true")
            target = true;
        else if (it->second.value == "false")
            target = false;
        else
            diag(it->second.line, "key '" + key + "': expected true or false, got '" +
                                      it->second.value + "'");
    }

    void get_string(const std::string& sec, const std::string& key, std::string& target) {
        const auto it = kv.find(sec + "/" + key);
        if (it != kv.end()) target = it->second.value;
    }

    void get_list(const std::string& sec, const std::string& key, std::vector<double>& target) {
        const auto it = kv.find(sec + "/" + key);
        if (it == kv.end()) return;
        std::vector<double> vals;
        std::istringstream row(it->second.value);
        std::string tok;
        bool ok = true;
        while (row >> tok) {
            double v;
            if (!parse_double_str(tok, v)) {
                diag(it->second.line, "key '" + key + "': expected numbers, got '" + tok + "'");
                ok = false;
                break;
            }
            vals.push_back(v);
        }
        if (ok) target = std::move(vals);
    }

    // value must be one of the listed options; returns index or -1
    int get_enum(const std::string& sec, const std::string& key,
                 const std::vector<std::string>& options, int current) {
        const auto it = kv.find(sec + "/" + key);
        if (it == kv.end()) return current;
        for (std::size_t i = 0; i < options.size(); ++i)
            if (it->second.value == options[i]) return static_cast<int>(i);
        std::string valid;
        for (const auto& o : options) valid += (valid.empty() ? "" : " | ") + o;
        diag(it->second.line, "key '" + key + "': expected one of " + valid + ", got '" +
                                  it->second.value + "'");
        return current;
    }
};

void parse_rate_section(Parser& P, const std::string& sec, ProfileSpec& target) {
    if (!P.sections.count(sec)) return;
    static const std::map<std::string, std::vector<std::string>> params = {
        {"constant", {"value"}},
        {"step", {"left", "right", "at"}},
        {"bump", {"base", "amp", "center", "width"}},
        {"tabulated", {"file", "limit"}},
    };
    const int kidx = P.get_enum(sec, "kind", {"constant", "step", "bump", "tabulated"}, 0);
    const std::string kind =
        std::vector<std::string>{"constant", "step", "bump", "tabulated"}[kidx];
    const auto& allowed = params.at(kind);
    for (const auto& key : schema().at(sec)) {
        if (key == "kind") continue;
        if (P.has(sec, key) &&
            std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            P.diag(P.line_of(sec, key),
                   "key '" + key + "' not allowed for kind '" + kind + "' in [" + sec + "]");
    }
    bool complete = true;
    for (const auto& key : allowed)
        if (!P.has(sec, key)) {
            P.diag(0, "[" + sec + "]: kind '" + kind + "' requires key '" + key + "'");
            complete = false;
        }
    if (!complete) return;

    try {
        if (kind == "constant") {
            double value = 0;
            P.get_double(sec, "value", value);
            target = ProfileSpec::constant(value);
        } else if (kind == "step") {
            double left = 0, right = 0, at = 0;
            P.get_double(sec, "left", left);
            P.get_double(sec, "right", right);
            P.get_double(sec, "at", at);
            target = ProfileSpec::step(left, right, at);
        } else if (kind == "bump") {
            double base = 0, amp = 0, center = 0, width = 1;
            P.get_double(sec, "base", base);
            P.get_double(sec, "amp", amp);
            P.get_double(sec, "center", center);
            P.get_double(sec, "width", width);
            target = ProfileSpec::bump(base, amp, center, width);
        } else {
            std::string file;
            double limit = 0;
            P.get_string(sec, "file", file);
            P.get_double(sec, "limit", limit);
            target = ProfileSpec::tabulated_from_file(file, limit);
        }
    } catch (const Error& e) {
        P.diag(P.line_of(sec, "kind"), "[" + sec + "]: " + e.what());
    }
}

} // namespace

RunConfig parse_config(const std::string& text) {
    Parser P;
    P.tokenize(text);
    RunConfig cfg;

    // [profile]
    P.get_double("profile", "D", cfg.D);
    P.get_double("profile", "nu", cfg.nu);
    P.get_double("profile", "K1", cfg.K1);
    P.get_double("profile", "K2", cfg.K2);
    P.get_double("profile", "homogenization_radius", cfg.homogenization_radius);
    parse_rate_section(P, "profile.r", cfg.r);
    parse_rate_section(P, "profile.gamma", cfg.gamma);
    parse_rate_section(P, "profile.mu1", cfg.mu1);
    parse_rate_section(P, "profile.mu2", cfg.mu2);

    // [initial]
    cfg.initial.tabulated = P.get_enum("initial", "kind", {"cosine", "tabulated"}, 0) == 1;
    P.get_double("initial", "h0", cfg.initial.h0);
    P.get_double("initial", "amp_M", cfg.initial.amp_M);
    P.get_double("initial", "amp_A", cfg.initial.amp_A);
    P.get_string("initial", "file", cfg.initial.file);
    if (!cfg.initial.tabulated && P.has("initial", "file"))
        P.diag(P.line_of("initial", "file"),
               "analytic and tabulated initial data are mutually exclusive "
               "(key 'file' with kind 'cosine')");
    if (cfg.initial.tabulated && (P.has("initial", "amp_M") || P.has("initial", "amp_A")))
        P.diag(P.line_of("initial", P.has("initial", "amp_M") ? "amp_M" : "amp_A"),
               "analytic and tabulated initial data are mutually exclusive "
               "(amplitude keys with kind 'tabulated')");
    if (cfg.initial.tabulated && !P.has("initial", "file"))
        P.diag(0, "[initial]: kind 'tabulated' requires key 'file'");

    // [solver]
    P.get_int("solver", "N", cfg.solver.N);
    cfg.solver.dt_policy = P.get_enum("solver", "dt_policy", {"fixed", "cfl"},
                                      cfg.solver.dt_policy == SolverConfig::DtPolicy::Fixed ? 0 : 1)
                               ? SolverConfig::DtPolicy::CflScaled
                               : SolverConfig::DtPolicy::Fixed;
    P.get_double("solver", "dt", cfg.solver.dt);
    P.get_double("solver", "cfl_factor", cfg.solver.cfl_factor);
    P.get_double("solver", "mu", cfg.solver.mu);
    P.get_double("solver", "horizon", cfg.solver.horizon);
    P.get_int("solver", "boundary_stencil_order", cfg.solver.boundary_stencil_order);

    // [classifier]
    P.get_double("classifier", "eps_R", cfg.classifier.eps_R);
    P.get_double("classifier", "eps_gap_rel", cfg.classifier.eps_gap_rel);
    P.get_double("classifier", "eps_density_rel", cfg.classifier.eps_density_rel);
    P.get_double("classifier", "window_frac", cfg.classifier.window_frac);
    P.get_int("classifier", "r0f_resolution", cfg.classifier.r0f_resolution);

    // [task]
    if (P.has("task", "kind")) {
        cfg.task.kind_set = true;
        cfg.task.kind = static_cast<TaskKind>(P.get_enum(
            "task", "kind", {"simulate", "threshold", "steady", "classify", "mu-star", "compare"},
            0));
    }
    P.get_double("task", "p", cfg.task.p);
    P.get_double("task", "q", cfg.task.q);
    P.get_int("task", "resolution", cfg.task.resolution);
    P.get_list("task", "L_sequence", cfg.task.L_sequence);
    P.get_double("task", "window", cfg.task.window);
    P.get_double("task", "mu_lo", cfg.task.mu_lo);
    P.get_double("task", "mu_hi", cfg.task.mu_hi);
    P.get_double("task", "tol", cfg.task.tol);

    // [output]
    P.get_string("output", "directory", cfg.output.directory);
    if (P.has("output", "formats")) {
        cfg.output.ndjson = cfg.output.csv = cfg.output.json = cfg.output.svg = false;
        std::istringstream row(P.kv.at("output/formats").value);
        std::string tok;
        bool any = false;
        while (row >> tok) {
            any = true;
            if (tok == "ndjson")
                cfg.output.ndjson = true;
            else if (tok == "csv")
                cfg.output.csv = true;
            else if (tok == "json")
                cfg.output.json = true;
            else if (tok == "svg")
                cfg.output.svg = true;
            else
                P.diag(P.line_of("output", "formats"),
                       "key 'formats': unknown format '" + tok + "'");
        }
        if (!any)
            P.diag(P.line_of("output", "formats"),
                   "key 'formats': must name at least one of ndjson csv json svg");
    }
    P.get_list("output", "snapshot_times", cfg.output.snapshot_times);
    P.get_bool("output", "write_fields", cfg.output.write_fields);

    // semantic validation, attributed to the offending line where possible
    auto check = [&](bool ok, const std::string& sec, const std::string& key,
                     const std::string& msg) {
        if (!ok) P.diag(P.line_of(sec, key), msg);
    };
    check(cfg.D > 0.0, "profile", "D", "profile.D must be positive");
    check(cfg.K1 > 0.0, "profile", "K1", "profile.K1 must be positive");
    check(cfg.K2 > 0.0, "profile", "K2", "profile.K2 must be positive");
    check(cfg.homogenization_radius > 0.0, "profile", "homogenization_radius",
          "profile.homogenization_radius must be positive");
    check(cfg.initial.h0 > 0.0, "initial", "h0", "initial.h0 must be positive");
    if (!cfg.initial.tabulated && cfg.K1 > 0.0 && cfg.K2 > 0.0) {
        check(cfg.initial.amp_M > 0.0 && cfg.initial.amp_M < cfg.K1, "initial", "amp_M",
              "initial.amp_M must lie strictly inside (0, K1)");
        check(cfg.initial.amp_A > 0.0 && cfg.initial.amp_A < cfg.K2, "initial", "amp_A",
              "initial.amp_A must lie strictly inside (0, K2)");
    }
    check(cfg.solver.N >= 16 && cfg.solver.N % 2 == 0, "solver", "N",
          "solver.N must be an even integer >= 16");
    check(cfg.solver.dt > 0.0, "solver", "dt", "solver.dt must be positive");
    check(cfg.solver.cfl_factor > 0.0, "solver", "cfl_factor",
          "solver.cfl_factor must be positive");
    check(cfg.solver.mu > 0.0, "solver", "mu", "solver.mu must be positive");
    check(cfg.solver.horizon >= 0.0, "solver", "horizon", "solver.horizon must be nonnegative");
    check(cfg.solver.boundary_stencil_order == 1 || cfg.solver.boundary_stencil_order == 2,
          "solver", "boundary_stencil_order", "solver.boundary_stencil_order must be 1 or 2");
    check(cfg.classifier.eps_R > 0.0 && cfg.classifier.eps_R < 1.0, "classifier", "eps_R",
          "classifier.eps_R must lie in (0, 1)");
    check(cfg.classifier.eps_gap_rel > 0.0, "classifier", "eps_gap_rel",
          "classifier.eps_gap_rel must be positive");
    check(cfg.classifier.eps_density_rel > 0.0, "classifier", "eps_density_rel",
          "classifier.eps_density_rel must be positive");
    check(cfg.classifier.window_frac > 0.0 && cfg.classifier.window_frac < 1.0, "classifier",
          "window_frac", "classifier.window_frac must lie in (0, 1)");
    check(cfg.classifier.r0f_resolution >= 16, "classifier", "r0f_resolution",
          "classifier.r0f_resolution must be at least 16");
    check(cfg.task.q > cfg.task.p, "task", "q", "task interval must satisfy q > p");
    check(cfg.task.resolution >= 16, "task", "resolution", "task.resolution must be at least 16");
    for (std::size_t i = 0; i < cfg.task.L_sequence.size(); ++i) {
        const bool pos = cfg.task.L_sequence[i] > 0.0;
        const bool inc = i == 0 || cfg.task.L_sequence[i] > cfg.task.L_sequence[i - 1];
        if (!pos || !inc) {
            check(false, "task", "L_sequence",
                  "task.L_sequence must be positive and strictly increasing");
            break;
        }
    }
    check(cfg.task.window >= 0.0, "task", "window", "task.window must be nonnegative");
    check(cfg.task.mu_lo > 0.0 && cfg.task.mu_lo < cfg.task.mu_hi, "task", "mu_lo",
          "mu bracket must satisfy 0 < mu_lo < mu_hi");
    check(cfg.task.tol > 0.0 && cfg.task.tol < 1.0, "task", "tol",
          "task.tol must lie in (0, 1)");
    check(!cfg.output.directory.empty(), "output", "directory",
          "output.directory must be nonempty");
    for (double t : cfg.output.snapshot_times)
        if (!(t >= 0.0)) {
            check(false, "output", "snapshot_times", "snapshot times must be nonnegative");
            break;
        }

    if (P.diags.empty()) {
        try {
            build_profile(cfg);
        } catch (const Error& e) {
            P.diags.push_back(std::string("profile: ") + e.what());
        }
    }
    if (!P.diags.empty()) throw ConfigError(std::move(P.diags));
    return cfg;
}

// ---- serialization --------------------------------------------------------

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_rate(std::ostringstream& out, const char* name, const ProfileSpec& s) {
    out << "[profile." << name << "]\n";
    switch (s.kind()) {
    case ProfileKind::Constant:
        out << "kind = constant\nvalue = " << g17(s.param(0)) << "\n";
        break;
    case ProfileKind::Step:
        out << "kind = step\nleft = " << g17(s.param(0)) << "\nright = " << g17(s.param(1))
            << "\nat = " << g17(s.param(2)) << "\n";
        break;
    case ProfileKind::Bump:
        out << "kind = bump\nbase = " << g17(s.param(0)) << "\namp = " << g17(s.param(1))
            << "\ncenter = " << g17(s.param(2)) << "\nwidth = " << g17(s.param(3)) << "\n";
        break;
    case ProfileKind::Tabulated:
        if (s.source_file().empty())
            throw InvalidArgument("tabulated profile without a source file cannot be serialized");
        out << "kind = tabulated\nfile = " << s.source_file() << "\nlimit = " << g17(s.param(0))
            << "\n";
        break;
    }
    out << "\n";
}

std::string join_list(const std::vector<double>& v) {
    std::string s;
    for (double x : v) {
        if (!s.empty()) s += " ";
        s += g17(x);
    }
    return s;
}

} // namespace

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[profile]\n"
        << "D = " << g17(cfg.D) << "\n"
        << "nu = " << g17(cfg.nu) << "\n"
        << "K1 = " << g17(cfg.K1) << "\n"
        << "K2 = " << g17(cfg.K2) << "\n"
        << "homogenization_radius = " << g17(cfg.homogenization_radius) << "\n\n";
    write_rate(out, "r", cfg.r);
    write_rate(out, "gamma", cfg.gamma);
    write_rate(out, "mu1", cfg.mu1);
    write_rate(out, "mu2", cfg.mu2);

    out << "[initial]\n";
    if (cfg.initial.tabulated) {
        out << "kind = tabulated\n"
            << "h0 = " << g17(cfg.initial.h0) << "\n"
            << "file = " << cfg.initial.file << "\n\n";
    } else {
        out << "kind = cosine\n"
            << "h0 = " << g17(cfg.initial.h0) << "\n"
            << "amp_M = " << g17(cfg.initial.amp_M) << "\n"
            << "amp_A = " << g17(cfg.initial.amp_A) << "\n\n";
    }

    out << "[solver]\n"
        << "N = " << cfg.solver.N << "\n"
        << "dt_policy = "
        << (cfg.solver.dt_policy == SolverConfig::DtPolicy::Fixed ? "fixed" : "cfl") << "\n"
        << "dt = " << g17(cfg.solver.dt) << "\n"
        << "cfl_factor = " << g17(cfg.solver.cfl_factor) << "\n"
        << "mu = " << g17(cfg.solver.mu) << "\n"
        << "horizon = " << g17(cfg.solver.horizon) << "\n"
        << "boundary_stencil_order = " << cfg.solver.boundary_stencil_order << "\n\n";

    out << "[classifier]\n"
        << "eps_R = " << g17(cfg.classifier.eps_R) << "\n"
        << "eps_gap_rel = " << g17(cfg.classifier.eps_gap_rel) << "\n"
        << "eps_density_rel = " << g17(cfg.classifier.eps_density_rel) << "\n"
        << "window_frac = " << g17(cfg.classifier.window_frac) << "\n"
        << "r0f_resolution = " << cfg.classifier.r0f_resolution << "\n\n";

    out << "[task]\n";
    if (cfg.task.kind_set) out << "kind = " << to_string(cfg.task.kind) << "\n";
    out << "p = " << g17(cfg.task.p) << "\n"
        << "q = " << g17(cfg.task.q) << "\n"
        << "resolution = " << cfg.task.resolution << "\n"
        << "L_sequence = " << join_list(cfg.task.L_sequence) << "\n"
        << "window = " << g17(cfg.task.window) << "\n"
        << "mu_lo = " << g17(cfg.task.mu_lo) << "\n"
        << "mu_hi = " << g17(cfg.task.mu_hi) << "\n"
        << "tol = " << g17(cfg.task.tol) << "\n\n";

    out << "[output]\n"
        << "directory = " << cfg.output.directory << "\n";
    std::string formats;
    if (cfg.output.ndjson) formats += "ndjson";
    if (cfg.output.csv) formats += formats.empty() ? "csv" : " csv";
    if (cfg.output.json) formats += formats.empty() ? "json" : " json";
    if (cfg.output.svg) formats += formats.empty() ? "svg" : " svg";
    out << "formats = " << formats << "\n"
        << "snapshot_times = " << join_list(cfg.output.snapshot_times) << "\n"
        << "write_fields = " << (cfg.output.write_fields ? "true" : "false") << "\n";
    return out.str();
}

CoefficientProfile build_profile(const RunConfig& cfg) {
    return CoefficientProfile(cfg.r, cfg.gamma, cfg.mu1, cfg.mu2, cfg.D, cfg.nu, cfg.K1, cfg.K2,
                              cfg.homogenization_radius);
}

InitialData build_initial(const RunConfig& cfg) {
    if (!cfg.initial.tabulated)
        return InitialData::cosine(cfg.initial.h0, cfg.initial.amp_M, cfg.initial.amp_A);

    std::ifstream in(cfg.initial.file);
    if (!in) throw IoError("cannot open initial-data table: " + cfg.initial.file);
    auto xs = std::make_shared<std::vector<double>>();
    auto ms = std::make_shared<std::vector<double>>();
    auto as = std::make_shared<std::vector<double>>();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double x, m, a;
        if (!(row >> x)) continue;
        if (!(row >> m) || !(row >> a))
            throw IoError(cfg.initial.file + ":" + std::to_string(lineno) +
                          ": expected three columns (x M A)");
        if (!xs->empty() && x <= xs->back())
            throw IoError(cfg.initial.file + ":" + std::to_string(lineno) +
                          ": x column must be strictly increasing");
        xs->push_back(x);
        ms->push_back(m);
        as->push_back(a);
    }
    const double h0 = cfg.initial.h0;
    if (xs->size() < 3)
        throw IoError(cfg.initial.file + ": need at least three rows");
    if (std::abs(xs->front() + h0) > 1e-9 * h0 || std::abs(xs->back() - h0) > 1e-9 * h0)
        throw IoError(cfg.initial.file + ": table must span exactly [-h0, h0]");

    auto interp = [xs](const std::shared_ptr<std::vector<double>>& vs, double x) {
        if (x <= xs->front() || x >= xs->back()) return 0.0;
        const auto it = std::upper_bound(xs->begin(), xs->end(), x);
        const std::size_t j = static_cast<std::size_t>(it - xs->begin());
        const double w = (x - (*xs)[j - 1]) / ((*xs)[j] - (*xs)[j - 1]);
        return (*vs)[j - 1] * (1.0 - w) + (*vs)[j] * w;
    };
    InitialData d;
    d.h0 = h0;
    d.M0 = [interp, ms](double x) { return interp(ms, x); };
    d.A0 = [interp, as](double x) { return interp(as, x); };
    return d;
}

} // namespace mosqfront
