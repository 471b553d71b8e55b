#pragma once

#include <string>
#include <vector>

#include "mosqfront/classify.hpp"
#include "mosqfront/profile.hpp"
#include "mosqfront/state.hpp"

namespace mosqfront {

enum class TaskKind { Simulate, Threshold, Steady, Classify, MuStar, Compare };
const char* to_string(TaskKind kind);

// [initial] — either the analytic cosine hump family
//   M0(x) = amp_M cos(pi x / (2 h0)),  A0(x) = amp_A cos(pi x / (2 h0))
// or a three-column table (x M A) loaded from a file; mutually exclusive.
struct InitialBlock {
    bool tabulated = false;
    double h0 = 1.0;
    double amp_M = 0.5, amp_A = 0.5;
    std::string file;
};

struct TaskBlock {
    bool kind_set = false; // true when the document named the task
    TaskKind kind = TaskKind::Simulate;
    // threshold / steady grids
    double p = -1.0, q = 1.0;
    int resolution = 512;
    std::vector<double> L_sequence; // empty: dyadic default sequence
    double window = 0.0;            // 0: half of the first truncation
    // mu-star bracket
    double mu_lo = 0.25, mu_hi = 4.0, tol = 0.05;
};

struct OutputBlock {
    std::string directory = "out";
    bool ndjson = true, csv = true, json = true, svg = true;
    std::vector<double> snapshot_times; // empty: 50 uniform intervals
    bool write_fields = false;          // full-field CSV per snapshot
};

struct RunConfig {
    ProfileSpec r = ProfileSpec::constant(1.0);
    ProfileSpec gamma = ProfileSpec::constant(1.0);
    ProfileSpec mu1 = ProfileSpec::constant(0.25);
    ProfileSpec mu2 = ProfileSpec::constant(1.0);
    double D = 1.0, nu = 0.0, K1 = 1.0, K2 = 1.0;
    double homogenization_radius = 50.0;

    InitialBlock initial;
    SolverConfig solver;
    ClassifierConfig classifier;
    TaskBlock task;
    OutputBlock output;
};

// Strict-schema parser for the sectioned key=value format (grammar in the
// README).  Every violation is collected with its line number; the batch is
// thrown as one ConfigError.
RunConfig parse_config(const std::string& text);

// Canonical serialization: fixed section/key order, 17-significant-digit
// numbers.  parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& cfg);

CoefficientProfile build_profile(const RunConfig& cfg);
InitialData build_initial(const RunConfig& cfg); // loads the table file if tabulated

} // namespace mosqfront
