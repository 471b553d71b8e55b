#include <algorithm>
#include <cmath>
#include <string>

#include "doctest.h"
#include "mosqfront/classify.hpp"
#include "mosqfront/errors.hpp"
#include "mosqfront/profile.hpp"
#include "mosqfront/solver.hpp"
#include "mosqfront/state.hpp"
#include "mosqfront/threshold.hpp"

using namespace mosqfront;

namespace {

CoefficientProfile reference_profile() {
    return CoefficientProfile::homogeneous(1.0, 1.0, 0.25, 1.0, 1.0, 0.0, 1.0, 1.0);
}

SolverConfig fast_config(double horizon, double mu = 1.0) {
    SolverConfig c;
    c.N = 64;
    c.mu = mu;
    c.horizon = horizon;
    return c;
}

} // namespace

TEST_CASE("classifier configuration is validated") {
    ClassifierConfig c;
    CHECK_NOTHROW(c.validate());
    SUBCASE("eps_R") {
        c.eps_R = 0.0;
        CHECK_THROWS_AS(c.validate(), InvalidArgument);
        c.eps_R = 1.0;
        CHECK_THROWS_AS(c.validate(), InvalidArgument);
    }
    SUBCASE("window fraction") {
        c.window_frac = 0.0;
        CHECK_THROWS_AS(c.validate(), InvalidArgument);
        c.window_frac = 1.5;
        CHECK_THROWS_AS(c.validate(), InvalidArgument);
    }
    SUBCASE("relative tolerances") {
        c.eps_gap_rel = -1.0;
        CHECK_THROWS_AS(c.validate(), InvalidArgument);
    }
    SUBCASE("trace resolution") {
        c.r0f_resolution = 8;
        CHECK_THROWS_AS(c.validate(), InvalidArgument);
    }
}

TEST_CASE("a wide habitat is recognised as spreading immediately") {
    const auto p = reference_profile();
    auto init = InitialData::cosine(4.0, 0.5, 0.5);
    const auto run = run_classified(init, p, fast_config(5.0), ClassifierConfig{});

    CHECK(run.outcome.label == OutcomeLabel::Spreading);
    CHECK(run.outcome.stop_time == 0.0);
    CHECK(run.outcome.rule.find("spreading") != std::string::npos);
    REQUIRE(!run.outcome.r0f.empty());
    CHECK(run.outcome.r0f.front().R0 > 1.0);
    CHECK(to_string(run.outcome.label) == std::string("Spreading"));
    // the run stops at the first decisive snapshot
    CHECK(run.trajectory.back().t < 5.0);
}

TEST_CASE("a narrow habitat with faint seeding dies out") {
    const auto p = reference_profile();
    auto init = InitialData::cosine(0.5, 1e-3, 1e-3);
    const auto run = run_classified(init, p, fast_config(30.0), ClassifierConfig{});

    CHECK(run.outcome.label == OutcomeLabel::Vanishing);
    CHECK(run.outcome.rule.find("vanishing") != std::string::npos);
    CHECK(run.outcome.final_R0F < 1.0 - 1e-3);
    CHECK(run.outcome.final_sup_M + run.outcome.final_sup_A < 1e-6 * 2.0);
    CHECK(std::isfinite(run.outcome.gap_growth));
    CHECK(run.outcome.gap_growth < 1e-6);
    CHECK(to_string(run.outcome.label) == std::string("Vanishing"));
}

TEST_CASE("a run cut short stays undecided") {
    const auto p = reference_profile();
    auto init = InitialData::cosine(0.5, 1e-3, 1e-3);
    const auto run = run_classified(init, p, fast_config(0.3), ClassifierConfig{});
    CHECK(run.outcome.label == OutcomeLabel::Undecided);
    CHECK(to_string(run.outcome.label) == std::string("Undecided"));
}

TEST_CASE("classification of an externally produced trajectory") {
    const auto p = reference_profile();
    auto init = InitialData::cosine(4.0, 0.5, 0.5);
    RunOptions opts;
    for (int k = 0; k <= 10; ++k) opts.output_times.push_back(0.2 * k);
    const auto traj = run(p, init, fast_config(2.0), opts);
    const auto outcome = classify(traj, p, ClassifierConfig{});
    CHECK(outcome.label == OutcomeLabel::Spreading);
    CHECK(outcome.stop_time == 0.0);
    REQUIRE(outcome.r0f.size() >= 1);
    CHECK(outcome.r0f.front().t == 0.0);
}

TEST_CASE("classifying an empty trajectory is rejected") {
    Trajectory traj;
    traj.h0 = 1.0;
    traj.N = 16;
    CHECK_THROWS_AS(classify(traj, reference_profile(), ClassifierConfig{}), InvalidArgument);
}

TEST_CASE("threshold search shortcut on an already supercritical habitat") {
    const auto p = reference_profile();
    auto init = InitialData::cosine(4.0, 0.5, 0.5);
    const auto res = find_mu_star(init, p, fast_config(10.0), ClassifierConfig{}, 0.25, 4.0, 0.05);
    CHECK(res.shortcut);
    CHECK(res.r0_initial >= 1.0);
    CHECK(res.mu_lo == 0.0);
    CHECK(res.mu_hi == 0.0);
    CHECK(res.transcript.empty());
}

TEST_CASE("threshold search brackets the critical expansion capability") {
    const auto p = reference_profile();
    auto init = InitialData::cosine(1.0, 0.5, 0.5);
    REQUIRE(compute_R0(-1.0, 1.0, p, 256).R0 < 1.0);

    const double lo = 0.25, hi = 64.0;
    const auto res = find_mu_star(init, p, fast_config(150.0), ClassifierConfig{}, lo, hi, 0.25);

    CHECK_FALSE(res.shortcut);
    CHECK(res.r0_initial < 1.0);
    CHECK(res.outcome_lo.label == OutcomeLabel::Vanishing);
    CHECK(res.outcome_hi.label == OutcomeLabel::Spreading);
    CHECK(res.mu_lo >= lo);
    CHECK(res.mu_hi <= hi);
    CHECK(res.mu_lo < res.mu_hi);
    CHECK(res.mu_hi - res.mu_lo < 0.25 * res.mu_hi);

    SUBCASE("transcript is label-monotone") {
        REQUIRE(res.transcript.size() >= 2);
        for (const auto& probe : res.transcript) {
            if (probe.label == OutcomeLabel::Vanishing) CHECK(probe.mu <= res.mu_lo + 1e-12);
            if (probe.label == OutcomeLabel::Spreading) CHECK(probe.mu >= res.mu_hi - 1e-12);
            CHECK(probe.label != OutcomeLabel::Undecided);
            CHECK(probe.horizon_used >= 150.0);
        }
    }
    SUBCASE("a tighter tolerance nests inside") {
        const auto fine =
            find_mu_star(init, p, fast_config(150.0), ClassifierConfig{}, lo, hi, 0.1);
        CHECK(fine.mu_lo >= res.mu_lo - 1e-12);
        CHECK(fine.mu_hi <= res.mu_hi + 1e-12);
        CHECK(fine.mu_hi - fine.mu_lo < 0.1 * fine.mu_hi);
    }
}

TEST_CASE("threshold search rejects a bad bracket") {
    const auto p = reference_profile();
    auto init = InitialData::cosine(1.0, 0.5, 0.5);
    SUBCASE("argument ordering") {
        CHECK_THROWS_AS(
            find_mu_star(init, p, fast_config(10.0), ClassifierConfig{}, 2.0, 1.0, 0.05),
            InvalidArgument);
        CHECK_THROWS_AS(
            find_mu_star(init, p, fast_config(10.0), ClassifierConfig{}, 0.0, 1.0, 0.05),
            InvalidArgument);
        CHECK_THROWS_AS(
            find_mu_star(init, p, fast_config(10.0), ClassifierConfig{}, 1.0, 2.0, 0.0),
            InvalidArgument);
    }
    SUBCASE("both endpoints spread") {
        // a habitat one hair short of critical: any expansion capability closes the gap
        auto near_critical = InitialData::cosine(3.0, 0.5, 0.5);
        CHECK_THROWS_AS(
            find_mu_star(near_critical, p, fast_config(20.0), ClassifierConfig{}, 1.0, 2.0, 0.05),
            InvalidBracket);
    }
}

TEST_CASE("a hopeless horizon reports the unresolved region") {
    const auto p = reference_profile();
    auto init = InitialData::cosine(1.0, 0.5, 0.5);
    try {
        find_mu_star(init, p, fast_config(0.01), ClassifierConfig{}, 0.25, 16.0, 0.05);
        FAIL("expected InconclusiveRegion");
    } catch (const InconclusiveRegion& e) {
        CHECK(e.mu_lo >= 0.25);
        CHECK(e.mu_hi <= 16.0);
        CHECK(std::string(e.what()).find("Undecided") != std::string::npos);
    }
}

TEST_CASE("internal consistency checks of the front dynamics") {
    const auto p = reference_profile();
    auto init = InitialData::cosine(2.0, 0.5, 0.5);
    // Full default resolution: the ordering margin between the two expansion
    // rates is smaller than coarse-grid upwind diffusion at early times.
    SolverConfig cmp_config;
    cmp_config.horizon = 4.0;
    cmp_config.mu = 2.0;
    const auto report = comparison_suite(p, init, cmp_config);

    REQUIRE(report.pairs.size() == 3);
    CHECK(report.pass);
    for (const auto& pair : report.pairs) {
        CAPTURE(pair.name);
        CHECK(pair.pass);
        CHECK(pair.front_violation_cells <= 1);
        CHECK(pair.density_violation <= 1e-8);
    }
    SUBCASE("the self pair agrees exactly") {
        const auto it = std::find_if(report.pairs.begin(), report.pairs.end(),
                                     [](const ComparisonPair& q) { return q.name == "identical"; });
        REQUIRE(it != report.pairs.end());
        CHECK(it->front_violation_cells == 0);
        CHECK(it->density_violation == 0.0);
    }
    SUBCASE("pair names") {
        CHECK(std::any_of(report.pairs.begin(), report.pairs.end(), [](const ComparisonPair& q) {
            return q.name == "scaled-initial-data";
        }));
        CHECK(std::any_of(report.pairs.begin(), report.pairs.end(), [](const ComparisonPair& q) {
            return q.name == "expansion-capability";
        }));
    }
}
