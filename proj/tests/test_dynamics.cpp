#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "brx/closed_forms.hpp"
#include "brx/dynamics.hpp"
#include "brx/ilp.hpp"
#include "brx/penalty.hpp"
#include "test_util.hpp"

using namespace brx;
using test_util::make_instance;
using test_util::point;
using test_util::TestRng;

namespace {

SgdConfig reference_config(GradientKind kind, std::uint64_t seed = 9) {
    SgdConfig s;
    s.step_size = 0.05;
    s.steps = 2000;
    s.batch = 32;
    s.delta = 1e-7;
    s.seed = seed;
    s.kind = kind;
    return s;
}

} // namespace

TEST_CASE("identical configurations give bit-identical trajectories") {
    const auto inst = make_instance({{1}}, {0.95}, {0});
    const SgdConfig s = reference_config(GradientKind::pathwise);
    const Trajectory t1 = sgd_run(inst, PenaltyConfig{1.0}, point({0.9}), s);
    const Trajectory t2 = sgd_run(inst, PenaltyConfig{1.0}, point({0.9}), s);
    REQUIRE(t1.entries.size() == t2.entries.size());
    for (std::size_t k = 0; k < t1.entries.size(); ++k) {
        CHECK(t1.entries[k].point.xhat == t2.entries[k].point.xhat);
        CHECK(t1.entries[k].gradient == t2.entries[k].gradient);
    }
    CHECK(t1.terminal_objective == t2.terminal_objective);

    // a different seed diverges mid-flight (terminals coincide at the clamp)
    SgdConfig other = s;
    other.seed = 10;
    const Trajectory t3 = sgd_run(inst, PenaltyConfig{1.0}, point({0.9}), other);
    CHECK(t3.entries[5].point.xhat != t1.entries[5].point.xhat);
}

TEST_CASE("iterates never leave the projection box") {
    const auto inst = make_instance({{1, 1}}, {1.5}, {0, 0});
    SgdConfig s = reference_config(GradientKind::pathwise, 21);
    s.steps = 400;
    s.delta = 1e-4;
    const Trajectory t = sgd_run(inst, PenaltyConfig{1.0}, point({0.97, 0.9}), s);
    CHECK(t.entries.size() == s.steps + 1);
    for (const auto& e : t.entries) {
        CHECK(e.step == static_cast<std::size_t>(&e - t.entries.data()));
        for (double v : e.point.xhat) {
            CHECK(v >= s.delta);
            CHECK(v <= 1.0 - s.delta);
        }
    }
}

TEST_CASE("pathwise descent drives the 1D reference problem to zero") {
    const auto inst = make_instance({{1}}, {0.95}, {0});
    const Trajectory t = sgd_run(inst, PenaltyConfig{1.0}, point({0.9}),
                                 reference_config(GradientKind::pathwise));
    CHECK(t.terminal_point().xhat[0] <= 1e-7 + 1e-3);
    // while the expected-surrogate minimizer sits above one half
    const double minimizer = minimize_scalar(
        [](double x) { return surrogate_potential_1d(ScalarProblem1D{1.0, 0.95}, x); }, 0.0, 1.0,
        1e-7);
    CHECK(minimizer > 0.5);
}

TEST_CASE("corrected 1D descent settles at the expected-surrogate minimizer") {
    const auto inst = make_instance({{1}}, {0.95}, {0});
    const Trajectory t = sgd_run(inst, PenaltyConfig{1.0}, point({0.9}),
                                 reference_config(GradientKind::pathwise_corrected_1d));
    CHECK(std::fabs(t.terminal_point().xhat[0] - 0.669238416053) <= 0.05);
}

TEST_CASE("the corrected estimator requires a 1x1 instance") {
    const auto inst = make_instance({{1, 1}}, {1.5}, {0, 0});
    CHECK_THROWS_AS(sgd_run(inst, PenaltyConfig{1.0}, point({0.5, 0.5}),
                            reference_config(GradientKind::pathwise_corrected_1d)),
                    Error);
}

TEST_CASE("2D pathwise descent lands on an axis despite the interior minimizer") {
    const auto inst = make_instance({{1, 1}}, {1.5}, {0, 0});
    const Trajectory t = sgd_run(inst, PenaltyConfig{1.0}, point({0.9, 0.9}),
                                 reference_config(GradientKind::pathwise, 33));
    const auto& xy = t.terminal_point().xhat;
    CHECK(std::min(xy[0], xy[1]) <= 1e-7 + 0.01);
}

TEST_CASE("expected drift is strictly positive across the box in 1D") {
    const auto inst = make_instance({{1}}, {0.95}, {0});
    for (int k = 1; k <= 99; ++k) {
        const auto r = expected_drift(inst, PenaltyConfig{1.0}, point({k / 100.0}), 20'000,
                                      700 + static_cast<std::uint64_t>(k));
        CHECK(r.mean[0] > 0.0);
        CHECK(r.mean[0] > 3.0 * r.stderr_of_mean[0]);
    }
}

TEST_CASE("expected drift anchors") {
    SUBCASE("1D reference point") {
        const auto inst = make_instance({{1}}, {0.95}, {0});
        const auto r = expected_drift(inst, PenaltyConfig{1.0}, point({0.5}), 1'000'000, 11);
        CHECK(std::fabs(r.mean[0] - 1.0 / 3.0) <= 4.0 * r.stderr_of_mean[0]);
    }
    SUBCASE("no violating corner: the drift is the objective gradient exactly") {
        const auto inst = make_instance({{1, 1}}, {5.0}, {0.3, -0.2});
        const auto r = expected_drift(inst, PenaltyConfig{2.0}, point({0.5, 0.5}), 1000, 11);
        CHECK(r.mean[0] == 0.3);
        CHECK(r.mean[1] == -0.2);
        CHECK(r.stderr_of_mean[0] == 0.0);
    }
    SUBCASE("2D reference point") {
        const auto inst = make_instance({{1, 1}}, {1.5}, {0, 0});
        const auto r = expected_drift(inst, PenaltyConfig{1.0}, point({0.5, 0.5}), 1'000'000, 12);
        CHECK(std::fabs(r.mean[0] - 1.0 / 6.0) <= 4.0 * r.stderr_of_mean[0]);
        CHECK(std::fabs(r.mean[1] - 1.0 / 6.0) <= 4.0 * r.stderr_of_mean[1]);
    }
}

TEST_CASE("exact-penalty descent reaches the zero-penalty set when mu is admissible") {
    TestRng rng(112233);
    int done = 0;
    while (done < 20) {
        const std::size_t d = 1 + rng.integer(3);
        const std::size_t m = 1 + rng.integer(2);
        std::vector<std::vector<double>> a(m, std::vector<double>(d));
        std::vector<double> b(m), c(d);
        for (auto& row : a)
            for (double& v : row) v = rng.uniform(-2.0, 2.0);
        for (double& v : b) v = rng.uniform(-2.0, 2.0);
        for (double& v : c) v = rng.uniform(-2.0, 2.0);
        const auto inst = make_instance(a, b, c);
        if (!enumerate_solve(inst).feasible) continue;
        ++done;

        const double mu = 2.0 * std::max(mu_threshold(inst), 1.0);
        double scale = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < d; ++j) scale += std::fabs(inst.a(i, j));
        SgdConfig s;
        s.kind = GradientKind::exact_penalty;
        s.step_size = 0.2 / (1.0 + mu * scale);
        s.steps = 20'000;
        s.batch = 1;
        s.delta = 1e-7;
        s.seed = 1;

        RelaxedPoint x0;
        x0.xhat.resize(d);
        for (double& v : x0.xhat) v = rng.uniform(0.35, 0.65);
        const Trajectory t = sgd_run(inst, PenaltyConfig{mu}, x0, s);
        const auto phi = expected_penalty_exact(inst, t.terminal_point());
        CHECK(std::accumulate(phi.begin(), phi.end(), 0.0) <= 1e-3);
    }
}

TEST_CASE("trajectory export format") {
    const auto inst = make_instance({{1, 1}}, {1.5}, {0, 0});
    SgdConfig s = reference_config(GradientKind::pathwise, 5);
    s.steps = 3;
    const Trajectory t = sgd_run(inst, PenaltyConfig{1.0}, point({0.6, 0.6}), s);
    std::ostringstream os;
    write_trajectory_csv(t, os);
    const std::string text = os.str();
    CHECK(text.rfind("step,x1,x2,g1,g2\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 5); // header + steps + 1
}

TEST_CASE("configuration validation") {
    const auto inst = make_instance({{1}}, {0.95}, {0});
    SgdConfig s = reference_config(GradientKind::pathwise);
    s.step_size = 0.0;
    CHECK_THROWS_AS(sgd_run(inst, PenaltyConfig{1.0}, point({0.5}), s), Error);
    s = reference_config(GradientKind::pathwise);
    s.delta = 0.7;
    CHECK_THROWS_AS(sgd_run(inst, PenaltyConfig{1.0}, point({0.5}), s), Error);
    s = reference_config(GradientKind::pathwise);
    s.batch = 0;
    CHECK_THROWS_AS(sgd_run(inst, PenaltyConfig{1.0}, point({0.5}), s), Error);
    CHECK_THROWS_AS(
        sgd_run(inst, PenaltyConfig{-1.0}, point({0.5}), reference_config(GradientKind::pathwise)),
        Error);
    CHECK_THROWS_AS(expected_drift(inst, PenaltyConfig{-1.0}, point({0.5}), 100, 1), Error);
}
