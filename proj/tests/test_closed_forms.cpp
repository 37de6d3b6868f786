#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "brx/closed_forms.hpp"
#include "brx/estimators.hpp"
#include "brx/ilp.hpp"
#include "brx/logistic.hpp"
#include "brx/noise.hpp"
#include "test_util.hpp"

using namespace brx;
using test_util::make_instance;
using test_util::point;
using test_util::TestRng;

namespace {

// Independent area-integral route for Green's theorem: composite Simpson in
// both directions (resolution must be even).
double integral_2d(const std::function<double(double, double)>& f, double x_lo, double x_hi,
                   double y_lo, double y_hi, int cells) {
    const int n = cells % 2 ? cells + 1 : cells;
    const double hx = (x_hi - x_lo) / n, hy = (y_hi - y_lo) / n;
    auto weight = [n](int k) { return k == 0 || k == n ? 1.0 : (k % 2 ? 4.0 : 2.0); };
    double total = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            total += weight(i) * weight(j) * f(x_lo + i * hx, y_lo + j * hy);
    return total * hx * hy / 9.0;
}

const ScalarProblem1D kReference1D{1.0, 0.95};
const PlanarProblem2D kReference2D{1.0, 1.0, 1.5};

} // namespace

TEST_CASE("minimal interchange example") {
    CHECK(min_example_exp_of_grad(0.3) == 0.3);
    CHECK(min_example_exp_of_grad(0.5) == 0.5);
    CHECK(min_example_grad_of_exp(0.3) == doctest::Approx(0.6));
    CHECK(min_example_grad_of_exp(1e-9) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK_THROWS_AS(min_example_exp_of_grad(0.0), Error);
    CHECK_THROWS_AS(min_example_grad_of_exp(1.0), Error);

    // Monte-Carlo oracle for E[df/dx] with f = 1[eps <= x] * x
    const std::size_t n = 100'000;
    const double xh = 0.3;
    double mean = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        mean += NoiseStream::uniform_at(17, k) <= xh ? 1.0 : 0.0;
    mean /= static_cast<double>(n);
    CHECK(std::fabs(mean - min_example_exp_of_grad(xh)) <=
          3.0 * std::sqrt(xh * (1 - xh) / n));

    // CRN finite difference of E[f] around 0.4 approaches 2 * 0.4
    const double h = 1e-3;
    double q = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = NoiseStream::uniform_at(18, k);
        const double up = e <= 0.4 + h ? 0.4 + h : 0.0;
        const double down = e <= 0.4 - h ? 0.4 - h : 0.0;
        q += (up - down) / (2 * h);
    }
    q /= static_cast<double>(n);
    CHECK(std::fabs(q - min_example_grad_of_exp(0.4)) <= 0.1);
}

TEST_CASE("f1 anchors") {
    CHECK(f1(0.5) == -0.125); // series branch, exact binary value
    CHECK(f1(0.0) == 0.0);
    CHECK(f1(1.0) == 0.0);
    CHECK(f1(0.75) == doctest::Approx(-0.144860385419959).epsilon(1e-12));
    CHECK(f1(0.9) == doctest::Approx(-0.113827206436045).epsilon(1e-12));
    CHECK_THROWS_AS(f1(-0.1), Error);
    CHECK_THROWS_AS(f1(1.0001), Error);
}

TEST_CASE("f1 agrees with its defining integral, series window included") {
    for (int k = 1; k <= 999; ++k) {
        const double x = k / 1000.0;
        CHECK(std::fabs(f1(x) - f1_quadrature(x)) <= 1e-8);
    }
    // inside the series window, against quadrature at full tolerance
    for (double x : {0.4991, 0.4997, 0.5 - 1e-9, 0.5 + 1e-9, 0.5004, 0.5009})
        CHECK(std::fabs(f1(x) - f1_quadrature(x)) <= 1e-10);
    CHECK(f1_quadrature(0.5) == doctest::Approx(-0.125).epsilon(1e-9));
    CHECK_THROWS_AS(f1_quadrature(0.0), Error);
}

TEST_CASE("f1 small-argument expansion") {
    // f1(x) ~ x (ln 2 - 1) near 0
    CHECK(std::fabs(f1_quadrature(0.01) - 0.01 * (std::log(2.0) - 1.0)) <= 1e-4);
    CHECK(f1(0.01) == doctest::Approx(f1_quadrature(0.01)).epsilon(1e-9));
}

TEST_CASE("f1 is non-positive, zero only at the endpoints, and convex") {
    CHECK(f1(0.0) == 0.0);
    CHECK(f1(1.0) == 0.0);
    const int n = 999;
    for (int k = 1; k <= n; ++k) CHECK(f1(k / 1000.0) < 0.0);
    for (int k = 1; k < n; ++k) {
        const double x = k / 1000.0;
        const double second = f1(x + 1e-3) - 2.0 * f1(x) + f1(x - 1e-3);
        CHECK(second >= -1e-8);
    }
}

TEST_CASE("f1_prime anchors and consistency with f1") {
    CHECK(f1_prime(0.5) == doctest::Approx(-1.0 / 6.0).epsilon(1e-12)); // series branch
    CHECK(f1_prime(0.0) == doctest::Approx(std::log(2.0) - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(f1_prime(1.0), Error);

    const double h = 3e-6;
    for (int k = 10; k <= 990; ++k) {
        const double x = k / 1000.0;
        const double fd = (f1(x + h) - f1(x - h)) / (2 * h);
        CHECK(std::fabs(f1_prime(x) - fd) <= 1e-7);
    }
    // strictly increasing on [0, 0.99]
    double prev = f1_prime(0.0);
    for (int k = 1; k <= 99; ++k) {
        const double cur = f1_prime(k / 100.0);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("1D potential anchors") {
    CHECK(surrogate_potential_1d(kReference1D, 0.0) == 0.0);
    CHECK(surrogate_potential_1d(kReference1D, 1.0) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(surrogate_potential_1d(kReference1D, 0.5) == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("1D potential equals the Monte-Carlo mean of the surrogate") {
    const auto inst = make_instance({{1}}, {0.95}, {0});
    for (double x : {0.2, 0.5, 0.8}) {
        const auto r = mc_mean_scalar(
            [&](const RelaxedPoint& p, const NoiseVector& e) {
                return surrogate_violation_sample(inst, 0, p, e);
            },
            point({x}), 200'000, 4000 + static_cast<std::uint64_t>(x * 10));
        CHECK(std::fabs(r.mean[0] - surrogate_potential_1d(kReference1D, x)) <=
              4.0 * r.stderr_of_mean[0]);
    }
}

TEST_CASE("1D estimator mean: anchors, positivity, Monte-Carlo bridge") {
    CHECK(estimator_mean_1d(kReference1D, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(estimator_mean_1d(kReference1D, 0.0) ==
          doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-12));
    CHECK(estimator_mean_1d(kReference1D, 0.2) ==
          doctest::Approx(-0.268501716454928 + 0.5).epsilon(1e-12));
    CHECK(estimator_mean_1d(kReference1D, 0.8) ==
          doctest::Approx(0.130975610528496 + 0.5).epsilon(1e-12));

    for (int k = 1; k <= 10'000; ++k) CHECK(estimator_mean_1d(kReference1D, k / 10'001.0) > 0.0);

    const auto inst = make_instance({{1}}, {0.95}, {0});
    const auto r = mc_mean_vector(
        [&](const RelaxedPoint& p, const NoiseVector& e, std::span<double> out) {
            out[0] = pathwise_gradient_sample(inst, 0, p, e)[0];
        },
        1, point({0.7}), 400'000, 88);
    CHECK(std::fabs(r.mean[0] - estimator_mean_1d(kReference1D, 0.7)) <=
          4.0 * r.stderr_of_mean[0]);
}

TEST_CASE("1D consistency chain: potential, estimator mean, effective potential") {
    const double h = 1e-5;
    const double boundary_constant = kReference1D.b - 0.5 * kReference1D.a; // 0.45
    for (int k = 2; k <= 98; ++k) {
        const double x = k / 100.0;
        const double fd_potential = (surrogate_potential_1d(kReference1D, x + h) -
                                     surrogate_potential_1d(kReference1D, x - h)) /
                                    (2 * h);
        const double fd_effective = (effective_potential_1d(kReference1D, x + h) -
                                     effective_potential_1d(kReference1D, x - h)) /
                                    (2 * h);
        const double g = estimator_mean_1d(kReference1D, x);
        CHECK(std::fabs(fd_potential - (g - boundary_constant)) <= 1e-7);
        CHECK(std::fabs(fd_effective - g) <= 1e-7);
    }
}

TEST_CASE("effective potential anchors and monotonicity") {
    CHECK(effective_potential_1d(kReference1D, 0.0) == 0.0);
    // a (f1(1/2) + 1/4) = 0.125
    CHECK(effective_potential_1d(kReference1D, 0.5) == doctest::Approx(0.125).epsilon(1e-12));
    double prev = effective_potential_1d(kReference1D, 0.0);
    for (int k = 1; k <= 1000; ++k) {
        const double cur = effective_potential_1d(kReference1D, k / 1000.0);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("potentials in the never-violated regime vanish") {
    const ScalarProblem1D slack{1.0, 2.0};
    CHECK(slack.regime() == ScalarProblem1D::Regime::never_violated);
    CHECK(surrogate_potential_1d(slack, 0.7) == 0.0);
    CHECK(estimator_mean_1d(slack, 0.7) == 0.0);
    CHECK(effective_potential_1d(slack, 0.7) == 0.0);

    const ScalarProblem1D negative{1.0, -1.0};
    CHECK(negative.regime() == ScalarProblem1D::Regime::always_violated);
    CHECK_THROWS_AS(surrogate_potential_1d(negative, 0.5), Error);
}

TEST_CASE("corrected gradient sample") {
    SUBCASE("its mean is the derivative of the expected surrogate") {
        NoiseStream s(606);
        const std::size_t n = 1'000'000;
        double sum = 0.0, sumsq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double g =
                corrected_gradient_sample_1d(kReference1D, 0.5, NoiseStream::uniform_at(606, k));
            sum += g;
            sumsq += g * g;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sumsq / n - mean * mean) / n);
        // phi_hat'(1/2) = -1/6 + 0.05
        CHECK(std::fabs(mean - (-1.0 / 6.0 + 0.05)) <= 4.0 * se);
        (void)s;
    }
    SUBCASE("no correction outside 0 < b < a") {
        const ScalarProblem1D slack{1.0, 2.0};
        CHECK(corrected_gradient_sample_1d(slack, 0.5, 0.9) == 0.0);
        const ScalarProblem1D negative{1.0, -1.0};
        // always violated: the raw pathwise sample, no constant
        const double z = sigma_inv(0.5) + sigma_inv(0.2);
        CHECK(corrected_gradient_sample_1d(negative, 0.5, 0.2) ==
              doctest::Approx(sigma_prime(z) * 4.0).epsilon(1e-12));
    }
}

TEST_CASE("golden-section minimizer") {
    CHECK(minimize_scalar([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-6) ==
          doctest::Approx(0.3).epsilon(1e-5));
    const double xm = minimize_scalar([](double x) { return f1(x); }, 0.0, 1.0, 1e-7);
    CHECK(xm == doctest::Approx(0.715885895866).epsilon(1e-5));
    CHECK(f1(xm) == doctest::Approx(-0.145606380441681).epsilon(1e-9));

    const double xp = minimize_scalar(
        [](double x) { return surrogate_potential_1d(kReference1D, x); }, 0.0, 1.0, 1e-7);
    CHECK(xp > 0.5);
    CHECK(xp < 1.0);
    CHECK(xp == doctest::Approx(0.669238416053).epsilon(1e-5));
    CHECK_THROWS_AS(minimize_scalar([](double x) { return x; }, 1.0, 0.0, 1e-6), Error);
}

TEST_CASE("2D potential anchors and Monte-Carlo bridge") {
    for (double t : {0.0, 0.3, 1.0}) {
        CHECK(surrogate_potential_2d(kReference2D, 0.0, t) == 0.0);
        CHECK(surrogate_potential_2d(kReference2D, t, 0.0) == 0.0);
    }
    CHECK(surrogate_potential_2d(kReference2D, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(surrogate_potential_2d(kReference2D, 0.5, 0.5) ==
          doctest::Approx(0.0).epsilon(1e-12));

    const auto inst = make_instance({{1, 1}}, {1.5}, {0, 0});
    const auto r = mc_mean_scalar(
        [&](const RelaxedPoint& p, const NoiseVector& e) {
            return surrogate_violation_sample(inst, 0, p, e);
        },
        point({0.6, 0.35}), 400'000, 505);
    CHECK(std::fabs(r.mean[0] - surrogate_potential_2d(kReference2D, 0.6, 0.35)) <=
          4.0 * r.stderr_of_mean[0]);
}

TEST_CASE("2D field anchors and Monte-Carlo bridge") {
    const auto on_axis = estimator_mean_field_2d(kReference2D, 0.4, 0.0);
    CHECK(on_axis[0] == 0.0);
    CHECK(on_axis[1] == doctest::Approx(0.4 * (0.5 + f1_prime(0.0))).epsilon(1e-12));

    const auto center = estimator_mean_field_2d(kReference2D, 0.5, 0.5);
    CHECK(center[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(center[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    const auto inst = make_instance({{1, 1}}, {1.5}, {0, 0});
    const auto r = mc_mean_vector(
        [&](const RelaxedPoint& p, const NoiseVector& e, std::span<double> out) {
            const auto g = pathwise_gradient_sample(inst, 0, p, e);
            out[0] = g[0];
            out[1] = g[1];
        },
        2, point({0.5, 0.5}), 1'000'000, 606);
    for (int j = 0; j < 2; ++j)
        CHECK(std::fabs(r.mean[j] - center[j]) <= 4.0 * r.stderr_of_mean[j]);
}

TEST_CASE("curl anchors") {
    CHECK(curl_2d(kReference2D, 0.37, 0.37) == 0.0); // symmetric instance on the diagonal
    CHECK(curl_2d(kReference2D, 0.3, 0.7) ==
          doctest::Approx(-0.224271674137152).epsilon(1e-12));
    const PlanarProblem2D uneven{1.0, 0.5, 1.4};
    CHECK(curl_2d(uneven, 0.5, 0.5) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK_THROWS_AS(curl_2d(kReference2D, 0.0, 0.5), Error);
}

TEST_CASE("curl matches finite differences of the field") {
    TestRng rng(2025);
    const double h = 1e-5;
    for (int rep = 0; rep < 50; ++rep) {
        const double x1 = rng.uniform(0.05, 0.95);
        const double x2 = rng.uniform(0.05, 0.95);
        const double fd_curl = (estimator_mean_field_2d(kReference2D, x1, x2 + h)[0] -
                                estimator_mean_field_2d(kReference2D, x1, x2 - h)[0] -
                                estimator_mean_field_2d(kReference2D, x1 + h, x2)[1] +
                                estimator_mean_field_2d(kReference2D, x1 - h, x2)[1]) /
                               (2 * h);
        CHECK(std::fabs(curl_2d(kReference2D, x1, x2) - fd_curl) <= 1e-6);
    }
}

TEST_CASE("circulation of gradient and constant fields vanishes") {
    const PlanarField grad_field = [&](double x1, double x2) {
        const double h = 1e-6;
        return std::array<double, 2>{(surrogate_potential_2d(kReference2D, x1 + h, x2) -
                                      surrogate_potential_2d(kReference2D, x1 - h, x2)) /
                                         (2 * h),
                                     (surrogate_potential_2d(kReference2D, x1, x2 + h) -
                                      surrogate_potential_2d(kReference2D, x1, x2 - h)) /
                                         (2 * h)};
    };
    CHECK(std::fabs(circulation(grad_field, 0.3, 0.7, 0.2, 500)) <= 1e-5);
    const PlanarField constant = [](double, double) { return std::array<double, 2>{1.0, 0.0}; };
    CHECK(circulation(constant, 0.5, 0.5, 0.3, 100) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(circulation(constant, 0.5, 0.5, 0.0, 100) == 0.0); // degenerate loop
    CHECK_THROWS_AS(circulation(constant, 0.9, 0.5, 0.2, 100), Error);
}

TEST_CASE("circulation of the mean-estimator field") {
    const PlanarField field = [&](double x1, double x2) {
        return estimator_mean_field_2d(kReference2D, x1, x2);
    };
    SUBCASE("diagonal-centered loop of a symmetric instance cancels exactly") {
        // swapping coordinates maps the field to itself and reverses the
        // loop, so the integral is its own negative
        CHECK(std::fabs(circulation(field, 0.5, 0.5, 0.2, 2000)) <= 1e-9);
    }
    SUBCASE("off-center loop picks up the non-conservative part") {
        CHECK(circulation(field, 0.3, 0.7, 0.2, 2000) ==
              doctest::Approx(0.042532117326326).epsilon(1e-6));
    }
    SUBCASE("asymmetric instance, diagonal-centered loop") {
        const PlanarProblem2D uneven{1.0, 0.5, 1.4};
        const PlanarField f = [&](double x1, double x2) {
            return estimator_mean_field_2d(uneven, x1, x2);
        };
        CHECK(circulation(f, 0.5, 0.5, 0.2, 2000) ==
              doctest::Approx(-0.027584311648359).epsilon(1e-6));
    }
}

TEST_CASE("Green consistency: loop integral equals the signed curl area integral") {
    // counterclockwise circulation = Integral of (d1 g2 - d2 g1) = -Integral
    // of curl_2d under this module's sign convention
    struct Config {
        PlanarProblem2D p;
        double cx, cy, r;
    };
    const Config configs[] = {
        {{1.0, 0.5, 1.4}, 0.5, 0.5, 0.2},
        {{1.0, 1.0, 1.5}, 0.3, 0.65, 0.15},
        {{1.2, 0.9, 1.6}, 0.55, 0.4, 0.25},
    };
    for (const Config& cfg : configs) {
        const PlanarField field = [&](double x1, double x2) {
            return estimator_mean_field_2d(cfg.p, x1, x2);
        };
        const double circ = circulation(field, cfg.cx, cfg.cy, cfg.r, 2000);
        const double area = integral_2d(
            [&](double x1, double x2) { return curl_2d(cfg.p, x1, x2); }, cfg.cx - cfg.r,
            cfg.cx + cfg.r, cfg.cy - cfg.r, cfg.cy + cfg.r, 200);
        CHECK(std::fabs(circ + area) <= 1e-2 * std::fabs(area));
    }
}
