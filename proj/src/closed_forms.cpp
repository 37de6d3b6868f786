#include "brx/closed_forms.hpp"

#include <cmath>
#include <string>

#include "brx/logistic.hpp"

namespace brx {

ScalarProblem1D::ScalarProblem1D(double a_, double b_) : a(a_), b(b_) {
    if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        fail(Status::invalid_argument, "scalar problem needs finite a > 0 and finite b");
}

ScalarProblem1D::Regime ScalarProblem1D::regime() const noexcept {
    if (b < 0.0) return Regime::always_violated;
    if (b >= a) return Regime::never_violated;
    return Regime::boundary_active;
}

PlanarProblem2D::PlanarProblem2D(double a1_, double a2_, double b_) : a1(a1_), a2(a2_), b(b_) {
    if (!(a1 + a2 > b && b >= a1 && a1 >= a2 && a2 > 0.0))
        fail(Status::invalid_argument, "planar problem requires a1 + a2 > b >= a1 >= a2 > 0");
}

namespace {

void require_open_unit(double xhat, const char* who) {
    if (!(xhat > 0.0 && xhat < 1.0))
        fail(Status::domain_error, std::string(who) + ": xhat must lie strictly inside (0,1)");
}

void require_closed_unit(double xhat, const char* who) {
    if (!(xhat >= 0.0 && xhat <= 1.0))
        fail(Status::domain_error, std::string(who) + ": xhat must lie in [0,1]");
}

} // namespace

double min_example_exp_of_grad(double xhat) {
    require_open_unit(xhat, "min_example_exp_of_grad");
    return xhat;
}

double min_example_grad_of_exp(double xhat) {
    require_open_unit(xhat, "min_example_grad_of_exp");
    return 2.0 * xhat;
}

namespace {

// Series window around the removable 0/0 at xhat = 1/2.
constexpr double kSeriesHalfWidth = 2e-3; // in u = 2 xhat - 1

double f1_series(double u) {
    // (1-u^2)/(4u^2) * (ln(1-u)+u) = -1/8 - u/12 + u^2/16 + u^3/30 + u^4/48 + ...
    return -0.125 + u * (-1.0 / 12 + u * (1.0 / 16 + u * (1.0 / 30 + u * (1.0 / 48))));
}

double f1_prime_series(double u) {
    // derivative in xhat (= 2 d/du of the series above, continued)
    return -1.0 / 6 + u * (0.25 + u * (0.2 + u * (1.0 / 6 + u * (1.0 / 7))));
}

} // namespace

double f1(double xhat) {
    require_closed_unit(xhat, "f1");
    if (xhat == 0.0 || xhat == 1.0) return 0.0; // continuous extension
    const double u = 2.0 * xhat - 1.0;
    if (std::fabs(u) < kSeriesHalfWidth) return f1_series(u);
    return xhat * (1.0 - xhat) / (u * u) * (std::log(2.0 - 2.0 * xhat) + u);
}

double f1_prime(double xhat) {
    if (!(xhat >= 0.0 && xhat < 1.0))
        fail(Status::domain_error, "f1_prime: defined on [0,1); the derivative diverges at 1");
    const double u = 2.0 * xhat - 1.0;
    if (std::fabs(u) < kSeriesHalfWidth) return f1_prime_series(u);
    return -(std::log1p(-u) + u) / (u * u * u) - (1.0 + u) / (2.0 * u);
}

namespace {

// Adaptive Simpson with explicit error control; depth cap turns runaway
// recursion into a NonConvergence error instead of a wrong answer.
double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    if (depth > 60) fail(Status::non_convergence, "adaptive quadrature did not converge");
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return adaptive_simpson(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 0);
}

} // namespace

double f1_quadrature(double xhat) {
    require_open_unit(xhat, "f1_quadrature");
    const double odds = xhat / (1.0 - xhat);
    const auto integrand = [odds](double e) {
        if (e >= 1.0) return 0.0; // integrand vanishes in the limit e -> 1
        return 1.0 / (1.0 + odds * e / (1.0 - e));
    };
    return -integrate(integrand, 1.0 - xhat, 1.0, 1e-10);
}

double surrogate_potential_1d(const ScalarProblem1D& p, double xhat) {
    require_closed_unit(xhat, "surrogate_potential_1d");
    switch (p.regime()) {
        case ScalarProblem1D::Regime::never_violated: return 0.0;
        case ScalarProblem1D::Regime::always_violated:
            fail(Status::domain_error, "no closed form for b < 0 (always-violated regime)");
        case ScalarProblem1D::Regime::boundary_active: break;
    }
    return p.a * f1(xhat) + (p.a - p.b) * xhat;
}

double estimator_mean_1d(const ScalarProblem1D& p, double xhat) {
    require_closed_unit(xhat, "estimator_mean_1d");
    switch (p.regime()) {
        case ScalarProblem1D::Regime::never_violated: return 0.0;
        case ScalarProblem1D::Regime::always_violated:
            fail(Status::domain_error, "no closed form for b < 0 (always-violated regime)");
        case ScalarProblem1D::Regime::boundary_active: break;
    }
    return p.a * (f1_prime(xhat) + 0.5);
}

double effective_potential_1d(const ScalarProblem1D& p, double xhat) {
    require_closed_unit(xhat, "effective_potential_1d");
    switch (p.regime()) {
        case ScalarProblem1D::Regime::never_violated: return 0.0;
        case ScalarProblem1D::Regime::always_violated:
            fail(Status::domain_error, "no closed form for b < 0 (always-violated regime)");
        case ScalarProblem1D::Regime::boundary_active: break;
    }
    return p.a * (f1(xhat) + 0.5 * xhat);
}

double corrected_gradient_sample_1d(const ScalarProblem1D& p, double xhat, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        fail(Status::domain_error, "corrected_gradient_sample_1d: eps must lie in (0,1)");
    double x = xhat;
    clamp_interior(std::span<double>(&x, 1));
    const bool hard = eps >= 1.0 - x;
    const bool violated = p.a * (hard ? 1.0 : 0.0) - p.b > 0.0;
    double g = 0.0;
    if (violated) {
        const double z = sigma_inv(x) + sigma_inv(eps);
        g = p.a * sigma_prime(z) / (x * (1.0 - x));
    }
    // the boundary constant exists only when the indicator's region moves
    // with xhat, i.e. 0 < b < a
    if (p.b > 0.0 && p.b < p.a) g -= p.b - 0.5 * p.a;
    return g;
}

double minimize_scalar(const std::function<double(double)>& fn, double lo, double hi, double tol) {
    if (!(lo < hi) || !(tol > 0.0))
        fail(Status::invalid_argument, "minimize_scalar: need lo < hi and tol > 0");
    constexpr double inv_phi = 0.6180339887498949; // 1/golden ratio
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1v = fn(x1), f2v = fn(x2);
    for (int iter = 0; iter < 500; ++iter) {
        if (b - a < tol) return 0.5 * (a + b);
        if (f1v < f2v) {
            b = x2;
            x2 = x1;
            f2v = f1v;
            x1 = b - inv_phi * (b - a);
            f1v = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1v = f2v;
            x2 = a + inv_phi * (b - a);
            f2v = fn(x2);
        }
    }
    fail(Status::non_convergence, "minimize_scalar: iteration cap reached");
}

double surrogate_potential_2d(const PlanarProblem2D& p, double x1, double x2) {
    require_closed_unit(x1, "surrogate_potential_2d");
    require_closed_unit(x2, "surrogate_potential_2d");
    return x2 * p.a1 * f1(x1) + x1 * p.a2 * f1(x2) + (p.a1 + p.a2 - p.b) * x1 * x2;
}

std::array<double, 2> estimator_mean_field_2d(const PlanarProblem2D& p, double x1, double x2) {
    require_closed_unit(x1, "estimator_mean_field_2d");
    require_closed_unit(x2, "estimator_mean_field_2d");
    return {x2 * p.a1 * (0.5 + f1_prime(x1)), x1 * p.a2 * (0.5 + f1_prime(x2))};
}

double curl_2d(const PlanarProblem2D& p, double x1, double x2) {
    require_open_unit(x1, "curl_2d");
    require_open_unit(x2, "curl_2d");
    return p.a1 * (f1_prime(x1) + 0.5) - p.a2 * (f1_prime(x2) + 0.5);
}

double circulation(const PlanarField& field, double center_x, double center_y, double radius,
                   std::size_t points_per_edge) {
    if (radius < 0.0 || points_per_edge == 0)
        fail(Status::invalid_argument, "circulation: need radius >= 0 and points_per_edge >= 1");
    if (!(center_x - radius > 0.0 && center_x + radius < 1.0 && center_y - radius > 0.0 &&
          center_y + radius < 1.0))
        fail(Status::loop_outside_domain, "square loop must lie inside (0,1)^2");
    if (radius == 0.0) return 0.0;

    const double xs[4] = {center_x - radius, center_x + radius, center_x + radius,
                          center_x - radius};
    const double ys[4] = {center_y - radius, center_y - radius, center_y + radius,
                          center_y + radius};
    double total = 0.0;
    for (int edge = 0; edge < 4; ++edge) {
        const double x0 = xs[edge], y0 = ys[edge];
        const double x1 = xs[(edge + 1) % 4], y1 = ys[(edge + 1) % 4];
        const double dx = (x1 - x0) / static_cast<double>(points_per_edge);
        const double dy = (y1 - y0) / static_cast<double>(points_per_edge);
        double edge_sum = 0.0;
        for (std::size_t k = 0; k <= points_per_edge; ++k) {
            const double t = static_cast<double>(k);
            const std::array<double, 2> v = field(x0 + t * dx, y0 + t * dy);
            const double along = v[0] * dx + v[1] * dy;
            edge_sum += (k == 0 || k == points_per_edge) ? 0.5 * along : along;
        }
        total += edge_sum;
    }
    return total;
}

} // namespace brx
