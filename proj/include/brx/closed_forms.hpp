#pragma once

#include <array>
#include <functional>

#include "brx/types.hpp"

namespace brx {

// Closed forms for the single-constraint problems in one and two variables.
// Everything here is pure and cross-checked elsewhere against quadrature,
// finite differences, or Monte Carlo.

/// One variable, one constraint a x <= b with a > 0. The interesting regime
/// is a > b > 0 (only x = 0 feasible); b >= a makes the violation indicator
/// identically zero.
struct ScalarProblem1D {
    double a = 1.0;
    double b = 0.0;

    enum class Regime {
        boundary_active, // 0 <= b < a: indicator is 1 exactly on eps >= 1 - xhat
        never_violated,  // b >= a: indicator identically 0
        always_violated, // b < 0: indicator identically 1
    };

    ScalarProblem1D(double a_, double b_);
    Regime regime() const noexcept;
};

/// Two variables, one constraint, in the ordering a1 + a2 > b >= a1 >= a2 > 0
/// (so the only violating corner is (1,1)).
struct PlanarProblem2D {
    double a1, a2, b;

    PlanarProblem2D(double a1_, double a2_, double b_);
};

/// Minimal interchange counterexample f(xhat, eps) = 1[eps <= xhat] * xhat:
/// the mean of the per-sample derivative is xhat, ...
double min_example_exp_of_grad(double xhat);
/// ... while the derivative of the mean E[f] = xhat^2 is 2 xhat.
double min_example_grad_of_exp(double xhat);

/// f1(x) = -Integral_{1-x}^{1} de / (1 + (x/(1-x)) (e/(1-e)))
///       = x(1-x)/(2x-1)^2 * [ln(2-2x) + 2x - 1],   f1(1/2) = -1/8.
/// Extended continuously to [0,1] with f1(0) = f1(1) = 0. The quotient form
/// is 0/0 at x = 1/2 and cancels catastrophically nearby, so |2x-1| < 2e-3
/// switches to the series in u = 2x-1:
///   f1 = -1/8 - u/12 + u^2/16 + u^3/30 + u^4/48 + O(u^5)
/// (from (1-u^2)/(4u^2) * (ln(1-u)+u); coefficient of u^k is 1/(2k(k+2))
/// for k >= 2).
double f1(double xhat);

/// The defining integral by adaptive quadrature (absolute tolerance 1e-10);
/// the oracle f1 is tested against. Requires 0 < xhat < 1.
double f1_quadrature(double xhat);

/// Analytic derivative, with u = 2x-1:
///   f1'(x) = -(ln(1-u)+u)/u^3 - (1+u)/(2u),
/// series branch f1' = -1/6 + u/4 + u^2/5 + u^3/6 + u^4/7 near u = 0.
/// f1'(0) = ln 2 - 1; the derivative diverges logarithmically at x = 1
/// (DomainError there). Strictly increasing on [0,1).
double f1_prime(double xhat);

/// Expected surrogate loss:  a f1(x) + (a-b) x  in the boundary-active
/// regime; identically 0 when never violated. (DomainError for b < 0: no
/// closed form is implemented for the always-violated regime.)
double surrogate_potential_1d(const ScalarProblem1D& p, double xhat);

/// Mean of the pathwise gradient samples:  a (f1'(x) + 1/2)  in the
/// boundary-active regime (b-free there), 0 when never violated. Note this
/// differs from the derivative of surrogate_potential_1d by the boundary
/// constant b - a/2.
double estimator_mean_1d(const ScalarProblem1D& p, double xhat);

/// The potential the estimator actually descends: its derivative equals
/// estimator_mean_1d. In the boundary-active regime this is
///   surrogate_potential + (b - a/2) x  =  a (f1(x) + x/2),
/// strictly increasing on [0,1]; 0 when never violated.
double effective_potential_1d(const ScalarProblem1D& p, double xhat);

/// Pathwise gradient sample minus the boundary constant (b - a/2), applied
/// only when 0 < b < a; unchanged otherwise. Its expectation equals the
/// derivative of surrogate_potential_1d. (At b = 0 exactly, the boundary is
/// still active but no correction is applied, matching the strict-inequality
/// regime gate.)
double corrected_gradient_sample_1d(const ScalarProblem1D& p, double xhat, double eps);

/// Golden-section minimizer for a unimodal function on [lo, hi]; returns the
/// abscissa to absolute tolerance tol. NonConvergence after the iteration
/// cap.
double minimize_scalar(const std::function<double(double)>& fn, double lo, double hi, double tol);

/// Expected surrogate in two variables:
///   x2 a1 f1(x1) + x1 a2 f1(x2) + (a1 + a2 - b) x1 x2.
double surrogate_potential_2d(const PlanarProblem2D& p, double x1, double x2);

/// Mean pathwise-gradient field:
///   ( x2 a1 (1/2 + f1'(x1)),  x1 a2 (1/2 + f1'(x2)) ).
/// Nonnegative component-wise; vanishes only on the axes.
std::array<double, 2> estimator_mean_field_2d(const PlanarProblem2D& p, double x1, double x2);

/// Scalar curl of that field, convention d g1 / d x2 - d g2 / d x1:
///   a1 (f1'(x1) + 1/2) - a2 (f1'(x2) + 1/2).
/// With this convention the counterclockwise loop integral satisfies
/// circulation = -Integral(curl); nonzero almost everywhere, so the field
/// has no absolutely continuous potential.
double curl_2d(const PlanarProblem2D& p, double x1, double x2);

using PlanarField = std::function<std::array<double, 2>(double, double)>;

/// Composite-trapezoid line integral of a field around the axis-aligned
/// square loop of the given center and half-side, counterclockwise, with
/// points_per_edge segments per edge (O(1/n^2) error). The loop must lie
/// inside (0,1)^2 (LoopOutsideDomain otherwise); radius 0 yields 0.
double circulation(const PlanarField& field, double center_x, double center_y, double radius,
                   std::size_t points_per_edge);

} // namespace brx
