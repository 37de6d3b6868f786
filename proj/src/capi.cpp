#include "brx.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "brx/closed_forms.hpp"
#include "brx/dynamics.hpp"
#include "brx/error.hpp"
#include "brx/estimators.hpp"
#include "brx/ilp.hpp"
#include "brx/logistic.hpp"
#include "brx/noise.hpp"
#include "brx/penalty.hpp"

struct brx_instance {
    brx::IlpInstance impl;
};

struct brx_solve_report {
    brx::SolveReport impl;
};

struct brx_trajectory {
    brx::Trajectory impl;
};

namespace {

thread_local std::string g_last_error;

brx_status to_status(brx::Status s) { return static_cast<brx_status>(static_cast<int>(s)); }

brx_status set_error(brx::Status s, const char* what) {
    g_last_error = what;
    return to_status(s);
}

// Every C entry point funnels through this: exceptions become status codes,
// successes clear the thread-local detail.
template <class Fn>
brx_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return BRX_OK;
    } catch (const brx::Error& e) {
        return set_error(e.status(), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(brx::Status::invalid_argument, "out of memory");
    } catch (const std::exception& e) {
        return set_error(brx::Status::invalid_argument, e.what());
    } catch (...) {
        return set_error(brx::Status::invalid_argument, "unknown error");
    }
}

void require(bool ok, const char* what) {
    if (!ok) brx::fail(brx::Status::invalid_argument, what);
}

brx::RelaxedPoint make_point(const double* xhat, std::size_t d) {
    require(xhat != nullptr, "xhat must not be NULL");
    brx::RelaxedPoint p;
    p.xhat.assign(xhat, xhat + d);
    return p;
}

brx::NoiseVector make_noise(const double* eps, std::size_t d) {
    require(eps != nullptr, "eps must not be NULL");
    brx::NoiseVector v;
    v.eps.assign(eps, eps + d);
    return v;
}

void copy_out(const std::vector<double>& src, double* dst) {
    if (dst) std::memcpy(dst, src.data(), src.size() * sizeof(double));
}

} // namespace

extern "C" {

const char* brx_status_name(brx_status s) {
    return brx::status_name(static_cast<brx::Status>(static_cast<int>(s)));
}

const char* brx_last_error_detail(void) { return g_last_error.c_str(); }

const char* brx_version(void) { return "1.0.0"; }

/* ---------- instances ---------- */

brx_status brx_instance_create(const double* a, const double* b, const double* c, size_t m,
                               size_t d, brx_instance** out) {
    return guarded([&] {
        require(a && b && c && out, "arrays and out must not be NULL");
        std::vector<std::vector<double>> rows(m);
        for (size_t i = 0; i < m; ++i) rows[i].assign(a + i * d, a + (i + 1) * d);
        *out = new brx_instance{
            brx::IlpInstance(std::move(rows), std::vector<double>(b, b + m),
                             std::vector<double>(c, c + d))};
    });
}

brx_status brx_instance_from_json(const char* text, brx_instance** out) {
    return guarded([&] {
        require(text && out, "text and out must not be NULL");
        *out = new brx_instance{brx::parse_instance_json(text)};
    });
}

brx_status brx_instance_from_json_file(const char* path, brx_instance** out) {
    return guarded([&] {
        require(path && out, "path and out must not be NULL");
        *out = new brx_instance{brx::load_instance_file(path)};
    });
}

void brx_instance_free(brx_instance* inst) { delete inst; }

size_t brx_instance_rows(const brx_instance* inst) { return inst ? inst->impl.rows() : 0; }

size_t brx_instance_cols(const brx_instance* inst) { return inst ? inst->impl.cols() : 0; }

brx_status brx_instance_coefficient(const brx_instance* inst, size_t row, size_t col,
                                    double* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        if (row >= inst->impl.rows() || col >= inst->impl.cols())
            brx::fail(brx::Status::index_out_of_range, "coefficient index out of range");
        *out = inst->impl.a(row, col);
    });
}

brx_status brx_instance_bound(const brx_instance* inst, size_t row, double* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        if (row >= inst->impl.rows())
            brx::fail(brx::Status::index_out_of_range, "bound index out of range");
        *out = inst->impl.b()[row];
    });
}

brx_status brx_instance_objective(const brx_instance* inst, size_t col, double* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        if (col >= inst->impl.cols())
            brx::fail(brx::Status::index_out_of_range, "objective index out of range");
        *out = inst->impl.c()[col];
    });
}

/* ---------- exhaustive solving ---------- */

brx_status brx_enumerate_solve(const brx_instance* inst, brx_solve_report** out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        *out = new brx_solve_report{brx::enumerate_solve(inst->impl)};
    });
}

void brx_solve_report_free(brx_solve_report* r) { delete r; }

int brx_solve_report_feasible(const brx_solve_report* r) {
    return (r && r->impl.feasible) ? 1 : 0;
}

double brx_solve_report_value(const brx_solve_report* r) { return r ? r->impl.optimal_value : 0; }

size_t brx_solve_report_count(const brx_solve_report* r) {
    return r ? r->impl.optimal_set.size() : 0;
}

brx_status brx_solve_report_point(const brx_solve_report* r, size_t k, uint8_t* x) {
    return guarded([&] {
        require(r && x, "report and x must not be NULL");
        if (k >= r->impl.optimal_set.size())
            brx::fail(brx::Status::index_out_of_range, "optimal-set index out of range");
        const auto& pt = r->impl.optimal_set[k].x;
        std::memcpy(x, pt.data(), pt.size());
    });
}

brx_status brx_is_feasible_corner(const brx_instance* inst, const uint8_t* x, size_t d,
                                  int* out) {
    return guarded([&] {
        require(inst && x && out, "inst, x and out must not be NULL");
        brx::BinaryPoint p;
        p.x.assign(x, x + d);
        *out = brx::is_feasible_corner(inst->impl, p) ? 1 : 0;
    });
}

brx_status brx_mu_threshold(const brx_instance* inst, double* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        *out = brx::mu_threshold(inst->impl);
    });
}

/* ---------- exact expected penalty ---------- */

brx_status brx_expected_penalty(const brx_instance* inst, const double* xhat, double* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        copy_out(brx::expected_penalty_exact(inst->impl, make_point(xhat, inst->impl.cols())),
                 out);
    });
}

brx_status brx_expected_penalty_grad(const brx_instance* inst, const double* xhat, double* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        copy_out(
            brx::expected_penalty_grad_exact(inst->impl, make_point(xhat, inst->impl.cols())),
            out);
    });
}

brx_status brx_penalized_objective(const brx_instance* inst, const double* xhat, double mu,
                                   double* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        *out = brx::penalized_objective(inst->impl, make_point(xhat, inst->impl.cols()),
                                        brx::PenaltyConfig{mu});
    });
}

brx_status brx_grid_argmin_penalized(const brx_instance* inst, double mu, size_t resolution,
                                     double** points, size_t* count) {
    return guarded([&] {
        require(inst && points && count, "inst, points and count must not be NULL");
        const auto argmin =
            brx::grid_argmin_penalized(inst->impl, brx::PenaltyConfig{mu}, resolution);
        const size_t d = inst->impl.cols();
        double* flat = new double[argmin.size() * d];
        for (size_t k = 0; k < argmin.size(); ++k)
            std::memcpy(flat + k * d, argmin[k].xhat.data(), d * sizeof(double));
        *points = flat;
        *count = argmin.size();
    });
}

void brx_buffer_free(double* p) { delete[] p; }

brx_status brx_verify_binary_equivalence(const brx_instance* inst, size_t resolution, int* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        *out = brx::verify_binary_equivalence(inst->impl, resolution) ? 1 : 0;
    });
}

/* ---------- logistic reparameterization ---------- */

double brx_sigma(double z) { return brx::sigma(z); }

brx_status brx_sigma_inv(double p, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = brx::sigma_inv(p);
    });
}

brx_status brx_sample_noise(uint64_t seed, uint64_t start, size_t d, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        for (size_t j = 0; j < d; ++j) out[j] = brx::NoiseStream::uniform_at(seed, start + j);
    });
}

brx_status brx_hard_threshold(const double* xhat, const double* eps, size_t d, uint8_t* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        const brx::BinaryPoint p = brx::hard_threshold(make_point(xhat, d), make_noise(eps, d));
        std::memcpy(out, p.x.data(), d);
    });
}

brx_status brx_soft_relax(const double* xhat, const double* eps, size_t d, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        copy_out(brx::soft_relax(make_point(xhat, d), make_noise(eps, d)), out);
    });
}

/* ---------- per-sample losses and Monte Carlo ---------- */

brx_status brx_true_violation(const brx_instance* inst, size_t i, const double* xhat,
                              const double* eps, double* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        const size_t d = inst->impl.cols();
        *out = brx::true_violation_sample(inst->impl, i, make_point(xhat, d), make_noise(eps, d));
    });
}

brx_status brx_surrogate_violation(const brx_instance* inst, size_t i, const double* xhat,
                                   const double* eps, double* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        const size_t d = inst->impl.cols();
        *out = brx::surrogate_violation_sample(inst->impl, i, make_point(xhat, d),
                                               make_noise(eps, d));
    });
}

brx_status brx_pathwise_gradient(const brx_instance* inst, size_t i, const double* xhat,
                                 const double* eps, double* out) {
    return guarded([&] {
        require(inst && out, "inst and out must not be NULL");
        const size_t d = inst->impl.cols();
        copy_out(brx::pathwise_gradient_sample(inst->impl, i, make_point(xhat, d),
                                               make_noise(eps, d)),
                 out);
    });
}

brx_status brx_mc_true_violation(const brx_instance* inst, size_t i, const double* xhat, size_t n,
                                 uint64_t seed, double* mean, double* stderr_) {
    return guarded([&] {
        require(inst != nullptr, "inst must not be NULL");
        const auto r = brx::mc_mean_scalar(
            [&](const brx::RelaxedPoint& x, const brx::NoiseVector& e) {
                return brx::true_violation_sample(inst->impl, i, x, e);
            },
            make_point(xhat, inst->impl.cols()), n, seed);
        if (mean) *mean = r.mean[0];
        if (stderr_) *stderr_ = r.stderr_of_mean[0];
    });
}

brx_status brx_mc_surrogate_violation(const brx_instance* inst, size_t i, const double* xhat,
                                      size_t n, uint64_t seed, double* mean, double* stderr_) {
    return guarded([&] {
        require(inst != nullptr, "inst must not be NULL");
        const auto r = brx::mc_mean_scalar(
            [&](const brx::RelaxedPoint& x, const brx::NoiseVector& e) {
                return brx::surrogate_violation_sample(inst->impl, i, x, e);
            },
            make_point(xhat, inst->impl.cols()), n, seed);
        if (mean) *mean = r.mean[0];
        if (stderr_) *stderr_ = r.stderr_of_mean[0];
    });
}

brx_status brx_mc_pathwise_gradient(const brx_instance* inst, size_t i, const double* xhat,
                                    size_t n, uint64_t seed, double* mean, double* stderr_) {
    return guarded([&] {
        require(inst != nullptr, "inst must not be NULL");
        const size_t d = inst->impl.cols();
        const auto r = brx::mc_mean_vector(
            [&](const brx::RelaxedPoint& x, const brx::NoiseVector& e, std::span<double> out) {
                const std::vector<double> g = brx::pathwise_gradient_sample(inst->impl, i, x, e);
                for (size_t j = 0; j < d; ++j) out[j] = g[j];
            },
            d, make_point(xhat, d), n, seed);
        copy_out(r.mean, mean);
        copy_out(r.stderr_of_mean, stderr_);
    });
}

brx_status brx_fd_surrogate_gradient(const brx_instance* inst, size_t i, const double* xhat,
                                     size_t n, uint64_t seed, double h, double* grad,
                                     double* stderr_) {
    return guarded([&] {
        require(inst != nullptr, "inst must not be NULL");
        const auto r = brx::fd_grad_of_expected_surrogate(
            inst->impl, i, make_point(xhat, inst->impl.cols()), n, seed, h);
        copy_out(r.mean, grad);
        copy_out(r.stderr_of_mean, stderr_);
    });
}

brx_status brx_bias_report(const brx_instance* inst, size_t i, const double* xhat, size_t n,
                           uint64_t seed, double h, double* estimator_mean,
                           double* estimator_stderr, double* oracle_grad, double* oracle_stderr,
                           double* gap, double* gap_stderr) {
    return guarded([&] {
        require(inst != nullptr, "inst must not be NULL");
        const auto r =
            brx::bias_report(inst->impl, i, make_point(xhat, inst->impl.cols()), n, seed, h);
        copy_out(r.estimator.mean, estimator_mean);
        copy_out(r.estimator.stderr_of_mean, estimator_stderr);
        copy_out(r.oracle.mean, oracle_grad);
        copy_out(r.oracle.stderr_of_mean, oracle_stderr);
        copy_out(r.gap.mean, gap);
        copy_out(r.gap.stderr_of_mean, gap_stderr);
    });
}

/* ---------- closed forms ---------- */

brx_status brx_f1(double xhat, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = brx::f1(xhat);
    });
}

brx_status brx_f1_quadrature(double xhat, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = brx::f1_quadrature(xhat);
    });
}

brx_status brx_f1_prime(double xhat, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = brx::f1_prime(xhat);
    });
}

brx_status brx_potential_1d(double a, double b, double xhat, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = brx::surrogate_potential_1d(brx::ScalarProblem1D(a, b), xhat);
    });
}

brx_status brx_estimator_mean_1d(double a, double b, double xhat, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = brx::estimator_mean_1d(brx::ScalarProblem1D(a, b), xhat);
    });
}

brx_status brx_effective_potential_1d(double a, double b, double xhat, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = brx::effective_potential_1d(brx::ScalarProblem1D(a, b), xhat);
    });
}

brx_status brx_corrected_gradient_1d(double a, double b, double xhat, double eps, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = brx::corrected_gradient_sample_1d(brx::ScalarProblem1D(a, b), xhat, eps);
    });
}

brx_status brx_potential_minimizer_1d(double a, double b, double tol, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        const brx::ScalarProblem1D p(a, b);
        *out = brx::minimize_scalar([&](double x) { return brx::surrogate_potential_1d(p, x); },
                                    0.0, 1.0, tol);
    });
}

brx_status brx_potential_2d(double a1, double a2, double b, double x1, double x2, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = brx::surrogate_potential_2d(brx::PlanarProblem2D(a1, a2, b), x1, x2);
    });
}

brx_status brx_estimator_mean_field_2d(double a1, double a2, double b, double x1, double x2,
                                       double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        const auto g = brx::estimator_mean_field_2d(brx::PlanarProblem2D(a1, a2, b), x1, x2);
        out[0] = g[0];
        out[1] = g[1];
    });
}

brx_status brx_curl_2d(double a1, double a2, double b, double x1, double x2, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = brx::curl_2d(brx::PlanarProblem2D(a1, a2, b), x1, x2);
    });
}

brx_status brx_circulation_2d(double a1, double a2, double b, brx_field_kind field,
                              double center_x, double center_y, double radius,
                              size_t points_per_edge, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        const brx::PlanarProblem2D p(a1, a2, b);
        brx::PlanarField f;
        if (field == BRX_FIELD_ESTIMATOR_MEAN) {
            f = [p](double x1, double x2) { return brx::estimator_mean_field_2d(p, x1, x2); };
        } else if (field == BRX_FIELD_POTENTIAL_GRADIENT) {
            const double h = 1e-6;
            f = [p, h](double x1, double x2) {
                return std::array<double, 2>{
                    (brx::surrogate_potential_2d(p, x1 + h, x2) -
                     brx::surrogate_potential_2d(p, x1 - h, x2)) /
                        (2 * h),
                    (brx::surrogate_potential_2d(p, x1, x2 + h) -
                     brx::surrogate_potential_2d(p, x1, x2 - h)) /
                        (2 * h)};
            };
        } else {
            brx::fail(brx::Status::invalid_argument, "unknown field kind");
        }
        *out = brx::circulation(f, center_x, center_y, radius, points_per_edge);
    });
}

/* ---------- stochastic gradient dynamics ---------- */

brx_status brx_sgd_run(const brx_instance* inst, double mu, const double* x0,
                       const brx_sgd_config* cfg, brx_trajectory** out) {
    return guarded([&] {
        require(inst && cfg && out, "inst, cfg and out must not be NULL");
        brx::SgdConfig s;
        s.step_size = cfg->step_size;
        s.steps = cfg->steps;
        s.batch = cfg->batch;
        s.delta = cfg->delta;
        s.seed = cfg->seed;
        s.kind = static_cast<brx::GradientKind>(static_cast<int>(cfg->estimator));
        *out = new brx_trajectory{brx::sgd_run(inst->impl, brx::PenaltyConfig{mu},
                                               make_point(x0, inst->impl.cols()), s)};
    });
}

void brx_trajectory_free(brx_trajectory* t) { delete t; }

size_t brx_trajectory_length(const brx_trajectory* t) { return t ? t->impl.entries.size() : 0; }

brx_status brx_trajectory_entry(const brx_trajectory* t, size_t k, size_t* step, double* point,
                                double* gradient) {
    return guarded([&] {
        require(t != nullptr, "trajectory must not be NULL");
        if (k >= t->impl.entries.size())
            brx::fail(brx::Status::index_out_of_range, "trajectory index out of range");
        const auto& e = t->impl.entries[k];
        if (step) *step = e.step;
        copy_out(e.point.xhat, point);
        copy_out(e.gradient, gradient);
    });
}

brx_status brx_trajectory_terminal(const brx_trajectory* t, double* point) {
    return guarded([&] {
        require(t && point, "trajectory and point must not be NULL");
        copy_out(t->impl.terminal_point().xhat, point);
    });
}

double brx_trajectory_terminal_objective(const brx_trajectory* t) {
    return t ? t->impl.terminal_objective : 0.0;
}

brx_status brx_trajectory_save_csv(const brx_trajectory* t, const char* path) {
    return guarded([&] {
        require(t && path, "trajectory and path must not be NULL");
        std::ofstream os(path);
        if (!os) brx::fail(brx::Status::invalid_argument,
                           std::string("cannot open for writing: ") + path);
        brx::write_trajectory_csv(t->impl, os);
        if (!os.good()) brx::fail(brx::Status::invalid_argument, "write failed");
    });
}

brx_status brx_expected_drift(const brx_instance* inst, double mu, const double* xhat, size_t n,
                              uint64_t seed, double* mean, double* stderr_) {
    return guarded([&] {
        require(inst != nullptr, "inst must not be NULL");
        const auto r = brx::expected_drift(inst->impl, brx::PenaltyConfig{mu},
                                           make_point(xhat, inst->impl.cols()), n, seed);
        copy_out(r.mean, mean);
        copy_out(r.stderr_of_mean, stderr_);
    });
}

} /* extern "C" */
