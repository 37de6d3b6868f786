#include "brx/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "brx/closed_forms.hpp"
#include "brx/estimators.hpp"
#include "brx/logistic.hpp"
#include "brx/noise.hpp"
#include "brx/penalty.hpp"

namespace brx {

namespace {

void validate_mu(const PenaltyConfig& cfg) {
    if (!(cfg.mu >= 0.0) || !std::isfinite(cfg.mu))
        fail(Status::invalid_argument, "mu must be finite and nonnegative");
}

void validate(const SgdConfig& s) {
    if (!(s.step_size > 0.0) || !std::isfinite(s.step_size))
        fail(Status::invalid_argument, "step_size must be positive and finite");
    if (s.steps == 0) fail(Status::invalid_argument, "steps must be positive");
    if (s.batch == 0) fail(Status::invalid_argument, "batch must be at least 1");
    if (!(s.delta > 0.0 && s.delta < 0.5))
        fail(Status::invalid_argument, "delta must lie in (0, 0.5)");
}

ScalarProblem1D scalar_problem(const IlpInstance& inst) {
    if (inst.cols() != 1 || inst.rows() != 1)
        fail(Status::domain_error, "the corrected estimator is defined for 1x1 instances only");
    return ScalarProblem1D(inst.a(0, 0), inst.b()[0]);
}

// Full-loss gradient sample c + mu * sum_i g_i(x, eps) for the two
// stochastic estimators; noise comes from an absolute stream position so
// batches are position-determined.
void full_loss_sample(const IlpInstance& inst, const PenaltyConfig& cfg, GradientKind kind,
                      const RelaxedPoint& x, const NoiseVector& eps, std::vector<double>& out) {
    const std::size_t d = inst.cols();
    for (std::size_t j = 0; j < d; ++j) out[j] = inst.c()[j];
    if (kind == GradientKind::pathwise_corrected_1d) {
        const ScalarProblem1D p = scalar_problem(inst);
        out[0] += cfg.mu * corrected_gradient_sample_1d(p, x.xhat[0], eps.eps[0]);
        return;
    }
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        const std::vector<double> g = pathwise_gradient_sample(inst, i, x, eps);
        for (std::size_t j = 0; j < d; ++j) out[j] += cfg.mu * g[j];
    }
}

} // namespace

Trajectory sgd_run(const IlpInstance& inst, const PenaltyConfig& cfg, const RelaxedPoint& x0,
                   const SgdConfig& s) {
    validate(s);
    validate_mu(cfg);
    if (x0.dim() != inst.cols())
        fail(Status::dimension_mismatch, "x0 dimension does not match instance");
    if (s.kind == GradientKind::pathwise_corrected_1d) (void)scalar_problem(inst);

    const std::size_t d = inst.cols();
    Trajectory traj;
    traj.entries.reserve(s.steps + 1);

    RelaxedPoint x = x0;
    traj.clamp_events += clamp_interior(x.xhat, s.delta);

    NoiseVector eps;
    eps.eps.resize(d);
    std::vector<double> grad(d), sample(d);

    const auto batch_gradient = [&](std::size_t step) {
        if (s.kind == GradientKind::exact_penalty) {
            const std::vector<double> pg = expected_penalty_grad_exact(inst, x);
            for (std::size_t j = 0; j < d; ++j) grad[j] = inst.c()[j] + cfg.mu * pg[j];
            return;
        }
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t r = 0; r < s.batch; ++r) {
            const std::uint64_t block =
                (static_cast<std::uint64_t>(step) * s.batch + r) * d;
            for (std::size_t j = 0; j < d; ++j)
                eps.eps[j] = NoiseStream::uniform_at(s.seed, block + j);
            full_loss_sample(inst, cfg, s.kind, x, eps, sample);
            for (std::size_t j = 0; j < d; ++j) grad[j] += sample[j];
        }
        for (std::size_t j = 0; j < d; ++j) grad[j] /= static_cast<double>(s.batch);
    };

    for (std::size_t step = 0; step < s.steps; ++step) {
        batch_gradient(step);
        traj.entries.push_back(TrajectoryEntry{step, x, grad});
        std::size_t moved = 0;
        for (std::size_t j = 0; j < d; ++j) x.xhat[j] -= s.step_size * grad[j];
        moved = clamp_interior(x.xhat, s.delta);
        traj.clamp_events += moved;
    }
    batch_gradient(s.steps); // evaluated at the terminal point, not applied
    traj.entries.push_back(TrajectoryEntry{s.steps, x, grad});

    traj.terminal_objective = inst.cols() <= kDefaultEnumerationCap
                                  ? penalized_objective(inst, x, cfg)
                                  : std::numeric_limits<double>::quiet_NaN();
    return traj;
}

EstimateReport expected_drift(const IlpInstance& inst, const PenaltyConfig& cfg,
                              const RelaxedPoint& xhat, std::size_t n, std::uint64_t seed) {
    validate_mu(cfg);
    const std::size_t d = inst.cols();
    std::vector<double> tmp(d);
    return mc_mean_vector(
        [&](const RelaxedPoint& x, const NoiseVector& eps, std::span<double> out) {
            full_loss_sample(inst, cfg, GradientKind::pathwise, x, eps, tmp);
            for (std::size_t j = 0; j < d; ++j) out[j] = tmp[j];
        },
        d, xhat, n, seed);
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    if (traj.entries.empty()) return;
    const std::size_t d = traj.entries.front().point.dim();
    os << "step";
    for (std::size_t j = 0; j < d; ++j) os << ",x" << (j + 1);
    for (std::size_t j = 0; j < d; ++j) os << ",g" << (j + 1);
    os << "\n";
    char buf[32];
    for (const TrajectoryEntry& e : traj.entries) {
        os << e.step;
        for (std::size_t j = 0; j < d; ++j) {
            std::snprintf(buf, sizeof buf, "%.12g", e.point.xhat[j]);
            os << ',' << buf;
        }
        for (std::size_t j = 0; j < d; ++j) {
            std::snprintf(buf, sizeof buf, "%.12g", e.gradient[j]);
            os << ',' << buf;
        }
        os << "\n";
    }
}

} // namespace brx
