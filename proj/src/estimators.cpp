#include "brx/estimators.hpp"

#include <cmath>
#include <string>

#include "brx/logistic.hpp"
#include "brx/noise.hpp"

namespace brx {

namespace {

void require_constraint(const IlpInstance& inst, std::size_t i) {
    if (i >= inst.rows())
        fail(Status::index_out_of_range,
             "constraint index " + std::to_string(i) + " out of range (m = " +
                 std::to_string(inst.rows()) + ")");
}

void require_dims(const IlpInstance& inst, const RelaxedPoint& xhat, const NoiseVector& eps) {
    if (xhat.dim() != inst.cols() || eps.dim() != inst.cols())
        fail(Status::dimension_mismatch, "point/noise dimension does not match instance");
}

// Violation indicator of the hard sample; shared by all three per-sample maps.
bool hard_violated(const IlpInstance& inst, std::size_t i, const RelaxedPoint& clamped,
                   const NoiseVector& eps) {
    double dot = 0.0;
    for (std::size_t j = 0; j < clamped.dim(); ++j)
        if (eps.eps[j] >= 1.0 - clamped.xhat[j]) dot += inst.a(i, j);
    return dot - inst.b()[i] > 0.0;
}

} // namespace

double true_violation_sample(const IlpInstance& inst, std::size_t i, const RelaxedPoint& xhat,
                             const NoiseVector& eps) {
    require_constraint(inst, i);
    require_dims(inst, xhat, eps);
    const RelaxedPoint p = clamp_interior_copy(xhat);
    double dot = 0.0;
    for (std::size_t j = 0; j < p.dim(); ++j)
        if (eps.eps[j] >= 1.0 - p.xhat[j]) dot += inst.a(i, j);
    const double slack = dot - inst.b()[i];
    return slack > 0.0 ? slack : 0.0;
}

double surrogate_violation_sample(const IlpInstance& inst, std::size_t i, const RelaxedPoint& xhat,
                                  const NoiseVector& eps) {
    require_constraint(inst, i);
    require_dims(inst, xhat, eps);
    const RelaxedPoint p = clamp_interior_copy(xhat);
    if (!hard_violated(inst, i, p, eps)) return 0.0;
    double dot = 0.0;
    for (std::size_t j = 0; j < p.dim(); ++j)
        dot += inst.a(i, j) * sigma(sigma_inv(p.xhat[j]) + sigma_inv(eps.eps[j]));
    return dot - inst.b()[i];
}

std::vector<double> pathwise_gradient_sample(const IlpInstance& inst, std::size_t i,
                                             const RelaxedPoint& xhat, const NoiseVector& eps) {
    require_constraint(inst, i);
    require_dims(inst, xhat, eps);
    const RelaxedPoint p = clamp_interior_copy(xhat);
    std::vector<double> g(p.dim(), 0.0);
    if (!hard_violated(inst, i, p, eps)) return g;
    for (std::size_t j = 0; j < p.dim(); ++j) {
        const double xj = p.xhat[j];
        const double z = sigma_inv(xj) + sigma_inv(eps.eps[j]);
        g[j] = inst.a(i, j) * sigma_prime(z) / (xj * (1.0 - xj));
    }
    return g;
}

namespace {

// Streaming mean/variance (Welford), one accumulator per component.
class RunningMoments {
  public:
    explicit RunningMoments(std::size_t dim) : mean_(dim, 0.0), m2_(dim, 0.0) {}

    void add(std::span<const double> v) {
        ++n_;
        for (std::size_t j = 0; j < mean_.size(); ++j) {
            const double delta = v[j] - mean_[j];
            mean_[j] += delta / static_cast<double>(n_);
            m2_[j] += delta * (v[j] - mean_[j]);
        }
    }

    EstimateReport report(std::uint64_t seed) const {
        EstimateReport r;
        r.mean = mean_;
        r.stderr_of_mean.resize(mean_.size());
        for (std::size_t j = 0; j < mean_.size(); ++j) {
            const double var = n_ > 1 ? m2_[j] / static_cast<double>(n_ - 1) : 0.0;
            r.stderr_of_mean[j] = std::sqrt(var / static_cast<double>(n_));
        }
        r.n = n_;
        r.seed = seed;
        return r;
    }

  private:
    std::vector<double> mean_;
    std::vector<double> m2_;
    std::size_t n_ = 0;
};

void require_samples(std::size_t n) {
    if (n < 2) fail(Status::invalid_argument, "need at least 2 samples");
}

} // namespace

EstimateReport mc_mean_scalar(const ScalarSampleFn& fn, const RelaxedPoint& xhat, std::size_t n,
                              std::uint64_t seed) {
    require_samples(n);
    const std::size_t d = xhat.dim();
    RunningMoments acc(1);
    NoiseVector eps;
    eps.eps.resize(d);
    double v;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < d; ++j)
            eps.eps[j] = NoiseStream::uniform_at(seed, static_cast<std::uint64_t>(k) * d + j);
        v = fn(xhat, eps);
        acc.add(std::span<const double>(&v, 1));
    }
    return acc.report(seed);
}

EstimateReport mc_mean_vector(const VectorSampleFn& fn, std::size_t out_dim,
                              const RelaxedPoint& xhat, std::size_t n, std::uint64_t seed) {
    require_samples(n);
    const std::size_t d = xhat.dim();
    RunningMoments acc(out_dim);
    NoiseVector eps;
    eps.eps.resize(d);
    std::vector<double> v(out_dim);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < d; ++j)
            eps.eps[j] = NoiseStream::uniform_at(seed, static_cast<std::uint64_t>(k) * d + j);
        fn(xhat, eps, v);
        acc.add(v);
    }
    return acc.report(seed);
}

namespace {

void require_fd_interior(const RelaxedPoint& xhat, double h) {
    if (!(h > 0.0)) fail(Status::invalid_argument, "finite-difference step must be positive");
    for (double v : xhat.xhat)
        if (!(v - h > 0.0 && v + h < 1.0))
            fail(Status::domain_error,
                 "xhat +- h must stay inside (0,1) for the finite-difference oracle");
}

} // namespace

EstimateReport fd_grad_of_expected_surrogate(const IlpInstance& inst, std::size_t i,
                                             const RelaxedPoint& xhat, std::size_t n,
                                             std::uint64_t seed, double h) {
    require_constraint(inst, i);
    require_samples(n);
    require_fd_interior(xhat, h);
    const std::size_t d = xhat.dim();
    RunningMoments acc(d);
    NoiseVector eps;
    eps.eps.resize(d);
    std::vector<double> q(d);
    RelaxedPoint shifted = xhat;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < d; ++j)
            eps.eps[j] = NoiseStream::uniform_at(seed, static_cast<std::uint64_t>(k) * d + j);
        for (std::size_t j = 0; j < d; ++j) {
            const double base = xhat.xhat[j];
            shifted.xhat[j] = base + h;
            const double up = surrogate_violation_sample(inst, i, shifted, eps);
            shifted.xhat[j] = base - h;
            const double down = surrogate_violation_sample(inst, i, shifted, eps);
            shifted.xhat[j] = base;
            q[j] = (up - down) / (2.0 * h);
        }
        acc.add(q);
    }
    return acc.report(seed);
}

BiasReport bias_report(const IlpInstance& inst, std::size_t i, const RelaxedPoint& xhat,
                       std::size_t n, std::uint64_t seed, double h) {
    require_constraint(inst, i);
    require_samples(n);
    require_fd_interior(xhat, h);
    const std::size_t d = xhat.dim();
    RunningMoments est(d), ora(d), gap(d);
    NoiseVector eps;
    eps.eps.resize(d);
    std::vector<double> q(d), diff(d);
    RelaxedPoint shifted = xhat;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < d; ++j)
            eps.eps[j] = NoiseStream::uniform_at(seed, static_cast<std::uint64_t>(k) * d + j);
        const std::vector<double> g = pathwise_gradient_sample(inst, i, xhat, eps);
        for (std::size_t j = 0; j < d; ++j) {
            const double base = xhat.xhat[j];
            shifted.xhat[j] = base + h;
            const double up = surrogate_violation_sample(inst, i, shifted, eps);
            shifted.xhat[j] = base - h;
            const double down = surrogate_violation_sample(inst, i, shifted, eps);
            shifted.xhat[j] = base;
            q[j] = (up - down) / (2.0 * h);
            diff[j] = g[j] - q[j];
        }
        est.add(g);
        ora.add(q);
        gap.add(diff);
    }
    return BiasReport{est.report(seed), ora.report(seed), gap.report(seed)};
}

} // namespace brx
