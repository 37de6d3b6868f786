#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "brx/types.hpp"

namespace brx {

// Per-sample losses for constraint i at a relaxed point xhat and noise eps.
// Both gate on the HARD sample's violation indicator; they differ in the
// value they multiply it with, and that difference is the whole point of
// the diagnostics below.

/// True per-sample violation: with x = hard_threshold(xhat, eps),
/// returns max(a_i.x - b_i, 0). Its xhat-derivative is 0 almost everywhere.
double true_violation_sample(const IlpInstance& inst, std::size_t i, const RelaxedPoint& xhat,
                             const NoiseVector& eps);

/// Surrogate per-sample loss: indicator[a_i.hard - b_i > 0] times
/// (a_i.soft - b_i), where soft is the sigmoid-relaxed sample. The indicator
/// uses the hard sample, the value uses the soft one; the result can be
/// negative.
double surrogate_violation_sample(const IlpInstance& inst, std::size_t i, const RelaxedPoint& xhat,
                                  const NoiseVector& eps);

/// Pathwise gradient sample: component j is
///   indicator[a_i.hard - b_i > 0] * a_ij * sigma'(z_j) / (xhat_j (1-xhat_j)),
/// z_j = sigma_inv(xhat_j) + sigma_inv(eps_j). Equals the true gradient of
/// surrogate_violation_sample wherever the indicator is locally constant;
/// its expectation is NOT the gradient of the expected surrogate.
std::vector<double> pathwise_gradient_sample(const IlpInstance& inst, std::size_t i,
                                             const RelaxedPoint& xhat, const NoiseVector& eps);

using ScalarSampleFn = std::function<double(const RelaxedPoint&, const NoiseVector&)>;
using VectorSampleFn =
    std::function<void(const RelaxedPoint&, const NoiseVector&, std::span<double>)>;

/// Monte-Carlo mean of a per-sample scalar map. Sample k consumes the k-th
/// d-sized noise block of the seeded stream, independent of xhat (common
/// random numbers). Requires n >= 2.
EstimateReport mc_mean_scalar(const ScalarSampleFn& fn, const RelaxedPoint& xhat, std::size_t n,
                              std::uint64_t seed);

/// Vector counterpart; fn writes out_dim components per sample.
EstimateReport mc_mean_vector(const VectorSampleFn& fn, std::size_t out_dim,
                              const RelaxedPoint& xhat, std::size_t n, std::uint64_t seed);

/// Central-difference oracle for the gradient of the EXPECTED surrogate,
/// component-wise, with the identical noise block at every evaluation point.
/// The reported stderr is that of the per-sample difference quotients, which
/// is the right CRN figure (the quotient spikes to O(1/h) on the O(h)-mass
/// set of samples whose indicator flips). Throws DomainError when
/// xhat_j +- h leaves (0,1).
EstimateReport fd_grad_of_expected_surrogate(const IlpInstance& inst, std::size_t i,
                                             const RelaxedPoint& xhat, std::size_t n,
                                             std::uint64_t seed, double h = 1e-3);

/// Paired comparison of the pathwise estimator against the oracle above,
/// one noise stream for both, so gap stderr comes from per-sample
/// differences.
struct BiasReport {
    EstimateReport estimator; // mean of pathwise gradient samples
    EstimateReport oracle;    // CRN finite differences of the expected surrogate
    EstimateReport gap;       // estimator - oracle, per sample
};

BiasReport bias_report(const IlpInstance& inst, std::size_t i, const RelaxedPoint& xhat,
                       std::size_t n, std::uint64_t seed, double h = 1e-3);

} // namespace brx
