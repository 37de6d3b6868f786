#pragma once

#include <cstddef>
#include <span>

#include "brx/types.hpp"

namespace brx {

/// Standard logistic CDF 1/(1+e^-z), computed branch-wise so that large |z|
/// neither overflows nor loses precision. Underflows to exact 0 only beyond
/// z ~ -745 (the subnormal floor).
double sigma(double z);

/// Logistic quantile log(p/(1-p)). Throws DomainError unless 0 < p < 1.
double sigma_inv(double p);

/// sigma'(z) = sigma(z) * (1 - sigma(z)), evaluated stably.
double sigma_prime(double z);

/// Clamp every coordinate into [delta, 1-delta]; returns how many moved.
std::size_t clamp_interior(std::span<double> xhat, double delta = kInteriorDelta);

/// Clamped copy of a relaxed point. clamped_count, when non-null, records
/// how many coordinates had to move.
RelaxedPoint clamp_interior_copy(const RelaxedPoint& xhat, double delta = kInteriorDelta,
                                 std::size_t* clamped_count = nullptr);

/// Hard sample: x_j = 1 iff sigma_inv(xhat_j) + sigma_inv(eps_j) >= 0,
/// implemented through the equivalent threshold eps_j >= 1 - xhat_j
/// (the tie maps to 1). Distributed as the product Bernoulli at xhat.
BinaryPoint hard_threshold(const RelaxedPoint& xhat, const NoiseVector& eps,
                           std::size_t* clamped_count = nullptr);

/// Soft sample: component-wise sigma(sigma_inv(xhat_j) + sigma_inv(eps_j)).
/// Equals xe/(xe + (1-x)(1-e)) exactly; strictly increasing in both
/// arguments. Values can round to exactly 0 or 1 once |z| exceeds ~37.
std::vector<double> soft_relax(const RelaxedPoint& xhat, const NoiseVector& eps,
                               std::size_t* clamped_count = nullptr);

} // namespace brx
