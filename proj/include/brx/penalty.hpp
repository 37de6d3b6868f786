#pragma once

#include <vector>

#include "brx/types.hpp"

namespace brx {

/// Probability of the corner x under the product Bernoulli at xhat:
/// prod_j xhat_j^{x_j} (1-xhat_j)^{1-x_j}. Weights over all corners sum to 1.
double bernoulli_weight(const RelaxedPoint& xhat, const BinaryPoint& x);

/// Exact per-constraint expected violation
///   Phi_i(xhat) = sum_corners weight * max(a_i.x - b_i, 0),
/// by full enumeration. Each component is >= 0.
std::vector<double> expected_penalty_exact(const IlpInstance& inst, const RelaxedPoint& xhat,
                                           std::size_t cap = kDefaultEnumerationCap);

/// Exact gradient of sum_i Phi_i via the conditional-difference identity
///   d/dxhat_k E[h] = E[h | x_k = 1] - E[h | x_k = 0],
/// which avoids dividing by xhat(1-xhat) and stays exact on the boundary.
std::vector<double> expected_penalty_grad_exact(const IlpInstance& inst, const RelaxedPoint& xhat,
                                                std::size_t cap = kDefaultEnumerationCap);

/// c . xhat + mu * sum_i Phi_i(xhat).
double penalized_objective(const IlpInstance& inst, const RelaxedPoint& xhat,
                           const PenaltyConfig& cfg, std::size_t cap = kDefaultEnumerationCap);

/// All grid points attaining the grid minimum of the penalized objective
/// within absolute tie tolerance 1e-9. The grid has resolution points per
/// axis over [0,1] (endpoints included). Requires d <= 4 and a grid of at
/// most ~5e7 points, else GridTooLarge.
std::vector<RelaxedPoint> grid_argmin_penalized(const IlpInstance& inst, const PenaltyConfig& cfg,
                                                std::size_t resolution);

/// True iff the binary points among the zero-penalty grid minimizers of
/// c . xhat equal the enumerated optimal set (zero-penalty test:
/// sum_i Phi_i < 1e-12). Throws InfeasibleInstance when no corner is
/// feasible. Requires d <= 4.
bool verify_binary_equivalence(const IlpInstance& inst, std::size_t resolution);

/// Tie tolerance used by the grid scans.
inline constexpr double kGridTieTolerance = 1e-9;
/// Zero-penalty tolerance for exact enumeration sums.
inline constexpr double kZeroPenaltyTolerance = 1e-12;

} // namespace brx
