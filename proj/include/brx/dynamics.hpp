#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "brx/types.hpp"

namespace brx {

/// Which per-sample gradient drives the iteration.
enum class GradientKind : int {
    pathwise = 0,           // the biased reparameterization estimator
    pathwise_corrected_1d = 1, // pathwise minus the 1D boundary constant (d = m = 1 only)
    exact_penalty = 2,      // deterministic gradient of the exact expected penalty
};

struct SgdConfig {
    double step_size = 0.05;
    std::size_t steps = 2000;
    std::size_t batch = 32; // averages the heavy-tailed factor near the box edge
    double delta = kInteriorDelta; // projection box [delta, 1-delta]
    std::uint64_t seed = 0;
    GradientKind kind = GradientKind::pathwise;
};

struct TrajectoryEntry {
    std::size_t step;
    RelaxedPoint point;
    std::vector<double> gradient; // full-loss gradient evaluated at point
};

/// steps+1 entries; entry k holds the iterate after k updates together with
/// the batch gradient evaluated there (the last entry's gradient is
/// evaluated but not applied). Every point lies in [delta, 1-delta]^d.
struct Trajectory {
    std::vector<TrajectoryEntry> entries;
    double terminal_objective = 0.0; // exact penalized objective; NaN if d > cap
    std::size_t clamp_events = 0;    // iterates that had to be projected

    const RelaxedPoint& terminal_point() const { return entries.back().point; }
};

/// Projected stochastic gradient iteration
///   x <- clamp(x - eta * (c + mu * sum_i g_i(x, eps)), delta, 1-delta)
/// with fresh position-determined noise blocks each step; bit-reproducible
/// per seed. exact_penalty ignores batch/noise and requires d <= cap;
/// pathwise_corrected_1d requires a 1x1 instance.
Trajectory sgd_run(const IlpInstance& inst, const PenaltyConfig& cfg, const RelaxedPoint& x0,
                   const SgdConfig& s);

/// Monte-Carlo mean of the full-loss gradient c + mu * sum_i g_i at xhat.
EstimateReport expected_drift(const IlpInstance& inst, const PenaltyConfig& cfg,
                              const RelaxedPoint& xhat, std::size_t n, std::uint64_t seed);

/// One-line header then "step,x1..xd,g1..gd" rows, 12 significant digits.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

} // namespace brx
