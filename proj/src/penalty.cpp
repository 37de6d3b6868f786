#include "brx/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "brx/ilp.hpp"

namespace brx {

namespace {

void require_box(const RelaxedPoint& xhat) {
    for (double v : xhat.xhat)
        if (!(v >= 0.0 && v <= 1.0))
            fail(Status::domain_error, "relaxed point coordinates must lie in [0,1]");
}

void require_dim(const IlpInstance& inst, const RelaxedPoint& xhat) {
    if (xhat.dim() != inst.cols())
        fail(Status::dimension_mismatch, "relaxed point dimension does not match instance");
}

inline void corner_from_mask(std::uint64_t mask, std::size_t d, std::vector<std::uint8_t>& x) {
    for (std::size_t j = 0; j < d; ++j) x[j] = static_cast<std::uint8_t>((mask >> (d - 1 - j)) & 1u);
}

inline double hinge(double v) { return v > 0.0 ? v : 0.0; }

} // namespace

double bernoulli_weight(const RelaxedPoint& xhat, const BinaryPoint& x) {
    if (xhat.dim() != x.x.size())
        fail(Status::dimension_mismatch, "relaxed point and corner dimensions differ");
    require_box(xhat);
    double w = 1.0;
    for (std::size_t j = 0; j < xhat.dim(); ++j) {
        if (x.x[j] > 1) fail(Status::invalid_argument, "corner coordinates must be 0 or 1");
        w *= x.x[j] ? xhat.xhat[j] : 1.0 - xhat.xhat[j];
    }
    return w;
}

std::vector<double> expected_penalty_exact(const IlpInstance& inst, const RelaxedPoint& xhat,
                                           std::size_t cap) {
    inst.require_enumerable(cap);
    require_dim(inst, xhat);
    require_box(xhat);
    const std::size_t d = inst.cols();
    const std::uint64_t corners = std::uint64_t{1} << d;

    std::vector<double> phi(inst.rows(), 0.0);
    std::vector<std::uint8_t> x(d);
    for (std::uint64_t mask = 0; mask < corners; ++mask) {
        corner_from_mask(mask, d, x);
        double w = 1.0;
        for (std::size_t j = 0; j < d; ++j) w *= x[j] ? xhat.xhat[j] : 1.0 - xhat.xhat[j];
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < inst.rows(); ++i)
            phi[i] += w * hinge(inst.row_dot(i, x) - inst.b()[i]);
    }
    return phi;
}

std::vector<double> expected_penalty_grad_exact(const IlpInstance& inst, const RelaxedPoint& xhat,
                                                std::size_t cap) {
    inst.require_enumerable(cap);
    require_dim(inst, xhat);
    require_box(xhat);
    const std::size_t d = inst.cols();
    const std::uint64_t corners = std::uint64_t{1} << d;

    // d/dxhat_k E[h] = E[h | x_k = 1] - E[h | x_k = 0]: accumulate each
    // corner's h with the weight over the other coordinates, signed by x_k.
    std::vector<double> grad(d, 0.0);
    std::vector<std::uint8_t> x(d);
    std::vector<double> prefix(d), suffix(d);
    for (std::uint64_t mask = 0; mask < corners; ++mask) {
        corner_from_mask(mask, d, x);
        double h = 0.0;
        for (std::size_t i = 0; i < inst.rows(); ++i)
            h += hinge(inst.row_dot(i, x) - inst.b()[i]);
        if (h == 0.0) continue;
        prefix[0] = 1.0;
        for (std::size_t j = 0; j + 1 < d; ++j)
            prefix[j + 1] = prefix[j] * (x[j] ? xhat.xhat[j] : 1.0 - xhat.xhat[j]);
        suffix[d - 1] = 1.0;
        for (std::size_t j = d - 1; j > 0; --j)
            suffix[j - 1] = suffix[j] * (x[j] ? xhat.xhat[j] : 1.0 - xhat.xhat[j]);
        for (std::size_t k = 0; k < d; ++k)
            grad[k] += (x[k] ? 1.0 : -1.0) * prefix[k] * suffix[k] * h;
    }
    return grad;
}

double penalized_objective(const IlpInstance& inst, const RelaxedPoint& xhat,
                           const PenaltyConfig& cfg, std::size_t cap) {
    if (!(cfg.mu >= 0.0) || !std::isfinite(cfg.mu))
        fail(Status::invalid_argument, "mu must be finite and nonnegative");
    const std::vector<double> phi = expected_penalty_exact(inst, xhat, cap);
    double obj = 0.0;
    for (std::size_t j = 0; j < inst.cols(); ++j) obj += inst.c()[j] * xhat.xhat[j];
    for (double p : phi) obj += cfg.mu * p;
    return obj;
}

namespace {

constexpr std::size_t kGridDimCap = 4;
constexpr double kGridPointCap = 5e7;

// Visit every point of the resolution^d grid over [0,1]^d (endpoints exact)
// in row-major order.
template <class Visitor>
void scan_grid(std::size_t d, std::size_t resolution, Visitor&& visit) {
    if (d > kGridDimCap)
        fail(Status::grid_too_large, "grid scan supports d <= " + std::to_string(kGridDimCap));
    if (resolution < 2) fail(Status::invalid_argument, "resolution must be at least 2");
    double total = 1.0;
    for (std::size_t j = 0; j < d; ++j) total *= static_cast<double>(resolution);
    if (total > kGridPointCap) fail(Status::grid_too_large, "grid has too many points");

    std::vector<std::size_t> idx(d, 0);
    RelaxedPoint p;
    p.xhat.assign(d, 0.0);
    const double step = 1.0 / static_cast<double>(resolution - 1);
    for (;;) {
        for (std::size_t j = 0; j < d; ++j)
            p.xhat[j] =
                (idx[j] == resolution - 1) ? 1.0 : static_cast<double>(idx[j]) * step;
        visit(p);
        std::size_t j = d;
        while (true) {
            if (j == 0) return;
            --j;
            if (++idx[j] < resolution) break;
            idx[j] = 0;
        }
    }
}

} // namespace

std::vector<RelaxedPoint> grid_argmin_penalized(const IlpInstance& inst, const PenaltyConfig& cfg,
                                                std::size_t resolution) {
    // two passes: locate the minimum, then collect ties
    double best = std::numeric_limits<double>::infinity();
    scan_grid(inst.cols(), resolution, [&](const RelaxedPoint& p) {
        const double obj = penalized_objective(inst, p, cfg);
        if (obj < best) best = obj;
    });
    std::vector<RelaxedPoint> argmin;
    scan_grid(inst.cols(), resolution, [&](const RelaxedPoint& p) {
        if (penalized_objective(inst, p, cfg) <= best + kGridTieTolerance) argmin.push_back(p);
    });
    return argmin;
}

bool verify_binary_equivalence(const IlpInstance& inst, std::size_t resolution) {
    const SolveReport solved = enumerate_solve(inst);
    if (!solved.feasible)
        fail(Status::infeasible_instance, "no binary corner satisfies the constraints");

    const std::size_t d = inst.cols();
    const auto total_penalty = [&](const RelaxedPoint& p) {
        const std::vector<double> phi = expected_penalty_exact(inst, p);
        double t = 0.0;
        for (double v : phi) t += v;
        return t;
    };
    const auto cost = [&](const RelaxedPoint& p) {
        double v = 0.0;
        for (std::size_t j = 0; j < d; ++j) v += inst.c()[j] * p.xhat[j];
        return v;
    };

    // cheapest zero-penalty grid point under c, then the binary ties
    double best_cost = std::numeric_limits<double>::infinity();
    scan_grid(d, resolution, [&](const RelaxedPoint& p) {
        if (total_penalty(p) >= kZeroPenaltyTolerance) return;
        best_cost = std::min(best_cost, cost(p));
    });

    std::vector<BinaryPoint> binary_minimizers;
    scan_grid(d, resolution, [&](const RelaxedPoint& p) {
        if (total_penalty(p) >= kZeroPenaltyTolerance) return;
        if (cost(p) > best_cost + kGridTieTolerance) return;
        BinaryPoint bp;
        bp.x.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            if (p.xhat[j] == 0.0) bp.x[j] = 0;
            else if (p.xhat[j] == 1.0) bp.x[j] = 1;
            else return; // interior coordinate: not a corner
        }
        binary_minimizers.push_back(std::move(bp));
    });

    std::sort(binary_minimizers.begin(), binary_minimizers.end());
    return binary_minimizers == solved.optimal_set;
}

} // namespace brx
