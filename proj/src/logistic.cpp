#include "brx/logistic.hpp"

#include <cmath>

#include "brx/error.hpp"

namespace brx {

double sigma(double z) {
    if (std::isnan(z)) fail(Status::domain_error, "sigma: z is NaN");
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double sigma_inv(double p) {
    if (!(p > 0.0 && p < 1.0))
        fail(Status::domain_error, "sigma_inv: p must lie strictly inside (0,1)");
    // log(p) - log1p(-p) keeps precision at both ends.
    return std::log(p) - std::log1p(-p);
}

double sigma_prime(double z) {
    const double e = std::exp(-std::fabs(z));
    const double denom = 1.0 + e;
    return e / (denom * denom);
}

std::size_t clamp_interior(std::span<double> xhat, double delta) {
    std::size_t moved = 0;
    for (double& v : xhat) {
        if (v < delta) {
            v = delta;
            ++moved;
        } else if (v > 1.0 - delta) {
            v = 1.0 - delta;
            ++moved;
        }
    }
    return moved;
}

RelaxedPoint clamp_interior_copy(const RelaxedPoint& xhat, double delta,
                                 std::size_t* clamped_count) {
    RelaxedPoint out = xhat;
    const std::size_t moved = clamp_interior(out.xhat, delta);
    if (clamped_count) *clamped_count = moved;
    return out;
}

namespace {

void require_same_dim(const RelaxedPoint& xhat, const NoiseVector& eps) {
    if (xhat.dim() != eps.dim())
        fail(Status::dimension_mismatch, "relaxed point and noise vector dimensions differ");
}

} // namespace

BinaryPoint hard_threshold(const RelaxedPoint& xhat, const NoiseVector& eps,
                           std::size_t* clamped_count) {
    require_same_dim(xhat, eps);
    const RelaxedPoint p = clamp_interior_copy(xhat, kInteriorDelta, clamped_count);
    BinaryPoint out;
    out.x.resize(p.dim());
    for (std::size_t j = 0; j < p.dim(); ++j)
        out.x[j] = (eps.eps[j] >= 1.0 - p.xhat[j]) ? 1 : 0;
    return out;
}

std::vector<double> soft_relax(const RelaxedPoint& xhat, const NoiseVector& eps,
                               std::size_t* clamped_count) {
    require_same_dim(xhat, eps);
    const RelaxedPoint p = clamp_interior_copy(xhat, kInteriorDelta, clamped_count);
    std::vector<double> out(p.dim());
    for (std::size_t j = 0; j < p.dim(); ++j)
        out[j] = sigma(sigma_inv(p.xhat[j]) + sigma_inv(eps.eps[j]));
    return out;
}

} // namespace brx
