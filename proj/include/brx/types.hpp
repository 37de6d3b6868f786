#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "brx/error.hpp"

namespace brx {

/// Hard ceiling for exact (exhaustive) operations: 2^20 corners.
inline constexpr std::size_t kDefaultEnumerationCap = 20;

/// Interior clamp used by every reparameterization entry point: the logistic
/// quantile is singular at {0,1}, so relaxed coordinates are pushed into
/// [delta, 1-delta] before sampling.
inline constexpr double kInteriorDelta = 1e-7;

/// A 0-1 integer linear program  min c^T x  s.t.  A x <= b,  x in {0,1}^d.
/// Stores A row-major (m rows, d columns). All entries must be finite.
class IlpInstance {
  public:
    IlpInstance(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double> c);

    std::size_t rows() const noexcept { return m_; }
    std::size_t cols() const noexcept { return d_; }
    double a(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
    const std::vector<double>& a_flat() const noexcept { return a_; }
    const std::vector<double>& b() const noexcept { return b_; }
    const std::vector<double>& c() const noexcept { return c_; }

    /// a_i . x for a binary corner given as any indexable 0/1 container.
    template <class Vec>
    double row_dot(std::size_t i, const Vec& x) const {
        double s = 0.0;
        for (std::size_t j = 0; j < d_; ++j) s += a_[i * d_ + j] * static_cast<double>(x[j]);
        return s;
    }

    /// Throws DimensionTooLarge unless d <= cap.
    void require_enumerable(std::size_t cap = kDefaultEnumerationCap) const;

  private:
    std::vector<double> a_; // row-major m x d
    std::vector<double> b_;
    std::vector<double> c_;
    std::size_t m_ = 0;
    std::size_t d_ = 0;
};

/// A corner of the unit cube; every coordinate is exactly 0 or 1.
struct BinaryPoint {
    std::vector<std::uint8_t> x;

    bool operator==(const BinaryPoint& o) const { return x == o.x; }
    bool operator<(const BinaryPoint& o) const { return x < o.x; } // lexicographic
};

/// Result of exhaustive solving. feasible == false iff optimal_set is empty;
/// ties are all retained, in lexicographic order.
struct SolveReport {
    bool feasible = false;
    double optimal_value = 0.0; // meaningful only when feasible
    std::vector<BinaryPoint> optimal_set;
};

/// A point of the relaxed box [0,1]^d; parameterizes the product Bernoulli
/// distribution with coordinate j equal to 1 with probability xhat[j].
struct RelaxedPoint {
    std::vector<double> xhat;

    std::size_t dim() const noexcept { return xhat.size(); }
};

/// Penalty weight of the unconstrained reformulation.
struct PenaltyConfig {
    double mu = 1.0; // must be finite and >= 0
};

/// Exogenous uniform noise, strictly inside (0,1)^d.
struct NoiseVector {
    std::vector<double> eps;

    std::size_t dim() const noexcept { return eps.size(); }
};

/// Monte-Carlo estimate: component-wise mean and standard error
/// (sample standard deviation / sqrt(n)). Scalar estimates have size 1.
struct EstimateReport {
    std::vector<double> mean;
    std::vector<double> stderr_of_mean;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

} // namespace brx
