#include "brx/ilp.hpp"

#include <cmath>
#include <string>

namespace brx {

IlpInstance::IlpInstance(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double> c) {
    m_ = a.size();
    d_ = c.size();
    if (m_ == 0 || d_ == 0)
        fail(Status::invalid_argument, "instance needs at least one row and one column");
    if (b.size() != m_)
        fail(Status::dimension_mismatch, "row count of a (" + std::to_string(m_) +
                                             ") does not match length of b (" +
                                             std::to_string(b.size()) + ")");
    a_.reserve(m_ * d_);
    for (std::size_t i = 0; i < m_; ++i) {
        if (a[i].size() != d_)
            fail(Status::dimension_mismatch, "row " + std::to_string(i) + " of a has " +
                                                 std::to_string(a[i].size()) +
                                                 " entries, expected " + std::to_string(d_));
        for (double v : a[i]) a_.push_back(v);
    }
    b_ = std::move(b);
    c_ = std::move(c);
    for (double v : a_)
        if (!std::isfinite(v)) fail(Status::invalid_argument, "non-finite entry in a");
    for (double v : b_)
        if (!std::isfinite(v)) fail(Status::invalid_argument, "non-finite entry in b");
    for (double v : c_)
        if (!std::isfinite(v)) fail(Status::invalid_argument, "non-finite entry in c");
}

void IlpInstance::require_enumerable(std::size_t cap) const {
    if (d_ > cap)
        fail(Status::dimension_too_large, "d = " + std::to_string(d_) +
                                              " exceeds the enumeration cap " +
                                              std::to_string(cap));
}

namespace {

// Corner for mask with x_0 as the most significant bit, so increasing masks
// visit corners in lexicographic order.
inline void corner_from_mask(std::uint64_t mask, std::size_t d, std::vector<std::uint8_t>& x) {
    for (std::size_t j = 0; j < d; ++j) x[j] = static_cast<std::uint8_t>((mask >> (d - 1 - j)) & 1u);
}

} // namespace

SolveReport enumerate_solve(const IlpInstance& inst, std::size_t cap) {
    inst.require_enumerable(cap);
    const std::size_t d = inst.cols();
    const std::uint64_t corners = std::uint64_t{1} << d;

    SolveReport report;
    std::vector<std::uint8_t> x(d);
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < corners; ++mask) {
        corner_from_mask(mask, d, x);
        bool ok = true;
        for (std::size_t i = 0; i < inst.rows() && ok; ++i)
            if (inst.row_dot(i, x) > inst.b()[i]) ok = false;
        if (!ok) continue;
        double value = 0.0;
        for (std::size_t j = 0; j < d; ++j) value += inst.c()[j] * static_cast<double>(x[j]);
        if (!report.feasible || value < best) {
            report.feasible = true;
            best = value;
            report.optimal_set.clear();
            report.optimal_set.push_back(BinaryPoint{x});
        } else if (value == best) { // exact ties kept; data are user literals
            report.optimal_set.push_back(BinaryPoint{x});
        }
    }
    report.optimal_value = report.feasible ? best : 0.0;
    return report;
}

bool is_feasible_corner(const IlpInstance& inst, const BinaryPoint& x) {
    if (x.x.size() != inst.cols())
        fail(Status::dimension_mismatch, "corner dimension does not match instance");
    for (std::uint8_t v : x.x)
        if (v > 1) fail(Status::invalid_argument, "corner coordinates must be 0 or 1");
    for (std::size_t i = 0; i < inst.rows(); ++i)
        if (inst.row_dot(i, x.x) > inst.b()[i]) return false;
    return true;
}

double mu_threshold(const IlpInstance& inst, std::size_t cap) {
    inst.require_enumerable(cap);
    const std::size_t d = inst.cols();
    const std::uint64_t corners = std::uint64_t{1} << d;

    double c_norm = 0.0;
    for (double v : inst.c()) c_norm += v * v;
    c_norm = std::sqrt(c_norm);

    // min over {1} and every strictly positive slack a_i.x - b_i
    double denom = 1.0;
    std::vector<std::uint8_t> x(d);
    for (std::uint64_t mask = 0; mask < corners; ++mask) {
        corner_from_mask(mask, d, x);
        for (std::size_t i = 0; i < inst.rows(); ++i) {
            const double slack = inst.row_dot(i, x) - inst.b()[i];
            if (slack > 0.0 && slack < denom) denom = slack;
        }
    }
    return 2.0 * std::sqrt(static_cast<double>(d)) * c_norm / denom;
}

} // namespace brx
