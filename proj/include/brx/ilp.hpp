#pragma once

#include <string>
#include <string_view>

#include "brx/types.hpp"

namespace brx {

/// Exhaustive scan over all 2^d corners. Keeps every minimizer (ties in
/// lexicographic order). Feasibility is a_i . x <= b_i for every row,
/// non-strict. Throws DimensionTooLarge when d > cap.
SolveReport enumerate_solve(const IlpInstance& inst, std::size_t cap = kDefaultEnumerationCap);

/// True iff a_i . x <= b_i for all i.
bool is_feasible_corner(const IlpInstance& inst, const BinaryPoint& x);

/// Penalty-weight threshold
///   mu* = 2 sqrt(d) ||c||_2 / min({1} u {a_i.x - b_i > 0 : x corner, i row}).
/// Any admissible penalty weight must strictly exceed it. Positive slacks
/// enter by exact sign; when none exist the denominator defaults to 1.
double mu_threshold(const IlpInstance& inst, std::size_t cap = kDefaultEnumerationCap);

/// Parse an instance document: a JSON object with exactly the keys
///   "a" (array of m arrays of d numbers), "b" (m numbers), "c" (d numbers).
/// Unknown keys are rejected. Numbers are read as 64-bit floats.
/// Parse/shape failures throw Error(parse_error) whose message carries
/// line and column.
IlpInstance parse_instance_json(std::string_view text);

/// Load and parse an instance file (UTF-8 text).
IlpInstance load_instance_file(const std::string& path);

/// Serialize in the same schema (used by tooling and tests).
std::string instance_to_json(const IlpInstance& inst);

} // namespace brx
