#pragma once

#include "qps/box_spline.hpp"
#include "qps/dahmen_micchelli.hpp"
#include "qps/diophantine.hpp"
#include "qps/semilinear.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qps {

// Brute-force counters. They work in 64-bit arithmetic and throw
// InternalError if the data leave that range.

/// #{x in N^cols : matrix . x + offsets (=|<=) n}, by depth-first search.
Integer oracle_count_nonneg(const DioSystem& sys, std::span<const Integer> n);

/// #{X in [0, floor(h max|b|)]^n : A X = b}.
Integer oracle_count_pointed(const IntMatrix& a, std::span<const Integer> b, const Rational& h);

/// Points x of X with |x_i| = eta_i (i < t1) and |x_i| <= eta_i (i >= t1).
/// PreconditionError if a point lies in two pieces.
Integer oracle_growth(const SemiSimpleSet& x, GrowthSpec spec, std::span<const Integer> eta);

struct GrowthProblem {
  SemiSimpleSet set;
  GrowthSpec spec;
};

using Problem = std::variant<DioSystem, GrowthProblem, DMInstance>;

std::string problem_kind(const Problem& p);
/// Short human-readable description used in reports.
std::string describe(const Problem& p);

/// Runs the construction for the problem's kind (Le rows are slackified).
BoxSpline construct(const Problem& p);

struct Mismatch {
  IntVector point;
  Rational symbolic;
  Rational oracle;
};

struct DiffReport {
  std::string instance;
  std::int64_t bound = 0;
  std::uint64_t checked_points = 0;
  std::vector<Mismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Compares `symbolic` with the oracle on [0, B]^t (counting and growth
/// problems) or [-B, B]^t (vector partition functions). Mismatches are
/// sorted by point; the report does not depend on `jobs`.
DiffReport diff_test(const Problem& p, const BoxSpline& symbolic, std::int64_t bound, unsigned jobs = 1);

/// Builds the box spline and compares it with the oracle.
DiffReport diff_test(const Problem& p, std::int64_t bound, unsigned jobs = 1);

}  // namespace qps
