#pragma once

#include "qps/rational.hpp"

#include <vector>

namespace qps::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  RatVector coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs = 0;
};

/// maximize (or minimize) objective . x subject to the constraints.
/// Variables flagged in `nonnegative` carry x_i >= 0; the rest are free.
/// An empty objective asks for feasibility only.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<bool> nonnegative;
  std::vector<Constraint> constraints;
  RatVector objective;
  bool maximize = true;

  static Problem free_vars(std::size_t n) { return Problem{n, std::vector<bool>(n, false), {}, {}, true}; }
  static Problem nonneg_vars(std::size_t n) { return Problem{n, std::vector<bool>(n, true), {}, {}, true}; }

  void add(RatVector coeffs, Relation rel, Rational rhs) {
    constraints.push_back(Constraint{std::move(coeffs), rel, std::move(rhs)});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  RatVector x;
  Rational value = 0;
};

/// Two-phase dense-tableau simplex over exact rationals, Bland's rule.
Solution solve(const Problem& problem);

}  // namespace qps::lp
