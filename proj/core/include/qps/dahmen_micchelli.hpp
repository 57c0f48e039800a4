#pragma once

#include "qps/arrangement.hpp"
#include "qps/box_spline.hpp"
#include "qps/rational.hpp"

#include <vector>

namespace qps {

/// Outcome of the pointedness test. When the matrix is not pointed,
/// `witness` is a nonzero X >= 0 (integer, primitive) with A X = 0.
struct PointedCertificate {
  bool pointed = true;
  IntVector witness;
};

/// Decides whether A X = 0, X >= 0 forces X = 0 (rows of A given).
PointedCertificate check_pointed(const IntMatrix& a);

/// A rational h with X_i <= h * max_j |b_j| for every non-negative solution
/// of A X = b, every i and every b. PreconditionError unless A is pointed.
Rational compute_hA(const IntMatrix& a);

/// Planes b_i = 0, b_i - b_j = 0 and b_i + b_j = 0 over Z^t. On each region
/// the signs of the b_i and the index of the largest |b_i| are constant.
Arrangement abs_arrangement(std::size_t t);

/// Index of the coordinate of largest absolute value (the first one on ties).
std::size_t abs_argmax(std::span<const Integer> b);

struct DMInstance {
  std::size_t t = 0;
  std::size_t n = 0;
  IntMatrix matrix;
  PointedCertificate certificate;
  Rational h = 0;

  /// Validates the shape, runs the pointedness test and, when pointed,
  /// computes h.
  static DMInstance make(IntMatrix matrix, std::size_t cols = 0);
  IntMatrix columns(std::size_t first) const;
};

/// PreconditionError naming the violated pointedness condition.
void require_pointed(const DMInstance& inst);

/// b |-> #{X in N^n : A X = b} as a box spline on Z^t.
BoxSpline build_CA(const DMInstance& inst);

}  // namespace qps
