#pragma once

#include "qps/multipoly.hpp"
#include "qps/quasi_polynomial.hpp"
#include "qps/rational.hpp"

#include <optional>
#include <vector>

namespace qps {

/// Rank of a rational matrix given by rows.
std::size_t rank(std::vector<RatVector> rows);

/// The unique x with A x = b (A given by rows, full column rank assumed
/// for uniqueness); nullopt if the system is inconsistent.
std::optional<RatVector> solve_unique(const std::vector<RatVector>& a, const RatVector& b);

/// Basis of {x : A x = 0} over the rationals (A given by rows over n columns).
std::vector<RatVector> rational_kernel(const std::vector<RatVector>& a, std::size_t n);

/// Integer points of the affine subspace {x in Z^n : E x + e = 0}:
/// base + integer combinations of `basis` (empty when there are none).
struct IntegerFlat {
  bool empty = false;
  IntVector base;
  IntMatrix basis;

  static IntegerFlat solve(const IntMatrix& e, const IntVector& constants, std::size_t n);
};

/// Rewrites polynomials into a canonical form on the rational affine
/// subspace {x : E x + e = 0}: pivot variables of the reduced row echelon
/// form are replaced by their expressions in the free ones.
class FlatReducer {
 public:
  FlatReducer() = default;
  FlatReducer(const std::vector<RatVector>& e, const RatVector& constants, std::size_t n);

  bool trivial() const { return trivial_; }
  bool inconsistent() const { return inconsistent_; }
  MultiPoly reduce(const MultiPoly& p) const;

 private:
  bool trivial_ = true;
  bool inconsistent_ = false;
  std::vector<MultiPoly> images_;
};

}  // namespace qps
