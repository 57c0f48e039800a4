#pragma once

#include "qps/box_spline.hpp"
#include "qps/rational.hpp"

#include <vector>

namespace qps {

enum class RowRelation { Eq, Le };

/// matrix . x + offsets (=|<=) n, row by row, for unknowns x in N^cols and
/// non-negative integer data.
struct DioSystem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  IntMatrix matrix;
  IntVector offsets;
  std::vector<RowRelation> relations;

  /// Offsets default to zero and relations to Eq. Validates.
  static DioSystem make(IntMatrix matrix, IntVector offsets = {}, std::vector<RowRelation> relations = {},
                        std::size_t cols = 0);

  /// Throws DimensionMismatch / PreconditionError on bad shape or negative data.
  void validate() const;
  bool all_equalities() const;
  IntVector column(std::size_t j) const;
};

/// Each Le row gets its own unit slack column and becomes Eq.
DioSystem slackify(const DioSystem& sys);

/// n |-> #{x in N^cols : matrix . x + offsets = n} as a box spline on N^rows.
BoxSpline count_system(const DioSystem& sys);

}  // namespace qps
