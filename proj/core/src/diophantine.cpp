#include "qps/diophantine.hpp"

#include "qps/error.hpp"

#include <algorithm>

namespace qps {

DioSystem DioSystem::make(IntMatrix matrix, IntVector offsets, std::vector<RowRelation> relations,
                          std::size_t cols) {
  DioSystem s;
  s.rows = matrix.size();
  s.cols = matrix.empty() ? cols : matrix.front().size();
  s.matrix = std::move(matrix);
  s.offsets = offsets.empty() ? IntVector(s.rows, Integer(0)) : std::move(offsets);
  s.relations = relations.empty() ? std::vector<RowRelation>(s.rows, RowRelation::Eq) : std::move(relations);
  s.validate();
  return s;
}

void DioSystem::validate() const {
  if (rows == 0) throw PreconditionError("system needs at least one row");
  if (matrix.size() != rows || offsets.size() != rows || relations.size() != rows) {
    throw DimensionMismatch("system rows disagree with matrix, offsets or relations");
  }
  for (const auto& row : matrix) {
    if (row.size() != cols) throw DimensionMismatch("ragged system matrix");
    for (const auto& v : row) {
      if (v < 0) throw PreconditionError("system coefficients must be non-negative");
    }
  }
  for (const auto& v : offsets) {
    if (v < 0) throw PreconditionError("negative offset " + v.get_str());
  }
}

bool DioSystem::all_equalities() const {
  return std::all_of(relations.begin(), relations.end(), [](RowRelation r) { return r == RowRelation::Eq; });
}

IntVector DioSystem::column(std::size_t j) const {
  IntVector c;
  c.reserve(rows);
  for (const auto& row : matrix) c.push_back(row.at(j));
  return c;
}

DioSystem slackify(const DioSystem& sys) {
  sys.validate();
  DioSystem out = sys;
  for (std::size_t i = 0; i < sys.rows; ++i) {
    if (sys.relations[i] != RowRelation::Le) continue;
    for (std::size_t r = 0; r < sys.rows; ++r) out.matrix[r].push_back(r == i ? 1 : 0);
    out.relations[i] = RowRelation::Eq;
    ++out.cols;
  }
  return out;
}

BoxSpline count_system(const DioSystem& sys) {
  sys.validate();
  if (!sys.all_equalities()) throw PreconditionError("count_system needs equality rows (slackify first)");
  for (std::size_t j = 0; j < sys.cols; ++j) {
    const IntVector a = sys.column(j);
    if (std::all_of(a.begin(), a.end(), [](const Integer& v) { return v == 0; })) {
      throw PreconditionError("zero column " + std::to_string(j + 1) + ": the count would be infinite");
    }
  }
  // Eliminate the last column first, so column 1 is the outermost sum.
  BoxSpline g = BoxSpline::origin_indicator(sys.rows, Domain::Natural);
  for (std::size_t j = sys.cols; j-- > 0;) {
    const IntVector a = sys.column(j);
    g = bs_coarsen(bs_line_sum(g, a, BoundSpec::min_ratio(a)));
  }
  if (std::any_of(sys.offsets.begin(), sys.offsets.end(), [](const Integer& v) { return v != 0; })) {
    g = bs_translate(g, sys.offsets);
  }
  return g;
}

}  // namespace qps
