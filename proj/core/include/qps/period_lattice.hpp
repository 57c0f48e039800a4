#pragma once

#include "qps/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qps {

using Residues = std::vector<std::int64_t>;
using Periods = std::vector<std::int64_t>;

/// Calls fn(r) for every residue vector r with 0 <= r[i] < periods[i].
template <class Fn>
void for_each_residue(const Periods& periods, Fn&& fn) {
  Residues r(periods.size(), 0);
  for (;;) {
    fn(static_cast<const Residues&>(r));
    std::size_t i = 0;
    for (; i < r.size(); ++i) {
      if (++r[i] < periods[i]) break;
      r[i] = 0;
    }
    if (i == r.size()) return;
  }
}

/// A full-rank sublattice L of Z^t, stored in lower-triangular Hermite
/// normal form: basis row i vanishes past column i, its diagonal entry is
/// positive and its entries left of the diagonal lie in [0, h_jj).
///
/// Each class of Z^t / L has exactly one representative in the box
/// 0 <= r_i < h_ii; reduce() maps any point there. Classes are numbered
/// 0 .. index() - 1 in mixed radix over that box.
class PeriodLattice {
 public:
  using Row = std::vector<std::int64_t>;

  PeriodLattice() = default;
  /// All of Z^t.
  explicit PeriodLattice(std::size_t dim);

  /// p_1 Z x ... x p_t Z.
  static PeriodLattice diagonal(const Periods& periods);
  static PeriodLattice scaled(std::size_t dim, std::int64_t d);
  /// Lattice spanned by the rows, which must have rank dim.
  static PeriodLattice generated(std::size_t dim, const std::vector<IntVector>& rows);
  /// {x : c . x = 0 (mod m) for every c in conditions}.
  static PeriodLattice congruences(std::size_t dim, const std::vector<IntVector>& conditions, std::int64_t m);

  std::size_t dim() const { return dim_; }
  const std::vector<Row>& basis() const { return basis_; }
  std::int64_t diagonal_entry(std::size_t i) const { return basis_[i][i]; }
  std::int64_t index() const { return index_; }
  /// Least d > 0 with d Z^t inside L.
  std::int64_t exponent() const { return exponent_; }
  bool is_diagonal() const;

  Residues reduce(std::span<const Integer> x) const;
  /// Reduces r in place; entries may be any int64 of moderate size.
  void reduce_in_place(Residues& r) const;
  bool contains(std::span<const Integer> v) const;
  /// sub is contained in this lattice.
  bool contains(const PeriodLattice& sub) const;

  std::int64_t position(const Residues& canonical) const;
  Residues representative(std::int64_t position) const;

  /// Calls fn(r) for every canonical representative, in position order.
  template <class Fn>
  void for_each_class(Fn&& fn) const {
    Periods box(dim_);
    for (std::size_t i = 0; i < dim_; ++i) box[i] = basis_[i][i];
    for_each_residue(box, fn);
  }

  /// Vectors c_j with x in L iff c_j . x = 0 (mod m) for all j; m must be a
  /// multiple of exponent().
  std::vector<IntVector> conditions(std::int64_t m) const;

  bool operator==(const PeriodLattice& other) const = default;

 private:
  void finish();

  std::size_t dim_ = 0;
  std::vector<Row> basis_;
  std::int64_t index_ = 1;
  std::int64_t exponent_ = 1;
};

PeriodLattice intersect(const PeriodLattice& a, const PeriodLattice& b);
/// The lattice a + b.
PeriodLattice lattice_sum(const PeriodLattice& a, const PeriodLattice& b);
/// {y in Z^k : M y in L} for an integer t x k matrix M.
PeriodLattice preimage(const PeriodLattice& l, const IntMatrix& m);
/// Least k > 0 with k v in L.
std::int64_t order_in(const PeriodLattice& l, std::span<const Integer> v);

}  // namespace qps
