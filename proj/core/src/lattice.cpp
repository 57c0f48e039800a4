#include "qps/lattice.hpp"

#include "qps/error.hpp"

namespace qps {

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVector>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(std::vector<RatVector> rows) {
  if (rows.empty()) return 0;
  return rref(rows, rows[0].size()).size();
}

std::optional<RatVector> solve_unique(const std::vector<RatVector>& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("right-hand side length differs from row count");
  const std::size_t n = a.empty() ? 0 : a[0].size();
  std::vector<RatVector> aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != n) throw DimensionMismatch("ragged matrix");
    RatVector row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = rref(aug, n);
  for (std::size_t i = pivots.size(); i < aug.size(); ++i) {
    if (aug[i][n] != 0) return std::nullopt;
  }
  RatVector x(n, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][n];
  return x;
}

std::vector<RatVector> rational_kernel(const std::vector<RatVector>& a, std::size_t n) {
  std::vector<RatVector> rows = a;
  auto pivots = rref(rows, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(n, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

IntegerFlat IntegerFlat::solve(const IntMatrix& e, const IntVector& constants, std::size_t n) {
  if (e.size() != constants.size()) throw DimensionMismatch("flat constants do not match rows");
  IntMatrix h = e;
  IntMatrix u(n, IntVector(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    // column dst -= q * column src, in h and u
    for (auto& row : h) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (auto& row : h) std::swap(row[a], row[b]);
    for (auto& row : u) std::swap(row[a], row[b]);
  };

  std::vector<std::ptrdiff_t> pivot_of_row(e.size(), -1);
  std::size_t pc = 0;
  for (std::size_t i = 0; i < h.size() && pc < n; ++i) {
    if (h[i].size() != n) throw DimensionMismatch("flat row has wrong length");
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = pc; j < n; ++j) {
        if (h[i][j] != 0 && (best == n || abs(h[i][j]) < abs(h[i][best]))) best = j;
      }
      if (best == n) break;
      if (best != pc) col_swap(best, pc);
      bool done = true;
      for (std::size_t j = pc + 1; j < n; ++j) {
        if (h[i][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), h[i][j].get_mpz_t(), h[i][pc].get_mpz_t());
        col_axpy(j, pc, q);
        if (h[i][j] != 0) done = false;
      }
      if (done) {
        pivot_of_row[i] = static_cast<std::ptrdiff_t>(pc);
        ++pc;
        break;
      }
    }
  }

  IntegerFlat flat;
  IntVector z(n, Integer(0));
  for (std::size_t i = 0; i < h.size(); ++i) {
    Integer rhs = -constants[i];
    std::size_t upto = pivot_of_row[i] >= 0 ? static_cast<std::size_t>(pivot_of_row[i]) : n;
    for (std::size_t c = 0; c < upto; ++c) {
      if (h[i][c] != 0) rhs -= h[i][c] * z[c];
    }
    if (pivot_of_row[i] < 0) {
      if (rhs != 0) {
        flat.empty = true;
        return flat;
      }
      continue;
    }
    const Integer& piv = h[i][static_cast<std::size_t>(pivot_of_row[i])];
    if (!mpz_divisible_p(rhs.get_mpz_t(), piv.get_mpz_t())) {
      flat.empty = true;
      return flat;
    }
    z[static_cast<std::size_t>(pivot_of_row[i])] = rhs / piv;
  }
  flat.base.assign(n, Integer(0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) flat.base[r] += u[r][c] * z[c];
  }
  for (std::size_t c = pc; c < n; ++c) {
    IntVector v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = u[r][c];
    flat.basis.push_back(std::move(v));
  }
  return flat;
}

FlatReducer::FlatReducer(const std::vector<RatVector>& e, const RatVector& constants, std::size_t n) {
  images_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) images_.push_back(MultiPoly::variable(n, i));
  if (e.empty()) return;
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < e.size(); ++i) {
    RatVector row = e[i];
    row.push_back(constants[i]);
    rows.push_back(std::move(row));
  }
  auto pivots = rref(rows, n + 1);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == n) {
      inconsistent_ = true;
      return;
    }
    // x_p = -(sum_{f free} row[f] x_f + row[n])
    MultiPoly img = MultiPoly::constant(n, -rows[i][n]);
    for (std::size_t f = 0; f < n; ++f) {
      if (f == pivots[i] || rows[i][f] == 0) continue;
      img -= MultiPoly::variable(n, f) * rows[i][f];
    }
    images_[pivots[i]] = std::move(img);
    trivial_ = false;
  }
}

MultiPoly FlatReducer::reduce(const MultiPoly& p) const {
  if (trivial_) return p;
  return p.compose(images_);
}

}  // namespace qps
