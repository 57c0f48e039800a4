#include "qps/lp.hpp"

#include "qps/error.hpp"

namespace qps::lp {

namespace {

class Tableau {
 public:
  // rows: constraint rows; cols: structural + slack + artificial, plus rhs.
  std::vector<RatVector> rows;
  RatVector cost;  // reduced costs, last entry = -objective value
  std::vector<std::size_t> basis;
  std::size_t ncols = 0;
  std::vector<bool> allowed;

  void pivot(std::size_t pr, std::size_t pc) {
    RatVector& prow = rows[pr];
    Rational inv = 1 / prow[pc];
    for (auto& v : prow) {
      if (v != 0) v *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pr) continue;
      eliminate(rows[i], prow, pc);
    }
    eliminate(cost, prow, pc);
    basis[pr] = pc;
  }

  // Bland's rule; returns false when unbounded.
  bool optimize() {
    for (;;) {
      std::size_t enter = ncols;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (allowed[j] && cost[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == ncols) return true;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Rational& a = rows[i][enter];
        if (a <= 0) continue;
        Rational ratio = rows[i][ncols] / a;
        if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter);
    }
  }

 private:
  static void eliminate(RatVector& row, const RatVector& prow, std::size_t pc) {
    if (row[pc] == 0) return;
    Rational f = row[pc];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (prow[j] != 0) row[j] -= f * prow[j];
    }
  }
};

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = problem.num_vars;
  if (!problem.nonnegative.empty() && problem.nonnegative.size() != n) {
    throw DimensionMismatch("nonnegativity flags do not match variable count");
  }
  // Structural columns: free variables split as x = x+ - x-.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t nstruct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    pos_col[i] = nstruct++;
    bool nonneg = !problem.nonnegative.empty() && problem.nonnegative[i];
    if (!nonneg) neg_col[i] = nstruct++;
  }

  struct Row {
    RatVector a;
    Relation rel;
    Rational b;
  };
  std::vector<Row> rows;
  rows.reserve(problem.constraints.size());
  for (const auto& c : problem.constraints) {
    if (c.coeffs.size() != n) throw DimensionMismatch("constraint has wrong length");
    Row r{RatVector(nstruct, Rational(0)), c.relation, c.rhs};
    for (std::size_t i = 0; i < n; ++i) {
      if (c.coeffs[i] == 0) continue;
      r.a[pos_col[i]] = c.coeffs[i];
      if (neg_col[i] != SIZE_MAX) r.a[neg_col[i]] = -c.coeffs[i];
    }
    if (r.b < 0) {
      for (auto& v : r.a) v = -v;
      r.b = -r.b;
      if (r.rel == Relation::LessEqual) {
        r.rel = Relation::GreaterEqual;
      } else if (r.rel == Relation::GreaterEqual) {
        r.rel = Relation::LessEqual;
      }
    }
    rows.push_back(std::move(r));
  }

  const std::size_t m = rows.size();
  std::size_t nslack = 0, nart = 0;
  for (const auto& r : rows) {
    if (r.rel != Relation::Equal) ++nslack;
    if (r.rel != Relation::LessEqual) ++nart;
  }
  Tableau tab;
  tab.ncols = nstruct + nslack + nart;
  const std::size_t art_begin = nstruct + nslack;
  tab.rows.assign(m, RatVector(tab.ncols + 1, Rational(0)));
  tab.basis.assign(m, 0);
  tab.allowed.assign(tab.ncols, true);
  tab.cost.assign(tab.ncols + 1, Rational(0));
  std::size_t s = nstruct, a = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = tab.rows[i];
    for (std::size_t j = 0; j < nstruct; ++j) row[j] = rows[i].a[j];
    row[tab.ncols] = rows[i].b;
    switch (rows[i].rel) {
      case Relation::LessEqual:
        row[s] = 1;
        tab.basis[i] = s++;
        break;
      case Relation::GreaterEqual:
        row[s++] = -1;
        row[a] = 1;
        tab.basis[i] = a++;
        break;
      case Relation::Equal:
        row[a] = 1;
        tab.basis[i] = a++;
        break;
    }
  }

  // Phase one: minimize the sum of artificials.
  if (nart > 0) {
    for (std::size_t j = art_begin; j < tab.ncols; ++j) tab.cost[j] = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis[i] >= art_begin) {
        for (std::size_t j = 0; j <= tab.ncols; ++j) tab.cost[j] -= tab.rows[i][j];
      }
    }
    if (!tab.optimize()) throw InternalError("phase one of the simplex cannot be unbounded");
    if (tab.cost[tab.ncols] != 0) return Solution{Status::Infeasible, {}, 0};
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < tab.rows.size();) {
      if (tab.basis[i] < art_begin) {
        ++i;
        continue;
      }
      std::size_t col = art_begin;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (tab.rows[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col == art_begin) {
        tab.rows.erase(tab.rows.begin() + static_cast<std::ptrdiff_t>(i));
        tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      tab.pivot(i, col);
      ++i;
    }
    for (std::size_t j = art_begin; j < tab.ncols; ++j) tab.allowed[j] = false;
  }

  Solution sol;
  sol.status = Status::Optimal;
  if (!problem.objective.empty()) {
    if (problem.objective.size() != n) throw DimensionMismatch("objective has wrong length");
    RatVector c(tab.ncols, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      Rational v = problem.maximize ? Rational(-problem.objective[i]) : problem.objective[i];
      c[pos_col[i]] = v;
      if (neg_col[i] != SIZE_MAX) c[neg_col[i]] = -v;
    }
    std::fill(tab.cost.begin(), tab.cost.end(), Rational(0));
    for (std::size_t j = 0; j < tab.ncols; ++j) tab.cost[j] = c[j];
    for (std::size_t i = 0; i < tab.rows.size(); ++i) {
      const Rational& cb = c[tab.basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= tab.ncols; ++j) tab.cost[j] -= cb * tab.rows[i][j];
    }
    if (!tab.optimize()) return Solution{Status::Unbounded, {}, 0};
  }

  RatVector col_value(tab.ncols, Rational(0));
  for (std::size_t i = 0; i < tab.rows.size(); ++i) col_value[tab.basis[i]] = tab.rows[i][tab.ncols];
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    sol.x[i] = col_value[pos_col[i]];
    if (neg_col[i] != SIZE_MAX) sol.x[i] -= col_value[neg_col[i]];
  }
  if (!problem.objective.empty()) {
    sol.value = 0;
    for (std::size_t i = 0; i < n; ++i) sol.value += problem.objective[i] * sol.x[i];
  }
  return sol;
}

}  // namespace qps::lp
