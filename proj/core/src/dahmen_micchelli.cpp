#include "qps/dahmen_micchelli.hpp"

#include "qps/error.hpp"
#include "qps/lp.hpp"

#include <algorithm>
#include <sstream>

namespace qps {

PointedCertificate check_pointed(const IntMatrix& a) {
  const std::size_t t = a.size();
  const std::size_t n = t == 0 ? 0 : a[0].size();
  if (n == 0) return {};
  lp::Problem p = lp::Problem::nonneg_vars(n);
  for (const auto& row : a) {
    if (row.size() != n) throw DimensionMismatch("ragged matrix");
    p.add(to_rational(row), lp::Relation::Equal, 0);
  }
  p.add(RatVector(n, Rational(1)), lp::Relation::Equal, 1);
  auto sol = lp::solve(p);
  if (sol.status == lp::Status::Infeasible) return {};
  Integer l = 1;
  for (const auto& v : sol.x) l = lcm(l, Integer(v.get_den()));
  IntVector w;
  Integer g = 0;
  for (const auto& v : sol.x) {
    w.push_back(v.get_num() * (l / v.get_den()));
    g = gcd(g, w.back());
  }
  for (auto& v : w) v /= g;
  return PointedCertificate{false, std::move(w)};
}

Rational compute_hA(const IntMatrix& a) {
  auto cert = check_pointed(a);
  if (!cert.pointed) throw PreconditionError("condition (35) violated: the matrix is not pointed");
  const std::size_t t = a.size();
  const std::size_t n = t == 0 ? 0 : a[0].size();
  Rational h = 0;
  // X_i <= y.b whenever y^T A >= e_i, and y.b <= sum|y_j| max|b_j|; write
  // y = u - v and minimize sum(u + v).
  for (std::size_t i = 0; i < n; ++i) {
    lp::Problem p = lp::Problem::nonneg_vars(2 * t);
    p.maximize = false;
    p.objective = RatVector(2 * t, Rational(1));
    for (std::size_t c = 0; c < n; ++c) {
      RatVector row(2 * t);
      for (std::size_t r = 0; r < t; ++r) {
        row[r] = a[r][c];
        row[t + r] = -a[r][c];
      }
      p.add(std::move(row), lp::Relation::GreaterEqual, c == i ? 1 : 0);
    }
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) throw InternalError("h_A program has no optimum for a pointed matrix");
    h = std::max(h, sol.value);
  }
  return h;
}

Arrangement abs_arrangement(std::size_t t) {
  if (t == 0) throw PreconditionError("dimension must be positive");
  Arrangement arr(t, Domain::Integer);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      for (int s : {-1, 1}) {
        IntVector normal(t, Integer(0));
        normal[i] = 1;
        normal[j] = s;
        arr.add(Hyperplane::make(std::move(normal)));
      }
    }
  }
  return arr;
}

std::size_t abs_argmax(std::span<const Integer> b) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < b.size(); ++j) {
    if (abs(b[j]) > abs(b[best])) best = j;
  }
  return best;
}

DMInstance DMInstance::make(IntMatrix matrix, std::size_t cols) {
  DMInstance inst;
  inst.t = matrix.size();
  if (inst.t == 0) throw PreconditionError("matrix needs at least one row");
  inst.n = matrix.front().size();
  if (inst.n == 0) inst.n = cols;
  for (const auto& row : matrix) {
    if (row.size() != matrix.front().size()) throw DimensionMismatch("ragged matrix");
  }
  inst.matrix = std::move(matrix);
  inst.certificate = check_pointed(inst.matrix);
  if (inst.certificate.pointed) inst.h = compute_hA(inst.matrix);
  return inst;
}

IntMatrix DMInstance::columns(std::size_t first) const {
  IntMatrix out;
  for (const auto& row : matrix) out.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(first), row.end());
  return out;
}

void require_pointed(const DMInstance& inst) {
  if (inst.certificate.pointed) return;
  std::ostringstream msg;
  msg << "condition (35) violated: X = (";
  for (std::size_t i = 0; i < inst.certificate.witness.size(); ++i) {
    msg << (i ? ", " : "") << inst.certificate.witness[i];
  }
  msg << ") is a nonzero non-negative solution of AX = 0";
  throw PreconditionError(msg.str());
}

BoxSpline build_CA(const DMInstance& inst) {
  require_pointed(inst);
  const std::size_t t = inst.t;
  const Arrangement abs_arr = abs_arrangement(t);
  const auto regions = enumerate_regions(abs_arr);

  BoxSpline c{abs_arr, {}};
  c.pieces.emplace(SignVector(std::string(abs_arr.size(), '0')), QuasiPolynomial::constant(t, 1));

  // Eliminate X_n first; every suffix of columns stays pointed and bounds
  // its first unknown by h_j * max|b|, which is a linear form on each region.
  for (std::size_t j = inst.n; j-- > 0;) {
    const IntMatrix suffix = inst.columns(j);
    if (!check_pointed(suffix).pointed) throw InternalError("column suffix lost pointedness");
    const Rational h = compute_hA(suffix);
    std::map<SignVector, AffineForm> forms;
    for (const auto& r : regions) {
      const std::size_t j0 = abs_argmax(r.point);
      forms.emplace(r.signs, AffineForm::coordinate(t, j0, h * sgn(r.point[j0])));
    }
    IntVector a;
    for (const auto& row : inst.matrix) a.push_back(row[j]);
    c = bs_coarsen(bs_line_sum(c, a, BoundSpec::per_region(abs_arr, std::move(forms))));
  }
  return c;
}

}  // namespace qps
