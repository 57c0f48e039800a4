#include "qps/period_lattice.hpp"

#include "qps/error.hpp"

#include <numeric>

namespace qps {

namespace {

constexpr std::int64_t kMaxIndex = std::int64_t{1} << 40;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Lower-triangular row Hermite normal form of the lattice spanned by rows.
// With m > 0 the rows m e_i are added first (m Z^t must lie in the lattice).
std::vector<IntVector> hermite(std::vector<IntVector> rows, std::size_t t, const Integer& m) {
  if (m > 0) {
    for (auto& row : rows) {
      for (auto& v : row) v = mod(v, m);
    }
    for (std::size_t i = 0; i < t; ++i) {
      IntVector e(t, Integer(0));
      e[i] = m;
      rows.push_back(std::move(e));
    }
  }
  std::vector<IntVector> basis(t);
  for (std::size_t c = t; c-- > 0;) {
    std::size_t p;
    for (;;) {
      p = rows.size();
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k][c] != 0 && (p == rows.size() || abs(rows[k][c]) < abs(rows[p][c]))) p = k;
      }
      if (p == rows.size()) throw InternalError("period lattice generators do not have full rank");
      bool done = true;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k == p || rows[k][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[k][c].get_mpz_t(), rows[p][c].get_mpz_t());
        for (std::size_t j = 0; j <= c; ++j) {
          if (rows[p][j] != 0) rows[k][j] -= q * rows[p][j];
        }
        if (rows[k][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[p][c] < 0) {
      for (auto& v : rows[p]) v = -v;
    }
    basis[c] = std::move(rows[p]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(p));
    std::erase_if(rows, [](const IntVector& r) {
      for (const auto& v : r) {
        if (v != 0) return false;
      }
      return true;
    });
  }
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i; j-- > 0;) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), basis[i][j].get_mpz_t(), basis[j][j].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k <= j; ++k) basis[i][k] -= q * basis[j][k];
    }
  }
  return basis;
}

// H^{-1} for the lower-triangular basis H.
std::vector<RatVector> inverse(const std::vector<PeriodLattice::Row>& h) {
  const std::size_t t = h.size();
  std::vector<RatVector> x(t, RatVector(t, Rational(0)));
  for (std::size_t i = 0; i < t; ++i) {
    x[i][i] = make_rational(1, h[i][i]);
    for (std::size_t j = 0; j < i; ++j) {
      Rational s = 0;
      for (std::size_t k = j; k < i; ++k) {
        if (h[i][k] != 0) s += Rational(Integer(static_cast<long>(h[i][k]))) * x[k][j];
      }
      x[i][j] = -s / Rational(Integer(static_cast<long>(h[i][i])));
    }
  }
  return x;
}

Integer int_of(std::int64_t v) { return Integer(static_cast<long>(v)); }

}  // namespace

PeriodLattice::PeriodLattice(std::size_t dim) : dim_(dim), basis_(dim, Row(dim, 0)) {
  for (std::size_t i = 0; i < dim; ++i) basis_[i][i] = 1;
}

PeriodLattice PeriodLattice::diagonal(const Periods& periods) {
  PeriodLattice l(periods.size());
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (periods[i] < 1) throw PreconditionError("quasi-polynomial periods must be positive");
    l.basis_[i][i] = periods[i];
  }
  l.finish();
  return l;
}

PeriodLattice PeriodLattice::scaled(std::size_t dim, std::int64_t d) { return diagonal(Periods(dim, d)); }

PeriodLattice PeriodLattice::generated(std::size_t dim, const std::vector<IntVector>& rows) {
  for (const auto& r : rows) {
    if (r.size() != dim) throw DimensionMismatch("lattice generator has wrong length");
  }
  PeriodLattice l;
  l.dim_ = dim;
  for (auto& row : hermite(rows, dim, 0)) {
    Row out;
    for (const auto& v : row) out.push_back(to_int64(v));
    l.basis_.push_back(std::move(out));
  }
  l.finish();
  return l;
}

PeriodLattice PeriodLattice::congruences(std::size_t dim, const std::vector<IntVector>& conditions, std::int64_t m) {
  if (m < 1) throw PreconditionError("congruence modulus must be positive");
  for (const auto& c : conditions) {
    if (c.size() != dim) throw DimensionMismatch("congruence has wrong length");
  }
  // M = Z^t + sum Z c_j / m, scaled by m; the lattice is the dual of M.
  PeriodLattice scaled_dual;
  scaled_dual.dim_ = dim;
  for (auto& row : hermite(conditions, dim, int_of(m))) {
    Row out;
    for (const auto& v : row) out.push_back(to_int64(v));
    scaled_dual.basis_.push_back(std::move(out));
  }
  scaled_dual.finish();
  PeriodLattice l;
  l.dim_ = dim;
  for (auto& row : hermite(scaled_dual.conditions(m), dim, int_of(m))) {
    Row out;
    for (const auto& v : row) out.push_back(to_int64(v));
    l.basis_.push_back(std::move(out));
  }
  l.finish();
  return l;
}

void PeriodLattice::finish() {
  index_ = 1;
  for (std::size_t i = 0; i < dim_; ++i) {
    index_ *= basis_[i][i];
    if (index_ > kMaxIndex) throw InternalError("period lattice index exceeds 2^40");
  }
  Integer e = 1;
  for (const auto& row : inverse(basis_)) {
    for (const auto& v : row) e = lcm(e, Integer(v.get_den()));
  }
  exponent_ = to_int64(e);
}

bool PeriodLattice::is_diagonal() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (basis_[i][j] != 0) return false;
    }
  }
  return true;
}

Residues PeriodLattice::reduce(std::span<const Integer> x) const {
  if (x.size() != dim_) throw DimensionMismatch("point has wrong dimension");
  Residues r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) r[i] = mod(x[i], exponent_);
  reduce_in_place(r);
  return r;
}

void PeriodLattice::reduce_in_place(Residues& r) const {
  for (std::size_t i = dim_; i-- > 0;) {
    const std::int64_t q = floor_div(r[i], basis_[i][i]);
    if (q == 0) continue;
    const Row& b = basis_[i];
    for (std::size_t j = 0; j <= i; ++j) r[j] -= q * b[j];
  }
}

bool PeriodLattice::contains(std::span<const Integer> v) const {
  const Residues r = reduce(v);
  for (auto x : r) {
    if (x != 0) return false;
  }
  return true;
}

bool PeriodLattice::contains(const PeriodLattice& sub) const {
  if (sub.dim_ != dim_) throw DimensionMismatch("lattices of different dimension");
  if (sub.exponent_ % exponent_ != 0) return false;
  for (const auto& row : sub.basis_) {
    Residues r = row;
    reduce_in_place(r);
    for (auto x : r) {
      if (x != 0) return false;
    }
  }
  return true;
}

std::int64_t PeriodLattice::position(const Residues& canonical) const {
  std::int64_t pos = 0;
  for (std::size_t i = dim_; i-- > 0;) pos = pos * basis_[i][i] + canonical[i];
  return pos;
}

Residues PeriodLattice::representative(std::int64_t position) const {
  Residues r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    r[i] = position % basis_[i][i];
    position /= basis_[i][i];
  }
  return r;
}

std::vector<IntVector> PeriodLattice::conditions(std::int64_t m) const {
  if (m % exponent_ != 0) throw InternalError("congruence modulus must be a multiple of the exponent");
  const auto x = inverse(basis_);
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < dim_; ++j) {
    IntVector c(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      Rational v = x[i][j] * Rational(int_of(m));
      c[i] = v.get_num();
    }
    out.push_back(std::move(c));
  }
  return out;
}

PeriodLattice intersect(const PeriodLattice& a, const PeriodLattice& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("lattices of different dimension");
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  const std::int64_t m = std::lcm(a.exponent(), b.exponent());
  auto conds = a.conditions(m);
  for (auto& c : b.conditions(m)) conds.push_back(std::move(c));
  return PeriodLattice::congruences(a.dim(), conds, m);
}

PeriodLattice lattice_sum(const PeriodLattice& a, const PeriodLattice& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("lattices of different dimension");
  std::vector<IntVector> rows;
  for (const auto* l : {&a, &b}) {
    for (const auto& row : l->basis()) {
      IntVector r;
      for (auto v : row) r.push_back(int_of(v));
      rows.push_back(std::move(r));
    }
  }
  return PeriodLattice::generated(a.dim(), rows);
}

PeriodLattice preimage(const PeriodLattice& l, const IntMatrix& m) {
  if (m.size() != l.dim()) throw DimensionMismatch("preimage matrix rows must match lattice dimension");
  const std::size_t k = m.empty() ? 0 : m[0].size();
  const std::int64_t e = l.exponent();
  std::vector<IntVector> conds;
  for (const auto& c : l.conditions(e)) {
    IntVector d(k, Integer(0));
    for (std::size_t i = 0; i < l.dim(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) d[j] += c[i] * m[i][j];
    }
    conds.push_back(std::move(d));
  }
  return PeriodLattice::congruences(k, conds, e);
}

std::int64_t order_in(const PeriodLattice& l, std::span<const Integer> v) {
  if (v.size() != l.dim()) throw DimensionMismatch("vector has wrong dimension");
  const std::int64_t m = l.exponent();
  std::int64_t k = 1;
  for (const auto& c : l.conditions(m)) {
    Integer s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += c[i] * v[i];
    const std::int64_t r = mod(s, m);
    k = std::lcm(k, m / std::gcd(m, r));
  }
  return k;
}

}  // namespace qps
