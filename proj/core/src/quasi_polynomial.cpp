#include "qps/quasi_polynomial.hpp"

#include "qps/error.hpp"

#include <algorithm>
#include <numeric>

namespace qps {

std::int64_t residue_count(const Periods& periods) {
  std::int64_t n = 1;
  for (auto p : periods) n *= p;
  return n;
}

namespace {

struct PolyLess {
  bool operator()(const MultiPoly* a, const MultiPoly* b) const { return a->terms() < b->terms(); }
};

Residues reduced(const PeriodLattice& l, Residues r) {
  l.reduce_in_place(r);
  return r;
}

// q's polynomial for every class of the sublattice l, by position.
std::vector<const MultiPoly*> dense_over(const QuasiPolynomial& q, const PeriodLattice& l) {
  const PeriodLattice& own = q.lattice();
  std::vector<const MultiPoly*> mine(static_cast<std::size_t>(own.index()), nullptr);
  for (const auto& [r, p] : q.table()) mine[static_cast<std::size_t>(own.position(r))] = &p;
  if (l == own) return mine;
  std::vector<const MultiPoly*> out(static_cast<std::size_t>(l.index()), nullptr);
  std::size_t pos = 0;
  Residues s;
  l.for_each_class([&](const Residues& r) {
    s = r;
    own.reduce_in_place(s);
    out[pos++] = mine[static_cast<std::size_t>(own.position(s))];
  });
  return out;
}

// Class ids over positions of l: 0 for the zero polynomial, equal ids for
// equal polynomials.
std::vector<int> class_ids(const QuasiPolynomial& q) {
  const PeriodLattice& l = q.lattice();
  std::vector<int> ids(static_cast<std::size_t>(l.index()), 0);
  std::map<const MultiPoly*, int, PolyLess> intern;
  for (const auto& [r, p] : q.table()) {
    auto [it, inserted] = intern.try_emplace(&p, static_cast<int>(intern.size()) + 1);
    ids[static_cast<std::size_t>(l.position(r))] = it->second;
  }
  return ids;
}

IntVector to_integers(const Residues& r) {
  IntVector v;
  v.reserve(r.size());
  for (auto x : r) v.emplace_back(static_cast<long>(x));
  return v;
}

std::vector<IntVector> rows_of(const PeriodLattice& l) {
  std::vector<IntVector> rows;
  for (const auto& row : l.basis()) rows.push_back(to_integers(row));
  return rows;
}

// The translations v with ids[r + v] == ids[r] for every r in `domain`,
// together with l. Candidates are differences within the rarest id, so
// `domain` must be closed under the translations searched for.
PeriodLattice stabilizer(const PeriodLattice& l, const std::vector<int>& ids, const std::vector<std::int64_t>& domain) {
  std::map<int, std::vector<std::int64_t>> members;
  for (auto pos : domain) members[ids[static_cast<std::size_t>(pos)]].push_back(pos);
  const std::vector<std::int64_t>* smallest = nullptr;
  for (const auto& [id, list] : members) {
    if (smallest == nullptr || list.size() < smallest->size()) smallest = &list;
  }
  PeriodLattice k = l;
  if (smallest == nullptr || smallest->size() < 2) return k;
  const std::size_t t = l.dim();
  const Residues r0 = l.representative(smallest->front());
  std::vector<Residues> reps;
  reps.reserve(domain.size());
  for (auto pos : domain) reps.push_back(l.representative(pos));
  Residues v(t);
  Residues s(t);
  for (std::size_t c = 1; c < smallest->size(); ++c) {
    const Residues rc = l.representative((*smallest)[c]);
    for (std::size_t i = 0; i < t; ++i) v[i] = rc[i] - r0[i];
    Residues kv = v;
    k.reduce_in_place(kv);
    if (std::all_of(kv.begin(), kv.end(), [](std::int64_t x) { return x == 0; })) continue;
    bool ok = true;
    for (std::size_t d = 0; d < domain.size() && ok; ++d) {
      for (std::size_t i = 0; i < t; ++i) s[i] = reps[d][i] + v[i];
      l.reduce_in_place(s);
      ok = ids[static_cast<std::size_t>(l.position(s))] == ids[static_cast<std::size_t>(domain[d])];
    }
    if (!ok) continue;
    auto rows = rows_of(k);
    rows.push_back(to_integers(v));
    k = PeriodLattice::generated(t, rows);
  }
  return k;
}

std::vector<std::int64_t> proper_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

}  // namespace

void QuasiPolynomial::throw_dimension(const char* what) { throw DimensionMismatch(what); }

QuasiPolynomial::QuasiPolynomial(PeriodLattice lattice) : dim_(lattice.dim()), lattice_(std::move(lattice)) {}

QuasiPolynomial::QuasiPolynomial(std::size_t dim, const Periods& periods) : dim_(dim) {
  if (periods.size() != dim_) throw DimensionMismatch("period vector length differs from dimension");
  lattice_ = PeriodLattice::diagonal(periods);
}

QuasiPolynomial QuasiPolynomial::constant(std::size_t dim, const Rational& c) {
  QuasiPolynomial q(dim);
  q.set(Residues(dim, 0), MultiPoly::constant(dim, c));
  return q;
}

QuasiPolynomial QuasiPolynomial::from_poly(const MultiPoly& p) {
  QuasiPolynomial q(p.nvars());
  q.set(Residues(p.nvars(), 0), p);
  return q;
}

void QuasiPolynomial::set(const Residues& r, MultiPoly p) {
  if (r.size() != dim_) throw DimensionMismatch("residue vector has wrong length");
  if (reduced(lattice_, r) != r) throw PreconditionError("residue out of range");
  if (p.nvars() != dim_) throw DimensionMismatch("class polynomial has wrong variable count");
  if (p.is_zero()) {
    table_.erase(r);
  } else {
    table_[r] = std::move(p);
  }
}

MultiPoly QuasiPolynomial::at(const Residues& r) const {
  if (r.size() != dim_) throw DimensionMismatch("residue vector has wrong length");
  auto it = table_.find(reduced(lattice_, r));
  return it == table_.end() ? MultiPoly(dim_) : it->second;
}

const MultiPoly* QuasiPolynomial::find_exact(const Residues& r) const {
  auto it = table_.find(r);
  return it == table_.end() ? nullptr : &it->second;
}

Rational QuasiPolynomial::eval(std::span<const Integer> x) const {
  auto it = table_.find(residues_of(x));
  return it == table_.end() ? Rational(0) : it->second.eval(x);
}

unsigned QuasiPolynomial::degree() const {
  unsigned d = 0;
  for (const auto& [r, p] : table_) d = std::max(d, p.degree());
  return d;
}

QuasiPolynomial QuasiPolynomial::refined(const PeriodLattice& finer) const {
  if (finer.dim() != dim_) throw DimensionMismatch("lattice dimension differs from quasi-polynomial");
  if (finer == lattice_) return *this;
  if (!lattice_.contains(finer)) throw InternalError("refinement must use a sublattice");
  QuasiPolynomial out(finer);
  const auto view = dense_over(*this, finer);
  std::int64_t pos = 0;
  finer.for_each_class([&](const Residues& r) {
    if (const MultiPoly* p = view[static_cast<std::size_t>(pos++)]) out.table_.emplace(r, *p);
  });
  return out;
}

QuasiPolynomial QuasiPolynomial::normalized() const {
  if (table_.empty()) return QuasiPolynomial(dim_);
  const auto ids = class_ids(*this);
  std::vector<std::int64_t> all(ids.size());
  std::iota(all.begin(), all.end(), 0);
  const PeriodLattice k = stabilizer(lattice_, ids, all);
  if (k == lattice_) return *this;
  QuasiPolynomial out(k);
  for (const auto& [r, p] : table_) out.table_.try_emplace(reduced(k, r), p);
  return out;
}

QuasiPolynomial QuasiPolynomial::restricted(std::span<const Integer> base, const IntMatrix& directions) const {
  if (base.size() != dim_) throw DimensionMismatch("base point has wrong dimension");
  if (table_.empty()) return QuasiPolynomial(dim_);
  const std::size_t t = dim_;
  // S: the classes the affine lattice meets form one coset of S / L.
  auto rows = rows_of(lattice_);
  for (const auto& d : directions) {
    if (d.size() != t) throw DimensionMismatch("direction has wrong dimension");
    rows.push_back(d);
  }
  const PeriodLattice s = PeriodLattice::generated(t, rows);
  const Residues b0 = s.reduce(base);
  std::vector<std::int64_t> care;
  std::int64_t pos = 0;
  lattice_.for_each_class([&](const Residues& r) {
    if (reduced(s, r) == b0) care.push_back(pos);
    ++pos;
  });
  const auto ids = class_ids(*this);
  const PeriodLattice k = stabilizer(lattice_, ids, care);

  // Coarsen further along coordinate directions while the result still
  // separates the classes of the coset that k separates.
  PeriodLattice w = k;
  for (std::size_t i = 0; i < t; ++i) {
    IntVector e(t, Integer(0));
    e[i] = 1;
    for (std::int64_t m : proper_divisors(order_in(w, e))) {
      auto wrows = rows_of(w);
      IntVector step(t, Integer(0));
      step[i] = m;
      wrows.push_back(std::move(step));
      PeriodLattice next = PeriodLattice::generated(t, wrows);
      if (intersect(next, s) == k) {
        w = std::move(next);
        break;
      }
    }
  }
  QuasiPolynomial out(w);
  for (auto c : care) {
    if (ids[static_cast<std::size_t>(c)] == 0) continue;
    const Residues r = lattice_.representative(c);
    out.table_.try_emplace(reduced(w, r), table_.at(r));
  }
  return out;
}

QuasiPolynomial QuasiPolynomial::operator-() const {
  QuasiPolynomial out = *this;
  for (auto& [r, p] : out.table_) p = -p;
  return out;
}

QuasiPolynomial& QuasiPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    table_.clear();
    return *this;
  }
  for (auto& [r, p] : table_) p *= c;
  return *this;
}

QuasiPolynomial qp_combination(std::size_t dim,
                               std::span<const std::pair<const QuasiPolynomial*, Rational>> terms) {
  std::vector<std::pair<const QuasiPolynomial*, Rational>> live;
  for (const auto& [q, c] : terms) {
    if (q->dim() != dim) throw DimensionMismatch("quasi-polynomials of different dimension");
    if (!q->is_zero() && c != 0) live.emplace_back(q, c);
  }
  if (live.empty()) return QuasiPolynomial(dim);
  if (live.size() == 1 && live[0].second == 1) return *live[0].first;
  PeriodLattice l = live[0].first->lattice();
  for (const auto& [q, c] : live) l = intersect(l, q->lattice());

  std::vector<MultiPoly> acc(static_cast<std::size_t>(l.index()), MultiPoly(dim));
  for (const auto& [q, c] : live) {
    const auto view = dense_over(*q, l);
    for (std::size_t pos = 0; pos < view.size(); ++pos) {
      if (view[pos] == nullptr) continue;
      if (c == 1) {
        acc[pos] += *view[pos];
      } else if (c == -1) {
        acc[pos] -= *view[pos];
      } else {
        acc[pos] += *view[pos] * c;
      }
    }
  }
  QuasiPolynomial out(l);
  std::int64_t pos = 0;
  l.for_each_class([&](const Residues& r) {
    auto& p = acc[static_cast<std::size_t>(pos++)];
    if (!p.is_zero()) out.set(r, std::move(p));
  });
  return out;
}

QuasiPolynomial qp_add_raw(const QuasiPolynomial& a, const QuasiPolynomial& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("quasi-polynomials of different dimension");
  const std::pair<const QuasiPolynomial*, Rational> terms[] = {{&a, Rational(1)}, {&b, Rational(1)}};
  return qp_combination(a.dim(), terms);
}

QuasiPolynomial qp_add(const QuasiPolynomial& a, const QuasiPolynomial& b) {
  return qp_add_raw(a, b).normalized();
}

QuasiPolynomial qp_sub(const QuasiPolynomial& a, const QuasiPolynomial& b) { return qp_add(a, -b); }

QuasiPolynomial qp_rebase(const std::map<Residues, QuasiPolynomial>& family, std::int64_t d,
                          std::size_t dim) {
  if (d < 1) throw PreconditionError("rebase period must be positive");
  PeriodLattice l = PeriodLattice::scaled(dim, d);
  for (const auto& [key, member] : family) {
    if (key.size() != dim || member.dim() != dim) throw DimensionMismatch("rebase family has wrong dimension");
    l = intersect(l, member.lattice());
  }
  auto q = QuasiPolynomial::build(l, [&](const Residues& r) {
    Residues k(dim);
    for (std::size_t i = 0; i < dim; ++i) k[i] = r[i] % d;
    auto it = family.find(k);
    return it == family.end() ? MultiPoly(dim) : it->second.at(r);
  });
  return q.normalized();
}

QuasiPolynomial floor_affine(const AffineForm& form, Rounding mode) {
  const std::size_t t = form.dim();
  auto s = form.scaled();
  const Integer& den = s.denominator;
  // The class of x only matters through num . x mod den.
  const PeriodLattice l = PeriodLattice::congruences(t, {s.num}, to_int64(den));
  MultiPoly base(t);
  for (std::size_t i = 0; i < t; ++i) {
    if (s.num[i] != 0) base += MultiPoly::variable(t, i) * Rational(s.num[i]);
  }
  return QuasiPolynomial::build(l, [&](const Residues& r) {
    Integer v = s.num_constant;
    for (std::size_t i = 0; i < t; ++i) v += s.num[i] * r[i];
    Integer shift = mode == Rounding::Floor ? Integer(-mod(v, den)) : Integer(mod(-v, den));
    MultiPoly p = base + MultiPoly::constant(t, Rational(s.num_constant + shift));
    p *= make_rational(1, den);
    return p;
  });
}

QuasiPolynomial compose_poly_qp(const MultiPoly& p, std::size_t slot, const QuasiPolynomial& g,
                                const PeriodLattice* context) {
  const std::size_t t = g.dim();
  if (p.nvars() != t + 1) throw DimensionMismatch("composed polynomial needs dim + 1 variables");
  if (slot > t) throw DimensionMismatch("slot index out of range");
  if (context != nullptr && context->dim() != t) throw DimensionMismatch("context lattice has wrong dimension");
  const PeriodLattice l = context == nullptr ? g.lattice() : intersect(g.lattice(), *context);
  std::vector<MultiPoly> images(t + 1);
  for (std::size_t v = 0, x = 0; v <= t; ++v) {
    if (v != slot) images[v] = MultiPoly::variable(t, x++);
  }
  return QuasiPolynomial::build(l, [&](const Residues& r) {
    MultiPoly gr = g.at(r);
    IntVector witness(r.begin(), r.end());
    if (!is_integer(gr.eval(std::span<const Integer>(witness)))) {
      throw PreconditionError("composition argument is not integer-valued");
    }
    images[slot] = std::move(gr);
    return p.compose(images);
  });
}

QuasiPolynomial pullback(const QuasiPolynomial& f, const IntMatrix& m, std::span<const Integer> c) {
  const std::size_t t = f.dim();
  if (m.size() != t || c.size() != t) throw DimensionMismatch("pullback matrix rows must match dimension");
  const std::size_t k = t == 0 ? 0 : m[0].size();
  for (const auto& row : m) {
    if (row.size() != k) throw DimensionMismatch("ragged pullback matrix");
  }
  const PeriodLattice l = preimage(f.lattice(), m);
  std::vector<MultiPoly> images(t);
  for (std::size_t i = 0; i < t; ++i) {
    MultiPoly img = MultiPoly::constant(k, Rational(c[i]));
    for (std::size_t j = 0; j < k; ++j) {
      if (m[i][j] != 0) img += MultiPoly::variable(k, j) * Rational(m[i][j]);
    }
    images[i] = std::move(img);
  }
  std::map<Residues, MultiPoly> cache;
  IntVector x(t);
  auto out = QuasiPolynomial::build(l, [&](const Residues& s) {
    for (std::size_t i = 0; i < t; ++i) {
      x[i] = c[i];
      for (std::size_t j = 0; j < k; ++j) x[i] += m[i][j] * s[j];
    }
    const Residues r = f.residues_of(x);
    const MultiPoly* src = f.find_exact(r);
    if (src == nullptr) return MultiPoly(k);
    auto it = cache.find(r);
    if (it == cache.end()) it = cache.emplace(r, src->compose(images)).first;
    return it->second;
  });
  return out.normalized();
}

}  // namespace qps
