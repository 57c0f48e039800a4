#pragma once

#include "qps/affine_form.hpp"
#include "qps/multipoly.hpp"
#include "qps/period_lattice.hpp"
#include "qps/rational.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace qps {

std::int64_t residue_count(const Periods& periods);

/// A function on Z^t that agrees, on each class of x modulo a full-rank
/// period lattice L, with one rational polynomial. Classes are keyed by
/// their canonical representative (see PeriodLattice), so negative
/// arguments dispatch like positive ones.
///
/// The table is sparse: a missing class is the zero polynomial. period()
/// is the least d with d Z^t inside L, so residues mod d determine the
/// class; per-coordinate periods are the diagonal lattices.
class QuasiPolynomial {
 public:
  using Table = std::map<Residues, MultiPoly>;

  QuasiPolynomial() = default;
  explicit QuasiPolynomial(std::size_t dim) : dim_(dim), lattice_(dim) {}
  explicit QuasiPolynomial(PeriodLattice lattice);
  QuasiPolynomial(std::size_t dim, const Periods& periods);

  static QuasiPolynomial constant(std::size_t dim, const Rational& c);
  static QuasiPolynomial from_poly(const MultiPoly& p);

  /// Table filled by fn(representative) -> MultiPoly for every class.
  template <class Fn>
  static QuasiPolynomial build(const PeriodLattice& lattice, Fn&& fn) {
    QuasiPolynomial q(lattice);
    lattice.for_each_class([&](const Residues& r) {
      MultiPoly p = fn(r);
      if (!p.is_zero()) q.table_.emplace_hint(q.table_.end(), r, std::move(p));
    });
    return q;
  }
  template <class Fn>
  static QuasiPolynomial build(std::size_t dim, const Periods& periods, Fn&& fn) {
    if (periods.size() != dim) throw_dimension("period vector length differs from dimension");
    return build(PeriodLattice::diagonal(periods), std::forward<Fn>(fn));
  }

  std::size_t dim() const { return dim_; }
  const PeriodLattice& lattice() const { return lattice_; }
  std::int64_t period() const { return lattice_.exponent(); }
  const Table& table() const { return table_; }

  /// r must be a canonical representative.
  void set(const Residues& r, MultiPoly p);
  /// Polynomial of the class containing r (r is reduced first); zero if absent.
  MultiPoly at(const Residues& r) const;
  const MultiPoly* find_exact(const Residues& r) const;

  Residues residues_of(std::span<const Integer> x) const { return lattice_.reduce(x); }
  Rational eval(std::span<const Integer> x) const;

  bool is_zero() const { return table_.empty(); }
  unsigned degree() const;

  /// Same function over a sublattice of the current one.
  QuasiPolynomial refined(const PeriodLattice& finer) const;

  /// Same function over the largest lattice that still separates every
  /// pair of classes with different polynomials.
  QuasiPolynomial normalized() const;

  /// A coarse representative that agrees with this one on the affine
  /// lattice base + span_Z(directions); other points are unconstrained.
  /// Polynomials are taken as given, so callers reduce them modulo the
  /// flat first.
  QuasiPolynomial restricted(std::span<const Integer> base, const IntMatrix& directions) const;

  /// Applies fn to every stored polynomial; zero results are dropped.
  template <class Fn>
  QuasiPolynomial transformed(Fn&& fn) const {
    QuasiPolynomial out(lattice_);
    for (const auto& [r, p] : table_) out.set(r, fn(p));
    return out;
  }

  QuasiPolynomial operator-() const;
  QuasiPolynomial& operator*=(const Rational& c);
  friend QuasiPolynomial operator*(QuasiPolynomial q, const Rational& c) { return q *= c; }

  bool operator==(const QuasiPolynomial& other) const = default;

 private:
  [[noreturn]] static void throw_dimension(const char* what);

  std::size_t dim_ = 0;
  PeriodLattice lattice_;
  Table table_;
};

/// Sum of c_k q_k over the intersection of their lattices, without
/// normalization.
QuasiPolynomial qp_combination(std::size_t dim, std::span<const std::pair<const QuasiPolynomial*, Rational>> terms);

/// Pointwise sum over the least common periods, without normalization.
QuasiPolynomial qp_add_raw(const QuasiPolynomial& a, const QuasiPolynomial& b);
/// Pointwise sum, normalized.
QuasiPolynomial qp_add(const QuasiPolynomial& a, const QuasiPolynomial& b);
QuasiPolynomial qp_sub(const QuasiPolynomial& a, const QuasiPolynomial& b);

/// Glues a residue-dispatched family (keys mod d) into one quasi-polynomial.
QuasiPolynomial qp_rebase(const std::map<Residues, QuasiPolynomial>& family, std::int64_t d,
                          std::size_t dim);

enum class Rounding { Floor, Ceil };

/// x |-> floor(form(x)) (or ceil) as a quasi-polynomial on Z^t.
QuasiPolynomial floor_affine(const AffineForm& form, Rounding mode = Rounding::Floor);

/// x |-> p(x, g(x)): p has g.dim() + 1 variables, the one at `slot` receives
/// g and the others map to x_1..x_t in order. The result's lattice is
/// intersected with `context` when given. Throws PreconditionError if g is
/// not integer-valued on a class.
QuasiPolynomial compose_poly_qp(const MultiPoly& p, std::size_t slot, const QuasiPolynomial& g,
                                const PeriodLattice* context = nullptr);

/// y |-> f(M y + c) for an integer matrix M (f.dim() rows) and offset c.
QuasiPolynomial pullback(const QuasiPolynomial& f, const IntMatrix& m, std::span<const Integer> c);

}  // namespace qps
