#pragma once

#include "qps/affine_form.hpp"
#include "qps/arrangement.hpp"
#include "qps/quasi_polynomial.hpp"

#include <map>
#include <span>
#include <vector>

namespace qps {

/// A function on the lattice of an arrangement that agrees with one
/// quasi-polynomial on every region. Regions missing from `pieces`
/// evaluate to zero.
struct BoxSpline {
  Arrangement arrangement;
  std::map<SignVector, QuasiPolynomial> pieces;

  std::size_t dim() const { return arrangement.dim(); }
  Domain domain() const { return arrangement.domain(); }
  const QuasiPolynomial* piece(const SignVector& s) const;

  /// 1 at the origin, 0 elsewhere, on the coordinate arrangement.
  static BoxSpline origin_indicator(std::size_t dim, Domain domain);
  /// The constant c on every region of arr.
  static BoxSpline constant(const Arrangement& arr, const Rational& c);
};

/// Upper end of the summation interval of a line sum. For MinRatio it is
/// the minimum of `forms`; for PerRegionAffine it is the form attached to
/// the region of `regions` that contains the point.
struct BoundSpec {
  enum class Kind { MinRatio, PerRegionAffine };

  Kind kind = Kind::MinRatio;
  std::vector<AffineForm> forms;
  Arrangement regions;
  std::map<SignVector, AffineForm> region_forms;
  bool closed_low = true;
  bool closed_high = true;

  /// min_i x_i / a_i over the coordinates with a_i > 0.
  static BoundSpec min_ratio(std::span<const Integer> a);
  static BoundSpec per_region(Arrangement regions, std::map<SignVector, AffineForm> forms);
};

/// Throws DomainError outside the lattice.
Rational bs_eval(const BoxSpline& f, std::span<const Integer> x);

/// Canonical representative of q on the lattice points of one region:
/// polynomials are reduced modulo the region's flat and residue classes the
/// flat never meets are dropped before the periods are minimized.
QuasiPolynomial restrict_to_region(const QuasiPolynomial& q, const Arrangement& arr, const SignVector& signs);

BoxSpline bs_add(const BoxSpline& f, const BoxSpline& g);

/// S(x) = sum of G(x - l a) over the integers l of [0, bound(x)] (ends as
/// flagged in the bound).
BoxSpline bs_line_sum(const BoxSpline& g, std::span<const Integer> a, const BoundSpec& bound);

/// y |-> F(M y + c) as a box spline on `domain`. Points whose image leaves
/// F's domain get the value zero.
BoxSpline bs_pullback(const BoxSpline& f, const IntMatrix& m, std::span<const Integer> c, Domain domain);

/// G(x_1..x_t1) = F(x_1..x_t1, h x_1, ..., h x_1).
BoxSpline bs_specialize(const BoxSpline& f, std::size_t t1, const Integer& h);

/// R(x) = F(alpha_1 x_1, ..., alpha_t x_t) over Z^t, alpha_i = +-1.
BoxSpline bs_reflect(const BoxSpline& f, std::span<const int> alpha);

/// T(x) = F(x - c), zero where x - c leaves F's domain.
BoxSpline bs_translate(const BoxSpline& f, std::span<const Integer> c);

/// Drops every non-coordinate plane whose removal does not change the
/// function, merging the regions on either side.
BoxSpline bs_coarsen(const BoxSpline& f);

}  // namespace qps
