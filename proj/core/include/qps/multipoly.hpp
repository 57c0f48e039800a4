#pragma once

#include "qps/rational.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace qps {

/// Sparse multivariate polynomial with rational coefficients over a fixed
/// number of variables. Variables are identified by position; the zero
/// polynomial has an empty term map and no stored coefficient is zero.
class MultiPoly {
 public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c);
  static MultiPoly variable(std::size_t nvars, std::size_t index);
  static MultiPoly monomial(std::size_t nvars, Exponents exps, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant coefficient (zero if absent).
  Rational constant_term() const;
  unsigned degree() const;
  unsigned degree_in(std::size_t var) const;

  void add_term(const Exponents& exps, const Rational& c);

  Rational eval(std::span<const Rational> x) const;
  Rational eval(std::span<const Integer> x) const;

  /// Substitutes images[i] for variable i. All images share one variable
  /// count, which becomes the variable count of the result.
  MultiPoly compose(std::span<const MultiPoly> images) const;

  /// Same polynomial over nvars() + count variables (new ones appended).
  MultiPoly extended(std::size_t count) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator-() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  bool operator==(const MultiPoly& other) const = default;

  /// Human-readable, e.g. "1/2*x1^2 + x2 - 3". Names default to x1..xn.
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void check_same(const MultiPoly& other) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

MultiPoly pow(const MultiPoly& p, unsigned e);

/// The one-variable polynomial p_j with p_j(x) = sum_{l=0..x} l^j for x >= 0
/// and p_j(-1) = 0.
const MultiPoly& faulhaber(unsigned j);

/// Given q(x_1..x_t, l) with the summation index at position `index`,
/// returns p with p(.., N, ..) = sum_{l=0..N} q(.., l, ..) for N >= 0 and
/// p(.., -1, ..) = 0. The index slot of the result holds the upper limit.
MultiPoly sum_over_index(const MultiPoly& q, std::size_t index);

}  // namespace qps
