#pragma once

#include "qps/multipoly.hpp"
#include "qps/rational.hpp"

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace qps {

/// sum_i coeffs[i] * x_i + constant, with rational data.
struct AffineForm {
  RatVector coeffs;
  Rational constant = 0;

  AffineForm() = default;
  explicit AffineForm(std::size_t dim) : coeffs(dim, Rational(0)) {}
  AffineForm(RatVector c, Rational k) : coeffs(std::move(c)), constant(std::move(k)) {}

  static AffineForm coordinate(std::size_t dim, std::size_t index, const Rational& scale = 1);
  static AffineForm constant_form(std::size_t dim, const Rational& value);

  std::size_t dim() const { return coeffs.size(); }
  bool is_constant() const;
  bool is_zero() const { return is_constant() && constant == 0; }

  Rational eval(std::span<const Rational> x) const;
  Rational eval(std::span<const Integer> x) const;

  MultiPoly to_poly() const;

  /// Same form written as (num . x + num_constant) / denominator with
  /// integer data and the smallest positive denominator.
  struct Scaled {
    IntVector num;
    Integer num_constant;
    Integer denominator;
  };
  Scaled scaled() const;

  AffineForm& operator+=(const AffineForm& other);
  AffineForm& operator-=(const AffineForm& other);
  AffineForm& operator*=(const Rational& c);
  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
  friend AffineForm operator*(AffineForm a, const Rational& c) { return a *= c; }
  friend AffineForm operator*(const Rational& c, AffineForm a) { return a *= c; }

  bool operator==(const AffineForm& other) const = default;
  std::strong_ordering operator<=>(const AffineForm& other) const;

  std::string to_string(std::span<const std::string> names = {}) const;
  /// Stable textual key, usable in caches.
  std::string key() const;
};

/// p with variable i replaced by images[i]; all images share one dimension,
/// which becomes the variable count of the result.
MultiPoly poly_affine_substitute(const MultiPoly& p, std::span<const AffineForm> images);

}  // namespace qps
