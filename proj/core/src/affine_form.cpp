#include "qps/affine_form.hpp"

#include "qps/error.hpp"

namespace qps {

AffineForm AffineForm::coordinate(std::size_t dim, std::size_t index, const Rational& scale) {
  AffineForm f(dim);
  f.coeffs.at(index) = scale;
  return f;
}

AffineForm AffineForm::constant_form(std::size_t dim, const Rational& value) {
  AffineForm f(dim);
  f.constant = value;
  return f;
}

bool AffineForm::is_constant() const {
  for (const auto& c : coeffs) {
    if (c != 0) return false;
  }
  return true;
}

Rational AffineForm::eval(std::span<const Rational> x) const {
  if (x.size() != coeffs.size()) throw DimensionMismatch("affine form evaluated at wrong dimension");
  Rational v = constant;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (coeffs[i] != 0) v += coeffs[i] * x[i];
  }
  return v;
}

Rational AffineForm::eval(std::span<const Integer> x) const {
  if (x.size() != coeffs.size()) throw DimensionMismatch("affine form evaluated at wrong dimension");
  Rational v = constant;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (coeffs[i] != 0) v += coeffs[i] * x[i];
  }
  return v;
}

MultiPoly AffineForm::to_poly() const {
  const std::size_t n = coeffs.size();
  MultiPoly p = MultiPoly::constant(n, constant);
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs[i] != 0) p += MultiPoly::variable(n, i) * coeffs[i];
  }
  return p;
}

AffineForm::Scaled AffineForm::scaled() const {
  Integer den = constant.get_den();
  for (const auto& c : coeffs) den = lcm(den, Integer(c.get_den()));
  Scaled s;
  s.num.reserve(coeffs.size());
  for (const auto& c : coeffs) s.num.push_back(c.get_num() * (den / c.get_den()));
  s.num_constant = constant.get_num() * (den / constant.get_den());
  s.denominator = den;
  return s;
}

AffineForm& AffineForm::operator+=(const AffineForm& other) {
  if (other.dim() != dim()) throw DimensionMismatch("affine forms of different dimension");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
  constant += other.constant;
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& other) {
  if (other.dim() != dim()) throw DimensionMismatch("affine forms of different dimension");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= other.coeffs[i];
  constant -= other.constant;
  return *this;
}

AffineForm& AffineForm::operator*=(const Rational& c) {
  for (auto& v : coeffs) v *= c;
  constant *= c;
  return *this;
}

std::strong_ordering AffineForm::operator<=>(const AffineForm& other) const {
  if (auto c = coeffs.size() <=> other.coeffs.size(); c != 0) return c;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    int r = cmp(coeffs[i], other.coeffs[i]);
    if (r != 0) return r < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  int r = cmp(constant, other.constant);
  if (r != 0) return r < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string AffineForm::to_string(std::span<const std::string> names) const {
  return to_poly().to_string(names);
}

std::string AffineForm::key() const {
  std::string k;
  for (const auto& c : coeffs) {
    k += qps::to_string(c);
    k += ',';
  }
  k += qps::to_string(constant);
  return k;
}

MultiPoly poly_affine_substitute(const MultiPoly& p, std::span<const AffineForm> images) {
  if (images.size() != p.nvars()) throw DimensionMismatch("every variable needs an image");
  std::vector<MultiPoly> polys;
  polys.reserve(images.size());
  for (const auto& f : images) {
    if (f.dim() != images.front().dim()) throw DimensionMismatch("images must share one dimension");
    polys.push_back(f.to_poly());
  }
  return p.compose(polys);
}

}  // namespace qps
