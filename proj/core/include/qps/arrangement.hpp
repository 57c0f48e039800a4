#pragma once

#include "qps/affine_form.hpp"
#include "qps/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qps {

enum class Domain { Natural, Integer };

std::string to_string(Domain d);

/// normal . x + constant = 0 with integer data, stored canonically: the
/// gcd of all entries is 1 and the first nonzero normal entry is positive.
struct Hyperplane {
  IntVector normal;
  Integer constant = 0;

  /// Canonicalizes; throws PreconditionError for a zero normal.
  static Hyperplane make(IntVector normal, Integer constant = 0);
  /// Hyperplane {form = 0}, or nullopt when the form is constant.
  static std::optional<Hyperplane> from_form(const AffineForm& form);
  static Hyperplane coordinate(std::size_t dim, std::size_t index);

  std::size_t dim() const { return normal.size(); }
  Integer eval(std::span<const Integer> x) const;
  Rational eval(std::span<const Rational> x) const;
  /// Index i when this is the plane x_i = 0.
  std::optional<std::size_t> coordinate_index() const;
  bool through_origin() const { return constant == 0; }
  AffineForm form() const;

  bool operator==(const Hyperplane& other) const = default;
  bool operator<(const Hyperplane& other) const;
};

/// One of '+', '0', '-' per plane of an arrangement.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::string signs);

  static char symbol(int sign) { return sign > 0 ? '+' : (sign < 0 ? '-' : '0'); }

  std::size_t size() const { return signs_.size(); }
  int at(std::size_t k) const { return signs_[k] == '+' ? 1 : (signs_[k] == '-' ? -1 : 0); }
  char symbol_at(std::size_t k) const { return signs_[k]; }
  const std::string& str() const { return signs_; }

  /// Signs at the given plane indices, in order.
  SignVector project(std::span<const std::size_t> indices) const;
  SignVector without(std::size_t k) const;

  auto operator<=>(const SignVector&) const = default;

 private:
  std::string signs_;
};

struct RegionWitness {
  SignVector signs;
  IntVector point;
};

/// An ordered, duplicate-free family of canonical hyperplanes of R^t that
/// always contains the t coordinate planes (stored first), together with
/// the lattice the regions live in (N^t or Z^t).
class Arrangement {
 public:
  Arrangement() = default;
  Arrangement(std::size_t dim, Domain domain);
  Arrangement(std::size_t dim, Domain domain, std::span<const Hyperplane> planes);

  std::size_t dim() const { return dim_; }
  Domain domain() const { return domain_; }
  const std::vector<Hyperplane>& planes() const { return planes_; }
  std::size_t size() const { return planes_.size(); }
  const Hyperplane& operator[](std::size_t k) const { return planes_[k]; }

  std::optional<std::size_t> find(const Hyperplane& h) const;
  /// Appends h unless already present; returns its index.
  std::size_t add(const Hyperplane& h);
  bool is_conic() const;
  bool in_domain(std::span<const Integer> x) const;
  Arrangement without(std::size_t k) const;

  bool operator==(const Arrangement& other) const {
    return dim_ == other.dim_ && domain_ == other.domain_ && planes_ == other.planes_;
  }

 private:
  std::size_t dim_ = 0;
  Domain domain_ = Domain::Natural;
  std::vector<Hyperplane> planes_;
  std::map<Hyperplane, std::size_t> index_;
};

/// Throws DomainError when x is outside the arrangement's lattice.
SignVector sign_vector_of(const Arrangement& arr, std::span<const Integer> x);
/// No domain check; used for rational probe points.
SignVector sign_vector_at(const Arrangement& arr, std::span<const Rational> x);

/// Every sign vector whose region meets the domain lattice, each with an
/// integer witness, sorted by sign string.
std::vector<RegionWitness> enumerate_regions(const Arrangement& arr);

/// Union of the two plane families (a's order first).
Arrangement refine(const Arrangement& a, const Arrangement& b);

/// Parameter value at which the line x - l*a meets a plane: (normal . x +
/// constant) / (normal . a). Planes parallel to a have none.
std::optional<AffineForm> crossing_functional(const Hyperplane& plane, std::span<const Integer> a);

/// arr plus every plane needed so that, on each region, the relative order
/// of the crossing functionals, the extra forms and zero is constant.
Arrangement line_refinement(const Arrangement& arr, std::span<const Integer> a,
                            std::span<const AffineForm> extra_forms = {});

/// For each plane of sub, its index in super (throws if missing).
std::vector<std::size_t> plane_index_map(const Arrangement& sub, const Arrangement& super);

/// Integer point satisfying the sign conditions of `signs` restricted to
/// the first signs.size() planes, or nullopt if none exists.
std::optional<IntVector> region_point(const Arrangement& arr, const SignVector& signs);

}  // namespace qps
