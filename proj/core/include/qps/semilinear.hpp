#pragma once

#include "qps/arrangement.hpp"
#include "qps/box_spline.hpp"
#include "qps/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qps {

/// offset + K g_1 + ... + K g_n inside N^t or Z^t (the lattice). K is N
/// unless `coefficients` says Z. Generators must be linearly independent.
struct SimpleSet {
  std::size_t dim = 0;
  Domain lattice = Domain::Natural;
  Domain coefficients = Domain::Natural;
  IntVector offset;
  IntMatrix generators;

  static SimpleSet make(Domain lattice, IntVector offset, IntMatrix generators,
                        Domain coefficients = Domain::Natural);
  void validate() const;
};

/// Disjoint union of simple sets of one dimension and lattice. Disjointness
/// is a caller contract (see check_disjoint_sampled).
struct SemiSimpleSet {
  std::size_t dim = 0;
  Domain lattice = Domain::Natural;
  std::vector<SimpleSet> pieces;

  static SemiSimpleSet make(std::size_t dim, Domain lattice, std::vector<SimpleSet> pieces);
  void validate() const;
};

/// The first t1 coordinates are matched exactly (|x_i| = n_i), the last t2
/// are bounded (|x_i| <= m_i).
struct GrowthSpec {
  std::size_t t1 = 0;
  std::size_t t2 = 0;
};

/// Coefficients of x - offset in the generators, if x is in the set.
std::optional<RatVector> coefficients_of(const SimpleSet& s, std::span<const Integer> x);
bool membership(const SimpleSet& s, std::span<const Integer> x);

/// Generalized growth function of a set in N^t.
BoxSpline growth_plus(const SemiSimpleSet& x, GrowthSpec spec);

/// Signs alpha with alpha * offset and alpha * generators in N^t
/// (componentwise); PreconditionError if the piece straddles orthants.
std::vector<int> check_orthant_compatible(const SimpleSet& s);

/// Image of s under x |-> alpha * x, as a set of N^t.
SimpleSet reflect_into_orthant(const SimpleSet& s, std::span<const int> alpha);

/// Generalized growth function of a set in Z^t (pieces orthant-compatible).
BoxSpline growth_Z(const SemiSimpleSet& x, GrowthSpec spec);

/// Plain growth function: every coordinate bounded.
BoxSpline growth(const SemiSimpleSet& x);

/// Generalized growth, dispatching on the lattice.
BoxSpline growth(const SemiSimpleSet& x, GrowthSpec spec);

/// Lattice points of [-B, B]^t lying in two or more pieces.
std::vector<IntVector> check_disjoint_sampled(const SemiSimpleSet& x, std::int64_t bound);

}  // namespace qps
