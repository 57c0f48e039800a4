#include "qps/semilinear.hpp"

#include "qps/diophantine.hpp"
#include "qps/error.hpp"
#include "qps/lattice.hpp"

#include <algorithm>

namespace qps {

SimpleSet SimpleSet::make(Domain lattice, IntVector offset, IntMatrix generators, Domain coefficients) {
  SimpleSet s;
  s.dim = offset.size();
  s.lattice = lattice;
  s.coefficients = coefficients;
  s.offset = std::move(offset);
  s.generators = std::move(generators);
  s.validate();
  return s;
}

void SimpleSet::validate() const {
  if (offset.size() != dim) throw DimensionMismatch("offset length differs from dimension");
  std::vector<RatVector> rows;
  for (const auto& g : generators) {
    if (g.size() != dim) throw DimensionMismatch("generator length differs from dimension");
    rows.push_back(to_rational(g));
  }
  if (lattice == Domain::Natural) {
    auto negative = [](const IntVector& v) {
      return std::any_of(v.begin(), v.end(), [](const Integer& e) { return e < 0; });
    };
    if (negative(offset) || std::any_of(generators.begin(), generators.end(), negative)) {
      throw PreconditionError("a set of N^t needs non-negative offset and generators");
    }
    if (coefficients == Domain::Integer && !generators.empty()) {
      throw PreconditionError("Z-coefficient sets do not stay inside N^t");
    }
  }
  if (rank(rows) != generators.size()) throw PreconditionError("generators are not linearly independent");
}

SemiSimpleSet SemiSimpleSet::make(std::size_t dim, Domain lattice, std::vector<SimpleSet> pieces) {
  SemiSimpleSet x{dim, lattice, std::move(pieces)};
  x.validate();
  return x;
}

void SemiSimpleSet::validate() const {
  if (dim == 0) throw PreconditionError("set dimension must be positive");
  for (const auto& p : pieces) {
    if (p.dim != dim || p.lattice != lattice) throw DimensionMismatch("pieces must share dimension and lattice");
    p.validate();
  }
}

std::optional<RatVector> coefficients_of(const SimpleSet& s, std::span<const Integer> x) {
  if (x.size() != s.dim) throw DimensionMismatch("point dimension differs from set");
  std::vector<RatVector> a(s.dim, RatVector(s.generators.size()));
  RatVector b(s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) {
    for (std::size_t j = 0; j < s.generators.size(); ++j) a[i][j] = s.generators[j][i];
    b[i] = x[i] - s.offset[i];
  }
  if (s.generators.empty()) {
    if (std::any_of(b.begin(), b.end(), [](const Rational& v) { return v != 0; })) return std::nullopt;
    return RatVector{};
  }
  return solve_unique(a, b);
}

bool membership(const SimpleSet& s, std::span<const Integer> x) {
  auto m = coefficients_of(s, x);
  if (!m) return false;
  return std::all_of(m->begin(), m->end(), [&](const Rational& v) {
    return is_integer(v) && (s.coefficients == Domain::Integer || v >= 0);
  });
}

namespace {

void check_spec(const SemiSimpleSet& x, GrowthSpec spec) {
  if (spec.t1 + spec.t2 != x.dim) throw PreconditionError("growth spec t1 + t2 must equal the dimension");
}

// Count of points of the piece (in N^t, N coefficients) with x_i = n_i for
// i < t1 and x_i <= n_i beyond: one system row per coordinate.
BoxSpline piece_growth(const SimpleSet& s, GrowthSpec spec) {
  if (s.coefficients != Domain::Natural) throw PreconditionError("growth needs N-coefficient pieces");
  IntMatrix matrix(s.dim, IntVector(s.generators.size(), Integer(0)));
  for (std::size_t i = 0; i < s.dim; ++i) {
    for (std::size_t j = 0; j < s.generators.size(); ++j) matrix[i][j] = s.generators[j][i];
  }
  std::vector<RowRelation> rel(s.dim, RowRelation::Eq);
  for (std::size_t i = spec.t1; i < s.dim; ++i) rel[i] = RowRelation::Le;
  auto sys = DioSystem::make(std::move(matrix), s.offset, std::move(rel), s.generators.size());
  return count_system(slackify(sys));
}

BoxSpline sum_pieces(const std::vector<BoxSpline>& parts, std::size_t dim) {
  if (parts.empty()) return BoxSpline{Arrangement(dim, Domain::Natural), {}};
  BoxSpline acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = bs_coarsen(bs_add(acc, parts[i]));
  return acc;
}

}  // namespace

BoxSpline growth_plus(const SemiSimpleSet& x, GrowthSpec spec) {
  x.validate();
  check_spec(x, spec);
  if (x.lattice != Domain::Natural) throw PreconditionError("growth_plus needs a set of N^t");
  std::vector<BoxSpline> parts;
  for (const auto& p : x.pieces) parts.push_back(piece_growth(p, spec));
  return sum_pieces(parts, x.dim);
}

std::vector<int> check_orthant_compatible(const SimpleSet& s) {
  if (s.coefficients != Domain::Natural && !s.generators.empty()) {
    throw PreconditionError("a Z-coefficient piece is not contained in one orthant");
  }
  std::vector<int> alpha(s.dim, 1);
  for (std::size_t i = 0; i < s.dim; ++i) {
    bool pos = s.offset[i] > 0;
    bool neg = s.offset[i] < 0;
    for (const auto& g : s.generators) {
      pos = pos || g[i] > 0;
      neg = neg || g[i] < 0;
    }
    if (pos && neg) {
      throw PreconditionError("piece straddles orthants: coordinate " + std::to_string(i + 1) +
                              " has mixed signs in offset and generators");
    }
    if (neg) alpha[i] = -1;
  }
  return alpha;
}

SimpleSet reflect_into_orthant(const SimpleSet& s, std::span<const int> alpha) {
  if (alpha.size() != s.dim) throw DimensionMismatch("reflection vector has wrong length");
  SimpleSet r = s;
  r.lattice = Domain::Natural;
  for (std::size_t i = 0; i < s.dim; ++i) {
    r.offset[i] *= alpha[i];
    for (auto& g : r.generators) g[i] *= alpha[i];
  }
  r.validate();
  return r;
}

BoxSpline growth_Z(const SemiSimpleSet& x, GrowthSpec spec) {
  x.validate();
  check_spec(x, spec);
  // |x_i| is invariant under the reflection, so each piece counts like its
  // image in N^t; images of different pieces may overlap, which is harmless
  // because the pieces are summed separately.
  std::vector<BoxSpline> parts;
  for (const auto& p : x.pieces) {
    auto alpha = check_orthant_compatible(p);
    parts.push_back(piece_growth(reflect_into_orthant(p, alpha), spec));
  }
  return sum_pieces(parts, x.dim);
}

BoxSpline growth(const SemiSimpleSet& x, GrowthSpec spec) {
  return x.lattice == Domain::Natural ? growth_plus(x, spec) : growth_Z(x, spec);
}

BoxSpline growth(const SemiSimpleSet& x) { return growth(x, GrowthSpec{0, x.dim}); }

std::vector<IntVector> check_disjoint_sampled(const SemiSimpleSet& x, std::int64_t bound) {
  if (bound < 0) throw PreconditionError("sampling bound must be non-negative");
  const std::int64_t lo = x.lattice == Domain::Natural ? 0 : -bound;
  std::vector<IntVector> out;
  IntVector p(x.dim, Integer(lo));
  for (;;) {
    int hits = 0;
    for (const auto& piece : x.pieces) hits += membership(piece, p) ? 1 : 0;
    if (hits >= 2) out.push_back(p);
    std::size_t i = 0;
    for (; i < x.dim; ++i) {
      if (++p[i] <= bound) break;
      p[i] = lo;
    }
    if (i == x.dim) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qps
