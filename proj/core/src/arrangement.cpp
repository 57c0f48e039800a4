#include "qps/arrangement.hpp"

#include "qps/error.hpp"
#include "qps/lattice.hpp"
#include "qps/lp.hpp"

#include <algorithm>

namespace qps {

std::string to_string(Domain d) { return d == Domain::Natural ? "N" : "Z"; }

Hyperplane Hyperplane::make(IntVector normal, Integer constant) {
  Integer g = abs(constant);
  bool nonzero = false;
  for (const auto& v : normal) {
    g = gcd(g, v);
    nonzero = nonzero || v != 0;
  }
  if (!nonzero) throw PreconditionError("hyperplane normal must be nonzero");
  int s = 0;
  for (const auto& v : normal) {
    if (v != 0) {
      s = sgn(v);
      break;
    }
  }
  if (s < 0) g = -g;
  for (auto& v : normal) v /= g;
  constant /= g;
  return Hyperplane{std::move(normal), std::move(constant)};
}

std::optional<Hyperplane> Hyperplane::from_form(const AffineForm& form) {
  if (form.is_constant()) return std::nullopt;
  auto s = form.scaled();
  return make(std::move(s.num), std::move(s.num_constant));
}

Hyperplane Hyperplane::coordinate(std::size_t dim, std::size_t index) {
  IntVector n(dim, Integer(0));
  n.at(index) = 1;
  return Hyperplane{std::move(n), 0};
}

Integer Hyperplane::eval(std::span<const Integer> x) const {
  if (x.size() != normal.size()) throw DimensionMismatch("point dimension differs from hyperplane");
  Integer v = constant;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (normal[i] != 0) v += normal[i] * x[i];
  }
  return v;
}

Rational Hyperplane::eval(std::span<const Rational> x) const {
  if (x.size() != normal.size()) throw DimensionMismatch("point dimension differs from hyperplane");
  Rational v = constant;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (normal[i] != 0) v += normal[i] * x[i];
  }
  return v;
}

std::optional<std::size_t> Hyperplane::coordinate_index() const {
  if (constant != 0) return std::nullopt;
  std::optional<std::size_t> idx;
  for (std::size_t i = 0; i < normal.size(); ++i) {
    if (normal[i] == 0) continue;
    if (normal[i] != 1 || idx) return std::nullopt;
    idx = i;
  }
  return idx;
}

AffineForm Hyperplane::form() const {
  AffineForm f(normal.size());
  for (std::size_t i = 0; i < normal.size(); ++i) f.coeffs[i] = normal[i];
  f.constant = constant;
  return f;
}

bool Hyperplane::operator<(const Hyperplane& other) const {
  if (normal != other.normal) return normal < other.normal;
  return constant < other.constant;
}

SignVector::SignVector(std::string signs) : signs_(std::move(signs)) {
  for (char c : signs_) {
    if (c != '+' && c != '0' && c != '-') throw SchemaError("sign vector may only contain '+', '0', '-'");
  }
}

SignVector SignVector::project(std::span<const std::size_t> indices) const {
  std::string out;
  out.reserve(indices.size());
  for (auto k : indices) out.push_back(signs_.at(k));
  return SignVector(std::move(out));
}

SignVector SignVector::without(std::size_t k) const {
  std::string out = signs_;
  out.erase(k, 1);
  return SignVector(std::move(out));
}

Arrangement::Arrangement(std::size_t dim, Domain domain) : dim_(dim), domain_(domain) {
  for (std::size_t i = 0; i < dim; ++i) add(Hyperplane::coordinate(dim, i));
}

Arrangement::Arrangement(std::size_t dim, Domain domain, std::span<const Hyperplane> planes)
    : Arrangement(dim, domain) {
  for (const auto& h : planes) add(h);
}

std::optional<std::size_t> Arrangement::find(const Hyperplane& h) const {
  auto it = index_.find(h);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Arrangement::add(const Hyperplane& h) {
  if (h.dim() != dim_) throw DimensionMismatch("hyperplane dimension differs from arrangement");
  auto [it, inserted] = index_.try_emplace(h, planes_.size());
  if (inserted) planes_.push_back(h);
  return it->second;
}

bool Arrangement::is_conic() const {
  return std::all_of(planes_.begin(), planes_.end(), [](const Hyperplane& h) { return h.through_origin(); });
}

bool Arrangement::in_domain(std::span<const Integer> x) const {
  if (x.size() != dim_) return false;
  if (domain_ == Domain::Integer) return true;
  return std::all_of(x.begin(), x.end(), [](const Integer& v) { return v >= 0; });
}

Arrangement Arrangement::without(std::size_t k) const {
  if (planes_[k].coordinate_index()) throw PreconditionError("coordinate planes cannot be removed");
  Arrangement out(dim_, domain_);
  for (std::size_t i = 0; i < planes_.size(); ++i) {
    if (i != k) out.add(planes_[i]);
  }
  return out;
}

SignVector sign_vector_of(const Arrangement& arr, std::span<const Integer> x) {
  if (!arr.in_domain(x)) throw DomainError("point outside the domain lattice");
  std::string s;
  s.reserve(arr.size());
  for (const auto& h : arr.planes()) s.push_back(SignVector::symbol(sgn(h.eval(x))));
  return SignVector(std::move(s));
}

SignVector sign_vector_at(const Arrangement& arr, std::span<const Rational> x) {
  std::string s;
  s.reserve(arr.size());
  for (const auto& h : arr.planes()) s.push_back(SignVector::symbol(sgn(h.eval(x))));
  return SignVector(std::move(s));
}

namespace {

// Lattice points with sign conditions: strict inequalities of integer forms
// are tightened to >= 1 / <= -1.
lp::Constraint sign_constraint(const Hyperplane& h, int sign) {
  lp::Constraint c;
  c.coeffs.reserve(h.dim());
  for (const auto& v : h.normal) c.coeffs.emplace_back(v);
  Rational k(h.constant);
  if (sign > 0) {
    c.relation = lp::Relation::GreaterEqual;
    c.rhs = 1 - k;
  } else if (sign < 0) {
    c.relation = lp::Relation::LessEqual;
    c.rhs = -1 - k;
  } else {
    c.relation = lp::Relation::Equal;
    c.rhs = -k;
  }
  return c;
}

std::optional<RatVector> rational_point(std::size_t dim, const std::vector<lp::Constraint>& cons) {
  lp::Problem p = lp::Problem::free_vars(dim);
  p.constraints = cons;
  auto sol = lp::solve(p);
  if (sol.status == lp::Status::Infeasible) return std::nullopt;
  return sol.x;
}

Integer box_bound(const Arrangement& arr) {
  // Integer programs with these planes have a solution inside this box
  // when they have one at all: (t+1) times a Hadamard bound on the
  // subdeterminants of the constraint data.
  Integer max_const = 0;
  std::vector<Integer> norms;
  for (const auto& h : arr.planes()) {
    max_const = std::max(max_const, Integer(abs(h.constant)));
    Integer sq = h.constant * h.constant;
    for (const auto& v : h.normal) sq += v * v;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), sq.get_mpz_t());
    norms.push_back(r + 1);
  }
  std::sort(norms.rbegin(), norms.rend());
  Integer delta = 1;
  for (std::size_t i = 0; i < std::min(norms.size(), arr.dim() + 1); ++i) delta *= norms[i];
  return Integer(arr.dim() + 1) * delta * (max_const + 1);
}

// Integer row and right-hand side of a constraint with rational data.
std::pair<IntVector, Integer> integer_row(const lp::Constraint& c) {
  Integer l = c.rhs.get_den();
  for (const auto& v : c.coeffs) l = lcm(l, Integer(v.get_den()));
  IntVector row;
  row.reserve(c.coeffs.size());
  for (const auto& v : c.coeffs) row.push_back(v.get_num() * (l / v.get_den()));
  return {std::move(row), c.rhs.get_num() * (l / c.rhs.get_den())};
}

// Integer point of {x : cons}. Equalities are solved exactly over Z first,
// so the search runs in the coordinates z of their integer solutions
// x = base + sum z_j basis_j, where every inequality g.z >= r is tightened
// to g/d . z >= ceil(r/d) with d = gcd(g). Branch and bound finishes the
// job inside the box |x_i| <= bound.
std::optional<IntVector> integer_point(std::size_t dim, std::vector<lp::Constraint> cons,
                                       const Integer& bound) {
  IntMatrix eq_rows;
  IntVector eq_consts;
  std::vector<std::pair<IntVector, Integer>> ge;  // row . x >= rhs
  for (const auto& c : cons) {
    auto [row, rhs] = integer_row(c);
    if (c.relation == lp::Relation::Equal) {
      eq_rows.push_back(std::move(row));
      eq_consts.push_back(-rhs);
    } else if (c.relation == lp::Relation::GreaterEqual) {
      ge.emplace_back(std::move(row), std::move(rhs));
    } else {
      for (auto& v : row) v = -v;
      ge.emplace_back(std::move(row), -rhs);
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, Integer(0));
    e[i] = 1;
    ge.emplace_back(e, -bound);
    e[i] = -1;
    ge.emplace_back(e, -bound);
  }
  const IntegerFlat flat = IntegerFlat::solve(eq_rows, eq_consts, dim);
  if (flat.empty) return std::nullopt;
  const std::size_t m = flat.basis.size();

  std::vector<lp::Constraint> reduced;
  for (const auto& [row, rhs] : ge) {
    IntVector g(m, Integer(0));
    Integer r = rhs, d = 0;
    for (std::size_t i = 0; i < dim; ++i) r -= row[i] * flat.base[i];
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < dim; ++i) g[j] += row[i] * flat.basis[j][i];
      d = gcd(d, g[j]);
    }
    if (d == 0) {
      if (r > 0) return std::nullopt;
      continue;
    }
    lp::Constraint c;
    for (auto& v : g) c.coeffs.emplace_back(v / d);
    c.relation = lp::Relation::GreaterEqual;
    c.rhs = ceil(make_rational(r, d));
    reduced.push_back(std::move(c));
  }
  auto lift = [&](const IntVector& z) {
    IntVector x = flat.base;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < dim; ++i) x[i] += z[j] * flat.basis[j][i];
    }
    return x;
  };
  if (m == 0) return lift({});

  std::size_t budget = 200000;
  std::vector<std::vector<lp::Constraint>> stack{std::move(reduced)};
  while (!stack.empty()) {
    if (budget-- == 0) throw InternalError("integer feasibility search exceeded its node budget");
    auto node = std::move(stack.back());
    stack.pop_back();
    auto z = rational_point(m, node);
    if (!z) continue;
    std::size_t k = m;
    for (std::size_t j = 0; j < m; ++j) {
      if (!is_integer((*z)[j])) {
        k = j;
        break;
      }
    }
    if (k == m) {
      IntVector out;
      for (const auto& v : *z) out.push_back(v.get_num());
      return lift(out);
    }
    RatVector e(m, Rational(0));
    e[k] = 1;
    auto up = node;
    up.push_back(lp::Constraint{e, lp::Relation::GreaterEqual, Rational(ceil((*z)[k]))});
    node.push_back(lp::Constraint{e, lp::Relation::LessEqual, Rational(floor((*z)[k]))});
    stack.push_back(std::move(up));
    stack.push_back(std::move(node));
  }
  return std::nullopt;
}

IntVector clear_denominators(const RatVector& x) {
  Integer l = 1;
  for (const auto& v : x) l = lcm(l, Integer(v.get_den()));
  IntVector out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.get_num() * (l / v.get_den()));
  return out;
}

class RegionEnumerator {
 public:
  explicit RegionEnumerator(const Arrangement& arr)
      : arr_(arr), conic_(arr.is_conic()), bound_(conic_ ? Integer(0) : box_bound(arr)) {}

  std::vector<RegionWitness> run() {
    std::string signs;
    std::vector<lp::Constraint> cons;
    if (conic_) {
      conic(0, signs, cons, RatVector(arr_.dim(), Rational(0)));
    } else {
      lattice(0, signs, cons, IntVector(arr_.dim(), Integer(0)));
    }
    std::sort(out_.begin(), out_.end(),
              [](const RegionWitness& a, const RegionWitness& b) { return a.signs < b.signs; });
    return std::move(out_);
  }

 private:
  bool allowed(std::size_t k, int sign) const {
    return !(sign < 0 && arr_.domain() == Domain::Natural && arr_[k].coordinate_index());
  }

  // Cones: rational witnesses scale to lattice points. Within a relatively
  // open convex cell holding w with plane value v != 0, the opposite side
  // is nonempty iff the plane itself meets the cell.
  void conic(std::size_t k, std::string& signs, std::vector<lp::Constraint>& cons, const RatVector& w) {
    if (k == arr_.size()) {
      out_.push_back(RegionWitness{SignVector(signs), clear_denominators(w)});
      return;
    }
    const Hyperplane& h = arr_[k];
    const Rational v = h.eval(std::span<const Rational>(w));
    const int s = sgn(v);
    std::vector<std::pair<int, RatVector>> children;
    auto probe = [&](int sign) -> std::optional<RatVector> {
      cons.push_back(sign_constraint(h, sign));
      auto x = rational_point(arr_.dim(), cons);
      cons.pop_back();
      return x;
    };
    if (s != 0) {
      children.emplace_back(s, w);
      if (allowed(k, -s)) {
        if (auto other = probe(-s)) {
          const Rational vo = h.eval(std::span<const Rational>(*other));
          Rational lam = v / (v - vo);
          RatVector mid(w.size());
          for (std::size_t i = 0; i < w.size(); ++i) mid[i] = w[i] + lam * ((*other)[i] - w[i]);
          children.emplace_back(0, std::move(mid));
          children.emplace_back(-s, std::move(*other));
        }
      } else if (auto zero = probe(0)) {
        children.emplace_back(0, std::move(*zero));
      }
    } else {
      children.emplace_back(0, w);
      for (int sign : {1, -1}) {
        if (!allowed(k, sign)) continue;
        if (auto x = probe(sign)) children.emplace_back(sign, std::move(*x));
      }
    }
    for (auto& [sign, pt] : children) {
      signs.push_back(SignVector::symbol(sign));
      cons.push_back(sign_constraint(h, sign));
      conic(k + 1, signs, cons, pt);
      cons.pop_back();
      signs.pop_back();
    }
  }

  void lattice(std::size_t k, std::string& signs, std::vector<lp::Constraint>& cons, const IntVector& w) {
    if (k == arr_.size()) {
      out_.push_back(RegionWitness{SignVector(signs), w});
      return;
    }
    const Hyperplane& h = arr_[k];
    const int s = sgn(h.eval(std::span<const Integer>(w)));
    for (int sign : {1, 0, -1}) {
      if (!allowed(k, sign)) continue;
      cons.push_back(sign_constraint(h, sign));
      std::optional<IntVector> pt;
      if (sign == s) {
        pt = w;
      } else {
        pt = integer_point(arr_.dim(), cons, bound_);
      }
      if (pt) {
        signs.push_back(SignVector::symbol(sign));
        lattice(k + 1, signs, cons, *pt);
        signs.pop_back();
      }
      cons.pop_back();
    }
  }

  const Arrangement& arr_;
  bool conic_;
  Integer bound_;
  std::vector<RegionWitness> out_;
};

}  // namespace

std::vector<RegionWitness> enumerate_regions(const Arrangement& arr) {
  return RegionEnumerator(arr).run();
}

std::optional<IntVector> region_point(const Arrangement& arr, const SignVector& signs) {
  if (signs.size() > arr.size()) throw DimensionMismatch("sign vector longer than arrangement");
  std::vector<lp::Constraint> cons;
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (arr.domain() == Domain::Natural && signs.at(k) < 0 && arr[k].coordinate_index()) return std::nullopt;
    cons.push_back(sign_constraint(arr[k], signs.at(k)));
  }
  if (arr.domain() == Domain::Natural) {
    for (std::size_t i = 0; i < arr.dim(); ++i) {
      RatVector e(arr.dim(), Rational(0));
      e[i] = 1;
      cons.push_back(lp::Constraint{e, lp::Relation::GreaterEqual, Rational(0)});
    }
  }
  if (arr.is_conic()) {
    auto x = rational_point(arr.dim(), cons);
    if (!x) return std::nullopt;
    return clear_denominators(*x);
  }
  return integer_point(arr.dim(), cons, box_bound(arr));
}

Arrangement refine(const Arrangement& a, const Arrangement& b) {
  if (a.dim() != b.dim() || a.domain() != b.domain()) {
    throw DimensionMismatch("refine needs arrangements of the same dimension and domain");
  }
  Arrangement out = a;
  for (const auto& h : b.planes()) out.add(h);
  return out;
}

std::optional<AffineForm> crossing_functional(const Hyperplane& plane, std::span<const Integer> a) {
  if (a.size() != plane.dim()) throw DimensionMismatch("direction dimension differs from plane");
  Integer gamma = 0;
  for (std::size_t i = 0; i < a.size(); ++i) gamma += plane.normal[i] * a[i];
  if (gamma == 0) return std::nullopt;
  return plane.form() * make_rational(1, gamma);
}

Arrangement line_refinement(const Arrangement& arr, std::span<const Integer> a,
                            std::span<const AffineForm> extra_forms) {
  if (a.size() != arr.dim()) throw DimensionMismatch("direction dimension differs from arrangement");
  if (std::all_of(a.begin(), a.end(), [](const Integer& v) { return v == 0; })) {
    throw PreconditionError("line direction must be nonzero");
  }
  std::vector<AffineForm> lambdas;
  for (const auto& h : arr.planes()) {
    if (auto f = crossing_functional(h, a)) lambdas.push_back(std::move(*f));
  }
  Arrangement out = arr;
  auto add = [&](const AffineForm& f) {
    if (auto h = Hyperplane::from_form(f)) out.add(*h);
  };
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t j = i + 1; j < lambdas.size(); ++j) add(lambdas[i] - lambdas[j]);
  }
  for (std::size_t g = 0; g < extra_forms.size(); ++g) {
    if (extra_forms[g].dim() != arr.dim()) throw DimensionMismatch("bound form has wrong dimension");
    add(extra_forms[g]);
    for (const auto& l : lambdas) add(l - extra_forms[g]);
    for (std::size_t h = g + 1; h < extra_forms.size(); ++h) add(extra_forms[g] - extra_forms[h]);
  }
  return out;
}

std::vector<std::size_t> plane_index_map(const Arrangement& sub, const Arrangement& super) {
  std::vector<std::size_t> out;
  out.reserve(sub.size());
  for (const auto& h : sub.planes()) {
    auto k = super.find(h);
    if (!k) throw InternalError("plane missing from refined arrangement");
    out.push_back(*k);
  }
  return out;
}

}  // namespace qps
