#include "qps/box_spline.hpp"

#include "qps/error.hpp"
#include "qps/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace qps {

const QuasiPolynomial* BoxSpline::piece(const SignVector& s) const {
  auto it = pieces.find(s);
  return it == pieces.end() ? nullptr : &it->second;
}

BoxSpline BoxSpline::origin_indicator(std::size_t dim, Domain domain) {
  BoxSpline out{Arrangement(dim, domain), {}};
  out.pieces.emplace(SignVector(std::string(dim, '0')), QuasiPolynomial::constant(dim, 1));
  return out;
}

BoxSpline BoxSpline::constant(const Arrangement& arr, const Rational& c) {
  BoxSpline out{arr, {}};
  if (c == 0) return out;
  for (const auto& region : enumerate_regions(arr)) {
    out.pieces.emplace(region.signs, QuasiPolynomial::constant(arr.dim(), c));
  }
  return out;
}

BoundSpec BoundSpec::min_ratio(std::span<const Integer> a) {
  BoundSpec b;
  b.kind = Kind::MinRatio;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) throw PreconditionError("min-ratio bound needs a non-negative direction");
    if (a[i] > 0) b.forms.push_back(AffineForm::coordinate(a.size(), i, make_rational(1, a[i])));
  }
  if (b.forms.empty()) throw PreconditionError("line direction must be nonzero");
  return b;
}

BoundSpec BoundSpec::per_region(Arrangement regions, std::map<SignVector, AffineForm> forms) {
  BoundSpec b;
  b.kind = Kind::PerRegionAffine;
  b.regions = std::move(regions);
  b.region_forms = std::move(forms);
  return b;
}

Rational bs_eval(const BoxSpline& f, std::span<const Integer> x) {
  if (x.size() != f.dim()) throw DimensionMismatch("point dimension differs from box spline");
  const QuasiPolynomial* q = f.piece(sign_vector_of(f.arrangement, x));
  return q == nullptr ? Rational(0) : q->eval(x);
}

QuasiPolynomial restrict_to_region(const QuasiPolynomial& q, const Arrangement& arr, const SignVector& signs) {
  if (q.is_zero()) return QuasiPolynomial(q.dim());
  if (signs.size() != arr.size()) throw DimensionMismatch("sign vector length differs from arrangement");
  const std::size_t t = arr.dim();
  IntMatrix e;
  IntVector c;
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs.at(k) != 0) continue;
    e.push_back(arr[k].normal);
    c.push_back(arr[k].constant);
  }
  if (e.empty()) return q.normalized();
  auto flat = IntegerFlat::solve(e, c, t);
  if (flat.empty) return QuasiPolynomial(t);
  std::vector<RatVector> er;
  for (const auto& row : e) er.push_back(to_rational(row));
  FlatReducer reducer(er, to_rational(c), t);
  return q.transformed([&](const MultiPoly& p) { return reducer.reduce(p); }).restricted(flat.base, flat.basis);
}

BoxSpline bs_add(const BoxSpline& f, const BoxSpline& g) {
  BoxSpline out{refine(f.arrangement, g.arrangement), {}};
  const auto mf = plane_index_map(f.arrangement, out.arrangement);
  const auto mg = plane_index_map(g.arrangement, out.arrangement);
  for (const auto& region : enumerate_regions(out.arrangement)) {
    const QuasiPolynomial* p = f.piece(region.signs.project(mf));
    const QuasiPolynomial* q = g.piece(region.signs.project(mg));
    if (p == nullptr && q == nullptr) continue;
    QuasiPolynomial sum = p == nullptr ? *q : (q == nullptr ? *p : qp_add_raw(*p, *q));
    sum = restrict_to_region(sum, out.arrangement, region.signs);
    if (!sum.is_zero()) out.pieces.emplace(region.signs, std::move(sum));
  }
  return out;
}

namespace {

// x |-> sum_{l=0..U(x)} p(x - l a), U = floor(e) (closed) or ceil(e) - 1
// (open), valid wherever e(x) >= 0. Lambda is split by residue mod d, the
// period of l |-> class of x - l a; on each class the summand is a single
// polynomial and the number of terms is a floor of an affine form.
QuasiPolynomial partial_sum(const QuasiPolynomial& p, std::span<const Integer> a, const AffineForm& e,
                            bool open) {
  const std::size_t t = p.dim();
  const PeriodLattice& lp = p.lattice();
  const std::int64_t d = order_in(lp, a);
  const auto s = e.scaled();
  const Integer step = s.denominator * d;
  Residues a64(t);
  for (std::size_t i = 0; i < t; ++i) a64[i] = to_int64(a[i]);

  std::vector<MultiPoly> shift_images(t);
  std::vector<MultiPoly> outer_images(t + 1);
  for (std::size_t i = 0; i < t; ++i) outer_images[i] = MultiPoly::variable(t, i);

  std::vector<QuasiPolynomial> terms;
  for (std::int64_t j = 0; j < d; ++j) {
    AffineForm fj(t);
    for (std::size_t i = 0; i < t; ++i) fj.coeffs[i] = make_rational(s.num[i], step);
    fj.constant = make_rational(s.num_constant - j * s.denominator - (open ? 1 : 0), step);
    const QuasiPolynomial count = floor_affine(fj);

    for (std::size_t i = 0; i < t; ++i) {
      // x_i - (j + mu d) a_i over variables (x, mu)
      shift_images[i] = MultiPoly::variable(t + 1, i) - MultiPoly::constant(t + 1, Rational(j * a[i])) -
                        MultiPoly::variable(t + 1, t) * Rational(d * a[i]);
    }
    std::map<Residues, MultiPoly> summed;
    Residues src(t);
    terms.push_back(QuasiPolynomial::build(intersect(count.lattice(), lp), [&](const Residues& rho) {
      for (std::size_t i = 0; i < t; ++i) src[i] = rho[i] - j * a64[i];
      lp.reduce_in_place(src);
      const MultiPoly* q = p.find_exact(src);
      if (q == nullptr) return MultiPoly(t);
      auto it = summed.find(src);
      if (it == summed.end()) it = summed.emplace(src, sum_over_index(q->compose(shift_images), t)).first;
      outer_images[t] = count.at(rho);
      return it->second.compose(outer_images);
    }));
  }
  std::vector<std::pair<const QuasiPolynomial*, Rational>> parts;
  for (const auto& q : terms) parts.emplace_back(&q, Rational(1));
  return qp_combination(t, parts);
}

struct Cut {
  Rational value;
  AffineForm form;
};

class LineSummer {
 public:
  LineSummer(const BoxSpline& g, std::span<const Integer> a) : g_(g), a_(a.begin(), a.end()) {}

  // Sum over the lattice points of the region with witness w.
  QuasiPolynomial region_sum(std::span<const Integer> w, const AffineForm& bound, const BoundSpec& spec,
                             const std::vector<AffineForm>& crossings) {
    const std::size_t t = g_.dim();
    const Rational top = bound.eval(w);
    if (top < 0) throw PreconditionError("summation bound is negative on a region");
    std::vector<Cut> cuts{{Rational(0), AffineForm(t)}};
    for (const auto& f : crossings) {
      Rational v = f.eval(w);
      if (v > 0 && v < top) cuts.push_back({std::move(v), f});
    }
    if (top > 0) cuts.push_back({top, bound});
    std::stable_sort(cuts.begin(), cuts.end(), [](const Cut& x, const Cut& y) { return x.value < y.value; });
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](const Cut& x, const Cut& y) { return x.value == y.value; }),
               cuts.end());

    const RatVector wr = to_rational(w);
    std::vector<std::pair<const QuasiPolynomial*, Rational>> parts;
    auto add = [&](const QuasiPolynomial& q, bool negate) { parts.emplace_back(&q, Rational(negate ? -1 : 1)); };
    const std::size_t last = cuts.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
      bool include;
      if (last == 0) {
        include = spec.closed_low && spec.closed_high;
      } else if (i == 0) {
        include = spec.closed_low;
      } else if (i == last) {
        include = spec.closed_high;
      } else {
        include = true;
      }
      if (include) {
        if (auto key = piece_key(wr, cuts[i].value)) {
          add(sum(*key, cuts[i].form, false), false);
          add(sum(*key, cuts[i].form, true), true);
        }
      }
      if (i < last) {
        if (auto key = piece_key(wr, (cuts[i].value + cuts[i + 1].value) / 2)) {
          add(sum(*key, cuts[i + 1].form, true), false);
          add(sum(*key, cuts[i].form, false), true);
        }
      }
    }
    return qp_combination(t, parts);
  }

 private:
  // G's region at w - l a, if G has a piece there.
  std::optional<SignVector> piece_key(const RatVector& w, const Rational& l) const {
    RatVector y(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) y[i] = w[i] - l * a_[i];
    SignVector s = sign_vector_at(g_.arrangement, y);
    if (g_.piece(s) == nullptr) return std::nullopt;
    return s;
  }

  const QuasiPolynomial& sum(const SignVector& key, const AffineForm& e, bool open) {
    std::string k = key.str();
    k += open ? "|o|" : "|c|";
    k += e.key();
    auto it = cache_.find(k);
    if (it == cache_.end()) it = cache_.emplace(k, partial_sum(*g_.piece(key), a_, e, open)).first;
    return it->second;
  }

  const BoxSpline& g_;
  IntVector a_;
  std::unordered_map<std::string, QuasiPolynomial> cache_;
};

}  // namespace

BoxSpline bs_line_sum(const BoxSpline& g, std::span<const Integer> a, const BoundSpec& bound) {
  const std::size_t t = g.dim();
  if (a.size() != t) throw DimensionMismatch("direction dimension differs from box spline");
  if (std::all_of(a.begin(), a.end(), [](const Integer& v) { return v == 0; })) {
    throw PreconditionError("line direction must be nonzero");
  }
  std::vector<AffineForm> extra;
  if (bound.kind == BoundSpec::Kind::MinRatio) {
    if (g.domain() != Domain::Natural) throw PreconditionError("min-ratio bound needs the domain N^t");
    if (bound.forms.empty()) throw PreconditionError("min-ratio bound has no forms");
    extra = bound.forms;
  } else {
    std::set<AffineForm> distinct;
    for (const auto& [s, f] : bound.region_forms) distinct.insert(f);
    extra.assign(distinct.begin(), distinct.end());
  }

  BoxSpline out{line_refinement(g.arrangement, a, extra), {}};
  std::vector<std::size_t> bound_map;
  if (bound.kind == BoundSpec::Kind::PerRegionAffine) {
    out.arrangement = refine(out.arrangement, bound.regions);
    bound_map = plane_index_map(bound.regions, out.arrangement);
  }
  std::vector<AffineForm> crossings;
  for (const auto& h : g.arrangement.planes()) {
    if (auto f = crossing_functional(h, a)) crossings.push_back(std::move(*f));
  }

  LineSummer summer(g, a);
  for (const auto& region : enumerate_regions(out.arrangement)) {
    const AffineForm* form = nullptr;
    if (bound.kind == BoundSpec::Kind::MinRatio) {
      Rational best;
      for (const auto& f : bound.forms) {
        Rational v = f.eval(std::span<const Integer>(region.point));
        if (form == nullptr || v < best) {
          form = &f;
          best = std::move(v);
        }
      }
    } else {
      auto it = bound.region_forms.find(region.signs.project(bound_map));
      if (it == bound.region_forms.end()) throw PreconditionError("summation bound is undefined on a region");
      form = &it->second;
    }
    QuasiPolynomial q = summer.region_sum(region.point, *form, bound, crossings);
    q = restrict_to_region(q, out.arrangement, region.signs);
    if (!q.is_zero()) out.pieces.emplace(region.signs, std::move(q));
  }
  return out;
}

namespace {

IntVector apply(const IntMatrix& m, std::span<const Integer> y, std::span<const Integer> c) {
  IntVector out(c.begin(), c.end());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (m[i][j] != 0) out[i] += m[i][j] * y[j];
    }
  }
  return out;
}

SignVector signs_at(const Arrangement& arr, std::span<const Integer> x) {
  std::string s;
  for (const auto& h : arr.planes()) s.push_back(SignVector::symbol(sgn(h.eval(x))));
  return SignVector(std::move(s));
}

}  // namespace

BoxSpline bs_pullback(const BoxSpline& f, const IntMatrix& m, std::span<const Integer> c, Domain domain) {
  const std::size_t t = f.dim();
  if (m.size() != t || c.size() != t) throw DimensionMismatch("pullback matrix rows must match dimension");
  const std::size_t k = t == 0 ? 0 : m[0].size();
  BoxSpline out{Arrangement(k, domain), {}};
  for (const auto& h : f.arrangement.planes()) {
    IntVector normal(k, Integer(0));
    Integer constant = h.constant;
    bool nonzero = false;
    for (std::size_t i = 0; i < t; ++i) {
      if (h.normal[i] == 0) continue;
      constant += h.normal[i] * c[i];
      for (std::size_t j = 0; j < k; ++j) normal[j] += h.normal[i] * m[i][j];
    }
    for (const auto& v : normal) nonzero = nonzero || v != 0;
    if (nonzero) out.arrangement.add(Hyperplane::make(std::move(normal), std::move(constant)));
  }
  std::map<SignVector, QuasiPolynomial> pulled;
  for (const auto& region : enumerate_regions(out.arrangement)) {
    const IntVector y = apply(m, region.point, c);
    if (!f.arrangement.in_domain(y)) continue;
    const SignVector s = signs_at(f.arrangement, y);
    const QuasiPolynomial* p = f.piece(s);
    if (p == nullptr) continue;
    auto it = pulled.find(s);
    if (it == pulled.end()) it = pulled.emplace(s, pullback(*p, m, c)).first;
    QuasiPolynomial q = restrict_to_region(it->second, out.arrangement, region.signs);
    if (!q.is_zero()) out.pieces.emplace(region.signs, std::move(q));
  }
  return out;
}

BoxSpline bs_specialize(const BoxSpline& f, std::size_t t1, const Integer& h) {
  const std::size_t t = f.dim();
  if (t1 == 0 || t1 > t) throw DimensionMismatch("specialization keeps between 1 and t coordinates");
  if (h < 0) throw PreconditionError("specialization factor must be non-negative");
  IntMatrix m(t, IntVector(t1, Integer(0)));
  for (std::size_t i = 0; i < t; ++i) {
    if (i < t1) {
      m[i][i] = 1;
    } else {
      m[i][0] = h;
    }
  }
  return bs_pullback(f, m, IntVector(t, Integer(0)), Domain::Natural);
}

BoxSpline bs_reflect(const BoxSpline& f, std::span<const int> alpha) {
  const std::size_t t = f.dim();
  if (alpha.size() != t) throw DimensionMismatch("reflection vector has wrong length");
  IntMatrix m(t, IntVector(t, Integer(0)));
  for (std::size_t i = 0; i < t; ++i) {
    if (alpha[i] != 1 && alpha[i] != -1) throw PreconditionError("reflection entries must be +1 or -1");
    m[i][i] = alpha[i];
  }
  return bs_pullback(f, m, IntVector(t, Integer(0)), Domain::Integer);
}

BoxSpline bs_translate(const BoxSpline& f, std::span<const Integer> c) {
  const std::size_t t = f.dim();
  if (c.size() != t) throw DimensionMismatch("translation has wrong length");
  IntVector neg;
  for (const auto& v : c) neg.push_back(-v);
  IntMatrix id(t, IntVector(t, Integer(0)));
  for (std::size_t i = 0; i < t; ++i) id[i][i] = 1;

  const bool shift_inside = std::all_of(c.begin(), c.end(), [](const Integer& v) { return v >= 0; });
  if (f.domain() != Domain::Natural || !shift_inside) return bs_pullback(f, id, neg, f.domain());

  // N^t shifted into itself: regions of F move rigidly and everything
  // below the corner c is zero, so no enumeration is needed.
  BoxSpline out{Arrangement(t, Domain::Natural), {}};
  std::vector<std::size_t> image;
  for (const auto& h : f.arrangement.planes()) {
    Integer constant = h.constant;
    for (std::size_t i = 0; i < t; ++i) constant -= h.normal[i] * c[i];
    image.push_back(out.arrangement.add(Hyperplane::make(h.normal, constant)));
  }
  for (const auto& [s, p] : f.pieces) {
    std::string signs(out.arrangement.size(), '+');
    for (std::size_t k = 0; k < image.size(); ++k) signs[image[k]] = s.symbol_at(k);
    SignVector key(std::move(signs));
    QuasiPolynomial q = restrict_to_region(pullback(p, id, neg), out.arrangement, key);
    if (!q.is_zero()) out.pieces.emplace(std::move(key), std::move(q));
  }
  return out;
}

BoxSpline bs_coarsen(const BoxSpline& f) {
  Arrangement arr = f.arrangement;
  std::vector<RegionWitness> regions = enumerate_regions(arr);
  std::map<SignVector, QuasiPolynomial> pieces = f.pieces;
  const QuasiPolynomial zero(arr.dim());

  for (std::size_t k = arr.size(); k-- > arr.dim();) {
    std::map<SignVector, std::vector<std::size_t>> groups;
    for (std::size_t r = 0; r < regions.size(); ++r) groups[regions[r].signs.without(k)].push_back(r);

    bool ok = true;
    std::map<SignVector, QuasiPolynomial> merged;
    std::vector<RegionWitness> next;
    for (const auto& [key, members] : groups) {
      std::size_t cand = members.front();
      for (auto r : members) {
        if (regions[r].signs.at(k) != 0) {
          cand = r;
          break;
        }
      }
      auto find = [&](std::size_t r) -> const QuasiPolynomial& {
        auto it = pieces.find(regions[r].signs);
        return it == pieces.end() ? zero : it->second;
      };
      const QuasiPolynomial& cp = find(cand);
      for (auto r : members) {
        if (r == cand) continue;
        const QuasiPolynomial& mp = find(r);
        const bool same = regions[r].signs.at(k) != 0 ? cp == mp
                                                      : restrict_to_region(cp, arr, regions[r].signs) == mp;
        if (!same) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      if (!cp.is_zero()) merged.emplace(key, cp);
      next.push_back(RegionWitness{key, regions[cand].point});
    }
    if (!ok) continue;
    arr = arr.without(k);
    regions = std::move(next);
    pieces = std::move(merged);
  }
  return BoxSpline{std::move(arr), std::move(pieces)};
}

}  // namespace qps
