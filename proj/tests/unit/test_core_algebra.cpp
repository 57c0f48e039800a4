#include "support.hpp"

#include "qps/affine_form.hpp"
#include "qps/error.hpp"
#include "qps/multipoly.hpp"
#include "qps/quasi_polynomial.hpp"

using namespace qps;
using namespace qps::test;

namespace {

MultiPoly var(std::size_t n, std::size_t i) { return MultiPoly::variable(n, i); }
MultiPoly cst(std::size_t n, const Rational& c) { return MultiPoly::constant(n, c); }

Rational direct_power_sum(unsigned j, long x) {
  Rational s = 0;
  for (long l = 0; l <= x; ++l) {
    Integer p = 1;
    for (unsigned k = 0; k < j; ++k) p *= l;
    s += p;
  }
  return s;
}

QuasiPolynomial parity(std::size_t dim) {
  // 1 on odd x_1, 0 on even.
  Periods p(dim, 1);
  p[0] = 2;
  return QuasiPolynomial::build(dim, p, [&](const Residues& r) {
    return r[0] == 1 ? cst(dim, 1) : MultiPoly(dim);
  });
}

Rational true_floor(const AffineForm& f, const IntVector& x, Rounding mode) {
  Rational v = f.eval(std::span<const Integer>(x));
  return Rational(mode == Rounding::Floor ? floor(v) : ceil(v));
}

}  // namespace

TEST_SUITE("core_algebra") {
  TEST_CASE("rationals are canonical and round-trip as p/q") {
    CHECK(to_string(q(4, -6)) == "-2/3");
    CHECK(to_string(Rational(0)) == "0/1");
    CHECK(parse_rational("-2/3") == q(-2, 3));
    CHECK(parse_rational("6/4") == q(3, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), SchemaError);
    CHECK_THROWS_AS(parse_rational("x"), SchemaError);
    CHECK(mod(Integer(-3), Integer(2)) == 1);
    CHECK(floor(q(-7, 2)) == -4);
    CHECK(ceil(q(-7, 2)) == -3);
  }

  TEST_CASE("poly_eval") {
    MultiPoly p = var(2, 0) * var(2, 0) + var(2, 1);
    CHECK(p.eval(std::span<const Integer>(iv({2, 3}))) == 7);
    CHECK(MultiPoly(3).eval(std::span<const Integer>(iv({5, -1, 2}))) == 0);
    MultiPoly x = var(1, 0);
    MultiPoly s = x * (x + cst(1, 1)) * (x * Rational(2) + cst(1, 1)) * q(1, 6);
    CHECK(s.eval(std::span<const Integer>(iv({4}))) == direct_power_sum(2, 4));
    CHECK(s.eval(std::span<const Integer>(iv({4}))) == 30);
    CHECK_THROWS_AS(p.eval(std::span<const Integer>(iv({1}))), DimensionMismatch);
  }

  TEST_CASE("faulhaber matches direct summation for j <= 8 on [-1, 50]") {
    for (unsigned j = 0; j <= 8; ++j) {
      const MultiPoly& p = faulhaber(j);
      for (long x = -1; x <= 50; ++x) {
        CHECK(p.eval(std::span<const Integer>(iv({x}))) == direct_power_sum(j, x));
      }
    }
    MultiPoly x = var(1, 0);
    CHECK(faulhaber(0) == x + cst(1, 1));
    CHECK(faulhaber(1) == x * (x + cst(1, 1)) * q(1, 2));
  }

  TEST_CASE("sum_over_index") {
    // variables (x1, l); the index slot becomes the upper limit N.
    const MultiPoly one = cst(2, 1);
    const MultiPoly lam = var(2, 1);
    const MultiPoly x1lam = var(2, 0) * var(2, 1);
    for (long x1 = 0; x1 <= 5; ++x1) {
      for (long n = -1; n <= 10; ++n) {
        Rational s1 = 0, s2 = 0, s3 = 0;
        for (long l = 0; l <= n; ++l) {
          s1 += 1;
          s2 += l;
          s3 += x1 * l;
        }
        IntVector pt = iv({x1, n});
        CHECK(sum_over_index(one, 1).eval(std::span<const Integer>(pt)) == s1);
        CHECK(sum_over_index(lam, 1).eval(std::span<const Integer>(pt)) == s2);
        CHECK(sum_over_index(x1lam, 1).eval(std::span<const Integer>(pt)) == s3);
      }
    }
    CHECK_THROWS(sum_over_index(one, 2));
  }

  TEST_CASE("poly_affine_substitute") {
    // Images over (x1, x2, mu).
    AffineForm x1 = AffineForm::coordinate(3, 0);
    AffineForm x2 = AffineForm::coordinate(3, 1);
    AffineForm mu = AffineForm::coordinate(3, 2);
    MultiPoly p = var(1, 0);
    std::vector<AffineForm> img{x1 - mu * Rational(2)};
    CHECK(poly_affine_substitute(p, img) == var(3, 0) - var(3, 2) * Rational(2));

    MultiPoly sq = var(1, 0) * var(1, 0);
    img = {x1 - mu};
    CHECK(poly_affine_substitute(sq, img) ==
          var(3, 0) * var(3, 0) - var(3, 0) * var(3, 2) * Rational(2) + var(3, 2) * var(3, 2));

    MultiPoly prod = var(2, 0) * var(2, 1);
    std::vector<AffineForm> img2{x1 - mu, x2 - mu * Rational(3)};
    MultiPoly r = poly_affine_substitute(prod, img2);
    for_box(3, 0, 2, [&](const IntVector& v) {
      Rational expect = (v[0] - v[2]) * (v[1] - 3 * v[2]);
      CHECK(r.eval(std::span<const Integer>(v)) == expect);
    });
  }

  TEST_CASE("qp_add") {
    QuasiPolynomial x = QuasiPolynomial::from_poly(var(1, 0));
    QuasiPolynomial sum = qp_add(x, parity(1));
    CHECK(sum.eval(std::span<const Integer>(iv({3}))) == 4);
    for (long v = 0; v <= 20; ++v) {
      CHECK(sum.eval(std::span<const Integer>(iv({v}))) == v + (v % 2));
    }
    CHECK(qp_add(x, QuasiPolynomial(1)) == x);

    auto period3 = QuasiPolynomial::build(1, {3}, [](const Residues& r) { return cst(1, r[0]); });
    CHECK(qp_add_raw(parity(1), period3).period() == 6);
    CHECK_THROWS_AS(qp_add(parity(1), parity(2)), DimensionMismatch);
  }

  TEST_CASE("qp_add, pullback and compose agree pointwise on [-20, 20]^t") {
    auto f = QuasiPolynomial::build(2, {2, 3}, [](const Residues& r) {
      return var(2, 0) * Rational(r[1]) + var(2, 1) * var(2, 1) * Rational(r[0] + 1);
    });
    auto g = QuasiPolynomial::build(2, {4, 1}, [](const Residues& r) {
      return var(2, 1) * Rational(r[0]) - cst(2, 1);
    });
    auto s = qp_add(f, g);
    CHECK(count_differences(2, -20, 20, [&](const IntVector& x) -> Rational { return s.eval(std::span<const Integer>(x)); },
                            [&](const IntVector& x) -> Rational {
                              return f.eval(std::span<const Integer>(x)) + g.eval(std::span<const Integer>(x));
                            }) == 0);

    IntMatrix m = im({{1, 2}, {-1, 3}});
    IntVector c = iv({1, -2});
    auto h = pullback(f, m, c);
    CHECK(count_differences(2, -20, 20, [&](const IntVector& y) -> Rational { return h.eval(std::span<const Integer>(y)); },
                            [&](const IntVector& y) -> Rational {
                              IntVector x{y[0] + 2 * y[1] + 1, -y[0] + 3 * y[1] - 2};
                              return f.eval(std::span<const Integer>(x));
                            }) == 0);

    AffineForm third(RatVector{q(1, 3), q(-1, 2)}, q(1, 5));
    auto fl = floor_affine(third);
    MultiPoly p = var(3, 0) * var(3, 2) + var(3, 2) * var(3, 2);
    auto comp = compose_poly_qp(p, 2, fl);
    CHECK(count_differences(2, -20, 20, [&](const IntVector& x) -> Rational { return comp.eval(std::span<const Integer>(x)); },
                            [&](const IntVector& x) -> Rational {
                              Rational gv(floor(third.eval(std::span<const Integer>(x))));
                              return Rational(x[0]) * gv + gv * gv;
                            }) == 0);
  }

  TEST_CASE("qp_rebase") {
    std::map<Residues, QuasiPolynomial> one{{{0}, QuasiPolynomial::from_poly(var(1, 0))}};
    CHECK(qp_rebase(one, 1, 1) == QuasiPolynomial::from_poly(var(1, 0)));

    std::map<Residues, QuasiPolynomial> par{{{0}, QuasiPolynomial::constant(1, 1)}, {{1}, QuasiPolynomial(1)}};
    auto even = qp_rebase(par, 2, 1);
    CHECK(even.period() == 2);
    for (long v = 0; v <= 10; ++v) CHECK(even.eval(std::span<const Integer>(iv({v}))) == (v % 2 == 0 ? 1 : 0));

    auto mod3 = QuasiPolynomial::build(1, {3}, [](const Residues& r) { return cst(1, r[0]); });
    std::map<Residues, QuasiPolynomial> mixed{{{0}, mod3}, {{1}, QuasiPolynomial::from_poly(var(1, 0))}};
    auto r = qp_rebase(mixed, 2, 1);
    CHECK(r.period() == 6);
    for (long v = 0; v <= 30; ++v) {
      Rational expect = v % 2 == 0 ? Rational(v % 3) : Rational(v);
      CHECK(r.eval(std::span<const Integer>(iv({v}))) == expect);
    }
  }

  TEST_CASE("floor_affine examples") {
    AffineForm f(RatVector{q(1, 2)}, q(-1, 2));
    auto fl = floor_affine(f);
    CHECK(fl.period() == 2);
    CHECK(fl.at({0}) == var(1, 0) * q(1, 2) - cst(1, 1));
    CHECK(fl.at({1}) == var(1, 0) * q(1, 2) - cst(1, q(1, 2)));

    AffineForm g(RatVector{Rational(1)}, Rational(3));
    CHECK(floor_affine(g) == QuasiPolynomial::from_poly(var(1, 0) + cst(1, 3)));
    CHECK(floor_affine(AffineForm::coordinate(1, 0)).eval(std::span<const Integer>(iv({-3}))) == -3);
  }

  TEST_CASE("floor_affine matches true floors and ceilings for random forms") {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t t = 1 + trial % 2;
      AffineForm f(t);
      for (std::size_t i = 0; i < t; ++i) f.coeffs[i] = make_rational(num(rng), den(rng));
      f.constant = make_rational(num(rng), den(rng));
      for (Rounding mode : {Rounding::Floor, Rounding::Ceil}) {
        auto fl = floor_affine(f, mode);
        const long bound = t == 1 ? 50 : 20;
        CHECK(count_differences(t, -bound, bound,
                                [&](const IntVector& x) -> Rational { return fl.eval(std::span<const Integer>(x)); },
                                [&](const IntVector& x) -> Rational { return true_floor(f, x, mode); }) == 0);
      }
    }
  }

  TEST_CASE("compose_poly_qp examples") {
    auto g = floor_affine(AffineForm(RatVector{q(1, 2)}, 0));
    // p(x, s) = s
    CHECK(compose_poly_qp(var(2, 1), 1, g) == g);
    auto sq = compose_poly_qp(var(2, 1) * var(2, 1), 1, g);
    CHECK(sq.eval(std::span<const Integer>(iv({5}))) == 4);
    for (long v = 0; v <= 10; ++v) CHECK(sq.eval(std::span<const Integer>(iv({v}))) == (v / 2) * (v / 2));

    auto plus = compose_poly_qp(var(2, 0) + var(2, 1), 1, parity(1));
    CHECK(plus.eval(std::span<const Integer>(iv({3}))) == 4);

    auto half = QuasiPolynomial::constant(1, q(1, 2));
    CHECK_THROWS_AS(compose_poly_qp(var(2, 1), 1, half), PreconditionError);
  }

  TEST_CASE("normalization finds the smallest periods and respects don't-care classes") {
    auto f = QuasiPolynomial::build(2, {4, 6}, [](const Residues& r) { return cst(2, r[0] % 2); });
    auto n = f.normalized();
    CHECK(n.lattice() == PeriodLattice::diagonal({2, 1}));
    CHECK(count_differences(2, -6, 6, [&](const IntVector& x) -> Rational { return n.eval(std::span<const Integer>(x)); },
                            [&](const IntVector& x) -> Rational { return f.eval(std::span<const Integer>(x)); }) == 0);

    // Only odd classes matter, and there the parity function is 1.
    auto c = parity(1).restricted(iv({1}), im({{2}}));
    CHECK(c == QuasiPolynomial::constant(1, 1));
  }

  TEST_CASE("operations are pure: repeated calls give identical values") {
    AffineForm f(RatVector{q(2, 3), q(-1, 4)}, q(1, 6));
    CHECK(floor_affine(f) == floor_affine(f));
    CHECK(qp_add(floor_affine(f), parity(2)) == qp_add(floor_affine(f), parity(2)));
  }
}
