#include "support.hpp"

#include "qps/error.hpp"
#include "qps/oracle.hpp"
#include "qps/semilinear.hpp"

using namespace qps;
using namespace qps::test;

namespace {

SimpleSet progression() { return SimpleSet::make(Domain::Natural, iv({1, 1}), im({{1, 2}})); }

SemiSimpleSet integers() {
  return SemiSimpleSet::make(1, Domain::Integer,
                             {SimpleSet::make(Domain::Integer, iv({0}), {}),
                              SimpleSet::make(Domain::Integer, iv({1}), im({{1}})),
                              SimpleSet::make(Domain::Integer, iv({-1}), im({{-1}}))});
}

SemiSimpleSet anti_diagonal() {
  return SemiSimpleSet::make(2, Domain::Integer, {SimpleSet::make(Domain::Integer, iv({0, 0}), im({{-1, 1}}))});
}

SemiSimpleSet quadrant() {
  return SemiSimpleSet::make(2, Domain::Natural, {SimpleSet::make(Domain::Natural, iv({0, 0}), im({{1, 0}, {0, 1}}))});
}

int oracle_mismatches(const SemiSimpleSet& x, GrowthSpec spec, const BoxSpline& f, long hi) {
  return count_differences(x.dim, 0, hi, [&](const IntVector& e) -> Rational { return bs_eval(f, e); },
                           [&](const IntVector& e) -> Rational { return Rational(oracle_growth(x, spec, e)); });
}

}  // namespace

TEST_SUITE("semilinear") {
  TEST_CASE("membership") {
    CHECK(membership(progression(), iv({3, 5})));
    CHECK_FALSE(membership(progression(), iv({2, 2})));
    CHECK(membership(progression(), iv({1, 1})));
    CHECK_FALSE(membership(progression(), iv({0, -1})));
    auto c = coefficients_of(progression(), iv({3, 5}));
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 2);
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(SimpleSet::make(Domain::Natural, iv({0, 0}), im({{1, 2}, {2, 4}})), PreconditionError);
    CHECK_THROWS_AS(SimpleSet::make(Domain::Natural, iv({0, 0}), im({{1}})), DimensionMismatch);
    CHECK_THROWS_AS(SimpleSet::make(Domain::Natural, iv({-1}), {}), PreconditionError);
  }

  TEST_CASE("growth_plus examples") {
    auto point = SemiSimpleSet::make(2, Domain::Natural, {SimpleSet::make(Domain::Natural, iv({0, 0}), {})});
    auto gp = growth_plus(point, {1, 1});
    for_box(2, 0, 10, [&](const IntVector& e) { CHECK(bs_eval(gp, e) == (e[0] == 0 ? 1 : 0)); });

    auto gq = growth_plus(quadrant(), {0, 2});
    for_box(2, 0, 15, [&](const IntVector& m) { CHECK(bs_eval(gq, m) == (m[0] + 1) * (m[1] + 1)); });

    auto x = SemiSimpleSet::make(2, Domain::Natural, {progression()});
    auto gr = growth_plus(x, {2, 0});
    for_box(2, 0, 25, [&](const IntVector& n) {
      CHECK(bs_eval(gr, n) == (n[1] == 2 * n[0] - 1 && n[0] >= 1 ? 1 : 0));
    });
    CHECK(oracle_mismatches(x, {0, 2}, growth_plus(x, {0, 2}), 20) == 0);
    CHECK(oracle_mismatches(x, {1, 1}, growth_plus(x, {1, 1}), 20) == 0);
  }

  TEST_CASE("orthant certificates") {
    auto a = check_orthant_compatible(SimpleSet::make(Domain::Integer, iv({-1, 2}), im({{-1, 0}, {-2, 3}})));
    CHECK(a == std::vector<int>{-1, 1});
    CHECK(check_orthant_compatible(SimpleSet::make(Domain::Integer, iv({0, 0}), im({{1, 0}}))) ==
          std::vector<int>{1, 1});
    CHECK_THROWS_AS(check_orthant_compatible(SimpleSet::make(Domain::Integer, iv({1, 0}), im({{-1, 0}}))),
                    PreconditionError);
  }

  TEST_CASE("reflection keeps counts") {
    auto s = SimpleSet::make(Domain::Integer, iv({-1, 2}), im({{-1, 0}, {-2, 3}}));
    auto alpha = check_orthant_compatible(s);
    auto r = reflect_into_orthant(s, alpha);
    CHECK(r.lattice == Domain::Natural);
    auto xs = SemiSimpleSet::make(2, Domain::Integer, {s});
    auto xr = SemiSimpleSet::make(2, Domain::Natural, {r});
    for (GrowthSpec spec : {GrowthSpec{0, 2}, GrowthSpec{1, 1}, GrowthSpec{2, 0}}) {
      for_box(2, 0, 12, [&](const IntVector& e) { CHECK(oracle_growth(xs, spec, e) == oracle_growth(xr, spec, e)); });
    }
  }

  TEST_CASE("growth over Z") {
    auto gz = growth_Z(integers(), {0, 1});
    for (long m = 0; m <= 20; ++m) CHECK(bs_eval(gz, iv({m})) == 2 * m + 1);
    CHECK(bs_eval(growth(integers()), iv({4})) == 9);

    auto ga = growth_Z(anti_diagonal(), {0, 2});
    for_box(2, 0, 20, [&](const IntVector& m) { CHECK(bs_eval(ga, m) == (m[0] < m[1] ? m[0] : m[1]) + 1); });

    // A single piece inside N^t gives the same function as growth_plus.
    auto inside = SemiSimpleSet::make(2, Domain::Integer, {SimpleSet::make(Domain::Integer, iv({1, 1}), im({{1, 2}}))});
    auto natural = SemiSimpleSet::make(2, Domain::Natural, {progression()});
    auto g1 = growth_Z(inside, {1, 1});
    auto g2 = growth_plus(natural, {1, 1});
    for_box(2, 0, 15, [&](const IntVector& e) { CHECK(bs_eval(g1, e) == bs_eval(g2, e)); });
  }

  TEST_CASE("growth matches the oracle") {
    auto mixed = SemiSimpleSet::make(
        2, Domain::Integer,
        {SimpleSet::make(Domain::Integer, iv({0, 0}), im({{-1, 1}})),
         SimpleSet::make(Domain::Integer, iv({1, -1}), im({{1, -2}})),
         SimpleSet::make(Domain::Integer, iv({2, 0}), im({{1, 0}, {1, 1}}))});
    REQUIRE(check_disjoint_sampled(mixed, 12).empty());
    for (GrowthSpec spec : {GrowthSpec{0, 2}, GrowthSpec{1, 1}, GrowthSpec{2, 0}}) {
      CHECK(oracle_mismatches(mixed, spec, growth(mixed, spec), 14) == 0);
    }
    CHECK(oracle_mismatches(integers(), {1, 0}, growth(integers(), {1, 0}), 20) == 0);
  }

  TEST_CASE("growth is additive over pieces") {
    auto a = SimpleSet::make(Domain::Natural, iv({0, 0}), im({{1, 1}}));
    auto b = SimpleSet::make(Domain::Natural, iv({1, 0}), im({{2, 1}}));
    auto both = growth_plus(SemiSimpleSet::make(2, Domain::Natural, {a, b}), {1, 1});
    auto ga = growth_plus(SemiSimpleSet::make(2, Domain::Natural, {a}), {1, 1});
    auto gb = growth_plus(SemiSimpleSet::make(2, Domain::Natural, {b}), {1, 1});
    for_box(2, 0, 15, [&](const IntVector& e) { CHECK(bs_eval(both, e) == bs_eval(ga, e) + bs_eval(gb, e)); });
  }

  TEST_CASE("check_disjoint_sampled") {
    auto ok = SemiSimpleSet::make(1, Domain::Natural,
                                  {SimpleSet::make(Domain::Natural, iv({0}), {}),
                                   SimpleSet::make(Domain::Natural, iv({1}), im({{1}}))});
    CHECK(check_disjoint_sampled(ok, 20).empty());
    auto bad = SemiSimpleSet::make(1, Domain::Natural,
                                   {SimpleSet::make(Domain::Natural, iv({0}), im({{1}})),
                                    SimpleSet::make(Domain::Natural, iv({2}), im({{1}}))});
    auto v = check_disjoint_sampled(bad, 20);
    REQUIRE(v.size() == 19);
    CHECK(v.front() == iv({2}));
    CHECK(v.back() == iv({20}));
    CHECK(check_disjoint_sampled(SemiSimpleSet::make(2, Domain::Natural, {progression()}), 20).empty());
  }

  TEST_CASE("growth rejects bad specs") {
    CHECK_THROWS_AS(growth(quadrant(), {1, 0}), PreconditionError);
    auto straddle = SemiSimpleSet::make(1, Domain::Integer, {SimpleSet::make(Domain::Integer, iv({1}), im({{-1}}))});
    CHECK_THROWS_AS(growth(straddle), PreconditionError);
  }
}
