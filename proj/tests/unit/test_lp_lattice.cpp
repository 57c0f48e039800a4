#include "support.hpp"

#include "qps/lattice.hpp"
#include "qps/lp.hpp"

using namespace qps;
using namespace qps::test;

TEST_SUITE("lp_lattice") {
  TEST_CASE("simplex: optimum, infeasibility, unboundedness") {
    // maximize x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (8/5, 6/5)
    lp::Problem p = lp::Problem::nonneg_vars(2);
    p.objective = {1, 1};
    p.add({1, 2}, lp::Relation::LessEqual, 4);
    p.add({3, 1}, lp::Relation::LessEqual, 6);
    auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.value == q(14, 5));
    CHECK(s.x == RatVector{q(8, 5), q(6, 5)});

    lp::Problem inf = lp::Problem::nonneg_vars(1);
    inf.add({1}, lp::Relation::LessEqual, -1);
    CHECK(lp::solve(inf).status == lp::Status::Infeasible);

    lp::Problem unb = lp::Problem::free_vars(1);
    unb.objective = {1};
    unb.add({1}, lp::Relation::GreaterEqual, 0);
    CHECK(lp::solve(unb).status == lp::Status::Unbounded);

    // Free variables and equalities; minimize |.| style objective.
    lp::Problem fr = lp::Problem::free_vars(2);
    fr.maximize = false;
    fr.objective = {1, 0};
    fr.add({1, 1}, lp::Relation::Equal, 3);
    fr.add({1, -1}, lp::Relation::GreaterEqual, -7);
    auto fs = lp::solve(fr);
    REQUIRE(fs.status == lp::Status::Optimal);
    CHECK(fs.value == -2);
  }

  TEST_CASE("simplex on a degenerate problem with redundant equalities") {
    lp::Problem p = lp::Problem::nonneg_vars(3);
    p.objective = {1, 1, 1};
    p.maximize = false;
    p.add({1, 1, 0}, lp::Relation::Equal, 1);
    p.add({2, 2, 0}, lp::Relation::Equal, 2);
    p.add({0, 1, 1}, lp::Relation::GreaterEqual, 0);
    auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.value == 1);
  }

  TEST_CASE("integer points of a flat") {
    // 2x - 3y + 1 = 0: x = 1 + 3k, y = 1 + 2k
    auto flat = IntegerFlat::solve(im({{2, -3}}), iv({1}), 2);
    REQUIRE_FALSE(flat.empty);
    REQUIRE(flat.basis.size() == 1);
    for (long k = -3; k <= 3; ++k) {
      IntVector x = flat.base;
      for (std::size_t i = 0; i < 2; ++i) x[i] += k * flat.basis[0][i];
      CHECK(2 * x[0] - 3 * x[1] + 1 == 0);
    }
    // y = 1 + 2k is always odd while x = 1 + 3k takes both parities.
    CHECK(mod(flat.base[1], 2) == 1);
    CHECK(mod(flat.basis[0][1], 2) == 0);
    CHECK(mod(flat.basis[0][0], 2) == 1);

    CHECK(IntegerFlat::solve(im({{2, 2}}), iv({1}), 2).empty);
  }

  TEST_CASE("flat reducer rewrites pivot variables") {
    // On x = 2y: the polynomial x - 2y is zero, x^2 becomes 4y^2.
    FlatReducer r({{1, -2}}, {0}, 2);
    MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    CHECK(r.reduce(x - y * Rational(2)).is_zero());
    CHECK(r.reduce(x * x) == y * y * Rational(4));
    CHECK(FlatReducer({{1, 1}, {2, 2}}, {0, 1}, 2).inconsistent());
  }

  TEST_CASE("rank and unique solve") {
    CHECK(rank({{1, 2}, {2, 4}}) == 1);
    CHECK(rank({{1, 2}, {0, 1}}) == 2);
    auto x = solve_unique({{1, 1}, {1, -1}}, {3, 1});
    REQUIRE(x);
    CHECK(*x == RatVector{2, 1});
    CHECK_FALSE(solve_unique({{1}, {1}}, {1, 2}).has_value());
  }

  TEST_CASE("period lattices are kept in Hermite normal form") {
    auto l = PeriodLattice::generated(2, im({{2, 1}, {0, 3}}));
    CHECK(l.basis() == std::vector<PeriodLattice::Row>{{6, 0}, {2, 1}});
    CHECK(l.index() == 6);
    CHECK(l.exponent() == 6);
    CHECK(l == PeriodLattice::generated(2, im({{0, 3}, {2, 1}, {4, 5}})));
    CHECK(l.reduce(iv({7, -2})) == Residues{5, 0});

    auto c = PeriodLattice::congruences(2, {iv({1, 2})}, 6);
    CHECK(c.index() == 6);
    CHECK(c.contains(iv({2, 2})));
    CHECK_FALSE(c.contains(iv({1, 0})));

    CHECK(intersect(PeriodLattice::diagonal({2, 1}), PeriodLattice::diagonal({1, 3})) == PeriodLattice::diagonal({2, 3}));
    CHECK(lattice_sum(PeriodLattice::diagonal({2, 1}), PeriodLattice::diagonal({1, 3})) == PeriodLattice(2));
    CHECK(order_in(PeriodLattice::diagonal({4, 6}), iv({2, 3})) == 2);
    // y |-> (y1 + y2, y2) lands in 2Z x Z exactly when y1 + y2 is even.
    CHECK(preimage(PeriodLattice::diagonal({2, 1}), im({{1, 1}, {0, 1}})) ==
          PeriodLattice::congruences(2, {iv({1, 1})}, 2));
  }

  TEST_CASE("lattice membership, reduction and intersection agree pointwise") {
    std::mt19937 rng(20240612);
    std::uniform_int_distribution<long> entry(-4, 4), dim(1, 3);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t t = dim(rng);
      auto random_lattice = [&] {
        IntMatrix rows;
        for (std::size_t k = 0; k < t + 1; ++k) {
          IntVector r(t);
          for (auto& v : r) v = entry(rng);
          rows.push_back(r);
        }
        for (std::size_t i = 0; i < t; ++i) {
          IntVector r(t, Integer(0));
          r[i] = 1 + (entry(rng) + 4) % 4;
          rows.push_back(r);
        }
        return PeriodLattice::generated(t, rows);
      };
      const auto a = random_lattice();
      const auto b = random_lattice();
      const auto both = intersect(a, b);
      const auto either = lattice_sum(a, b);
      CHECK(a.contains(both));
      CHECK(either.contains(a));
      CHECK(both.index() * either.index() == a.index() * b.index());
      for (int n = 0; n < 40; ++n) {
        IntVector x(t);
        for (auto& v : x) v = entry(rng) * 3 + entry(rng);
        const Residues r = a.reduce(x);
        for (std::size_t i = 0; i < t; ++i) {
          CHECK(r[i] >= 0);
          CHECK(r[i] < a.diagonal_entry(i));
        }
        IntVector diff(t);
        for (std::size_t i = 0; i < t; ++i) diff[i] = x[i] - r[i];
        CHECK(a.contains(diff));
        CHECK(both.contains(x) == (a.contains(x) && b.contains(x)));
        CHECK(a.position(r) < a.index());
        CHECK(a.representative(a.position(r)) == r);
      }
    }
  }
}
