#include "support.hpp"

#include "qps/diophantine.hpp"
#include "qps/error.hpp"
#include "qps/oracle.hpp"

using namespace qps;
using namespace qps::test;

namespace {

DioSystem random_system(std::mt19937& rng, std::size_t t, std::size_t k) {
  std::uniform_int_distribution<long> e(0, 3), o(0, 2);
  for (;;) {
    IntMatrix m(t, IntVector(k));
    for (auto& row : m)
      for (auto& v : row) v = e(rng);
    bool zero_col = false;
    for (std::size_t j = 0; j < k; ++j) {
      bool z = true;
      for (std::size_t i = 0; i < t; ++i) z = z && m[i][j] == 0;
      zero_col = zero_col || z;
    }
    if (zero_col) continue;
    IntVector off(t);
    for (auto& v : off) v = o(rng);
    return DioSystem::make(m, off);
  }
}

}  // namespace

TEST_SUITE("diophantine") {
  TEST_CASE("slackify") {
    auto le = DioSystem::make(im({{1}}), {}, {RowRelation::Le});
    auto s = slackify(le);
    CHECK(s.cols == 2);
    CHECK(s.matrix == im({{1, 1}}));
    CHECK(s.all_equalities());

    auto eq = DioSystem::make(im({{1, 2}, {2, 3}}));
    auto same = slackify(eq);
    CHECK(same.matrix == eq.matrix);
    CHECK(same.cols == eq.cols);

    // t1 equalities, t2 inequalities, k unknowns -> k + t2 unknowns.
    auto mixed = DioSystem::make(im({{1, 0, 2}, {0, 1, 1}, {3, 1, 0}}), {},
                                 {RowRelation::Eq, RowRelation::Le, RowRelation::Le});
    auto ms = slackify(mixed);
    CHECK(ms.cols == 5);
    CHECK(ms.matrix == im({{1, 0, 2, 0, 0}, {0, 1, 1, 1, 0}, {3, 1, 0, 0, 1}}));
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(DioSystem::make(im({{1, -1}})), PreconditionError);
    CHECK_THROWS_AS(DioSystem::make(im({{1, 1}, {1}})), DimensionMismatch);
    CHECK_THROWS_AS(DioSystem::make(im({{1}}), iv({-1})), PreconditionError);
    CHECK_THROWS_AS(DioSystem::make(im({{1}}), iv({0, 0})), DimensionMismatch);
    auto zero = DioSystem::make(im({{1, 0}, {2, 0}}));
    CHECK_THROWS_WITH_AS(count_system(zero), doctest::Contains("zero column"), PreconditionError);
  }

  TEST_CASE("Example 1, single-column system") {
    auto f = count_system(DioSystem::make(im({{2}, {3}})));
    for_box(2, 0, 40, [&](const IntVector& n) {
      bool on = (n[0] == 0 && n[1] == 0) || (3 * n[0] == 2 * n[1] && n[0] > 0);
      CHECK(bs_eval(f, n) == (on ? 1 : 0));
    });
    CHECK(f.arrangement.size() == 3);
    CHECK(f.arrangement.find(Hyperplane::make(iv({3, -2}))).has_value());
    CHECK(enumerate_regions(f.arrangement).size() == 6);
  }

  TEST_CASE("Example 1, two-column system") {
    auto sys = DioSystem::make(im({{1, 2}, {2, 3}}));
    auto f = count_system(sys);
    CHECK(f.arrangement.find(Hyperplane::make(iv({3, -2}))).has_value());
    CHECK(f.arrangement.find(Hyperplane::make(iv({2, -1}))).has_value());
    CHECK(bs_eval(f, iv({2, 3})) == 1);
    CHECK(bs_eval(f, iv({0, 0})) == 1);
    CHECK(bs_eval(f, iv({1, 1})) == 0);
    CHECK(count_differences(2, 0, 40, [&](const IntVector& n) -> Rational { return bs_eval(f, n); },
                            [&](const IntVector& n) -> Rational { return Rational(oracle_count_nonneg(sys, n)); }) == 0);
  }

  TEST_CASE("small closed forms") {
    auto id = count_system(DioSystem::make(im({{1}})));
    for (long n = 0; n <= 30; ++n) CHECK(bs_eval(id, iv({n})) == 1);

    auto empty = count_system(DioSystem::make(IntMatrix(2, IntVector{}), {}, {}, 0));
    for_box(2, 0, 6, [&](const IntVector& n) { CHECK(bs_eval(empty, n) == (n[0] == 0 && n[1] == 0 ? 1 : 0)); });

    auto shifted = count_system(DioSystem::make(IntMatrix(2, IntVector{}), iv({1, 2}), {}, 0));
    for_box(2, 0, 6, [&](const IntVector& n) { CHECK(bs_eval(shifted, n) == (n[0] == 1 && n[1] == 2 ? 1 : 0)); });

    // x1 + x2 = n has n + 1 solutions; x1 + 2 x2 = n has floor(n/2) + 1.
    auto two = count_system(DioSystem::make(im({{1, 1}})));
    auto coins = count_system(DioSystem::make(im({{1, 2}})));
    for (long n = 0; n <= 30; ++n) {
      CHECK(bs_eval(two, iv({n})) == n + 1);
      CHECK(bs_eval(coins, iv({n})) == n / 2 + 1);
    }
  }

  TEST_CASE("inequality rows") {
    auto sys = DioSystem::make(im({{1, 1}}), iv({1}), {RowRelation::Le});
    auto f = count_system(slackify(sys));
    for (long n = 0; n <= 20; ++n) CHECK(bs_eval(f, iv({n})) == oracle_count_nonneg(sys, iv({n})));
    CHECK_THROWS_AS(count_system(sys), PreconditionError);
  }

  TEST_CASE("random systems agree with the oracle") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 24; ++trial) {
      std::size_t t = 1 + trial % 2, k = 1 + trial % 3;
      auto sys = random_system(rng, t, k);
      auto f = count_system(sys);
      long hi = t == 1 ? 30 : 14;
      CHECK_MESSAGE(count_differences(t, 0, hi, [&](const IntVector& n) -> Rational { return bs_eval(f, n); },
                                      [&](const IntVector& n) -> Rational { return Rational(oracle_count_nonneg(sys, n)); }) == 0,
                    "trial ", trial);
    }
  }

  TEST_CASE("column order does not change the count") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 6; ++trial) {
      auto sys = random_system(rng, 2, 3);
      IntMatrix swapped = sys.matrix;
      for (auto& row : swapped) std::swap(row[0], row[2]);
      auto f = count_system(sys);
      auto g = count_system(DioSystem::make(swapped, sys.offsets));
      CHECK(count_differences(2, 0, 12, [&](const IntVector& n) -> Rational { return bs_eval(f, n); },
                              [&](const IntVector& n) -> Rational { return bs_eval(g, n); }) == 0);
    }
  }

  TEST_CASE("adding a column never loses solutions") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 6; ++trial) {
      auto sys = random_system(rng, 2, 2);
      IntMatrix wider = sys.matrix;
      IntVector a{1 + trial % 2, trial % 3};
      for (std::size_t i = 0; i < 2; ++i) wider[i].push_back(a[i]);
      auto f = count_system(sys);
      auto g = count_system(DioSystem::make(wider, sys.offsets));
      for_box(2, 0, 10, [&](const IntVector& n) {
        Rational v = bs_eval(f, n);
        if (v > 0) CHECK(bs_eval(g, iv({n[0].get_si() + a[0].get_si(), n[1].get_si() + a[1].get_si()})) >= v);
      });
    }
  }

  TEST_CASE("counts are non-negative integers") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 6; ++trial) {
      auto f = count_system(random_system(rng, 2, 3));
      for_box(2, 0, 12, [&](const IntVector& n) {
        Rational v = bs_eval(f, n);
        CHECK(v >= 0);
        CHECK(is_integer(v));
      });
    }
  }
}
