#include "support.hpp"

#include "qps/dahmen_micchelli.hpp"
#include "qps/error.hpp"
#include "qps/oracle.hpp"

using namespace qps;
using namespace qps::test;

namespace {

const IntMatrix kTriangle = im({{1, 0, 1}, {0, 1, 1}});

IntMatrix random_pointed(std::mt19937& rng, std::size_t t, std::size_t n) {
  std::uniform_int_distribution<long> e(-3, 3);
  for (;;) {
    IntMatrix a(t, IntVector(n));
    for (auto& row : a)
      for (auto& v : row) v = e(rng);
    if (check_pointed(a).pointed) return a;
  }
}

}  // namespace

TEST_SUITE("dahmen_micchelli") {
  TEST_CASE("check_pointed") {
    CHECK(check_pointed(kTriangle).pointed);
    auto c = check_pointed(im({{1, -1}}));
    CHECK_FALSE(c.pointed);
    CHECK(c.witness == iv({1, 1}));
    CHECK(check_pointed(im({{1}, {-1}})).pointed);
    auto z = check_pointed(im({{2, -3, 0}}));
    REQUIRE_FALSE(z.pointed);
    // Any certificate must be a genuine non-negative kernel vector.
    CHECK(2 * z.witness[0] - 3 * z.witness[1] == 0);
    CHECK(z.witness[0] >= 0);
    CHECK(z.witness[2] >= 0);
  }

  TEST_CASE("compute_hA") {
    CHECK(compute_hA(kTriangle) == 1);
    CHECK(compute_hA(im({{2}})) == q(1, 2));
    CHECK(compute_hA(im({{1}, {-1}})) == 1);
    CHECK_THROWS_AS(compute_hA(im({{1, -1}})), PreconditionError);
  }

  TEST_CASE("h_A bounds every solution: no solutions beyond the box") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      std::size_t t = 1 + trial % 2, n = 1 + trial % 3;
      auto a = random_pointed(rng, t, n);
      Rational h = compute_hA(a);
      // Count with a box twice as large; nothing may appear outside the h box.
      for_box(t, -6, 6, [&](const IntVector& b) {
        CHECK(oracle_count_pointed(a, b, h) == oracle_count_pointed(a, b, 2 * h + 1));
      });
    }
  }

  TEST_CASE("abs_arrangement and abs_argmax") {
    auto a1 = abs_arrangement(1);
    CHECK(a1.size() == 1);
    CHECK(enumerate_regions(a1).size() == 3);
    auto a2 = abs_arrangement(2);
    CHECK(a2.size() == 4);
    CHECK(a2.find(Hyperplane::make(iv({1, -1}))).has_value());
    CHECK(a2.find(Hyperplane::make(iv({1, 1}))).has_value());
    CHECK(abs_argmax(iv({3, -5})) == 1);
    CHECK(sign_vector_of(a2, iv({3, -5})).at(1) == -1);
    // The argmax is constant on every region.
    for (const auto& r : enumerate_regions(a2)) {
      for_box(2, -6, 6, [&](const IntVector& b) {
        if (sign_vector_of(a2, b) != r.signs) return;
        const std::size_t j0 = abs_argmax(r.point);
        CHECK(abs(b[abs_argmax(b)]) == abs(b[j0]));
        CHECK(sgn(b[j0]) == sgn(r.point[j0]));
      });
    }
  }

  TEST_CASE("build_CA examples") {
    auto c = build_CA(DMInstance::make(kTriangle));
    CHECK(bs_eval(c, iv({3, 5})) == 4);
    CHECK(bs_eval(c, iv({5, 3})) == 4);
    CHECK(bs_eval(c, iv({2, -1})) == 0);
    for_box(2, -12, 12, [&](const IntVector& b) {
      Rational expect = b[0] >= 0 && b[1] >= 0 ? Rational((b[0] < b[1] ? b[0] : b[1]) + 1) : Rational(0);
      CHECK(bs_eval(c, b) == expect);
    });

    auto d = build_CA(DMInstance::make(im({{1}, {-1}})));
    for_box(2, -12, 12, [&](const IntVector& b) { CHECK(bs_eval(d, b) == (b[1] == -b[0] && b[0] >= 0 ? 1 : 0)); });

    auto e = build_CA(DMInstance::make(im({{2}})));
    for (long b = -12; b <= 12; ++b) CHECK(bs_eval(e, iv({b})) == (b >= 0 && b % 2 == 0 ? 1 : 0));
  }

  TEST_CASE("build_CA rejects non-pointed matrices") {
    auto inst = DMInstance::make(im({{1, -1}}));
    CHECK_FALSE(inst.certificate.pointed);
    CHECK_THROWS_WITH_AS(build_CA(inst), doctest::Contains("condition (35) violated"), PreconditionError);
  }

  TEST_CASE("random pointed matrices agree with the oracle and C_A(0) = 1") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 8; ++trial) {
      std::size_t t = 1 + trial % 2, n = 1 + trial % 3;
      auto inst = DMInstance::make(random_pointed(rng, t, n));
      auto c = build_CA(inst);
      CHECK(bs_eval(c, IntVector(t, Integer(0))) == 1);
      long hi = t == 1 ? 12 : 8;
      CHECK_MESSAGE(count_differences(t, -hi, hi, [&](const IntVector& b) -> Rational { return bs_eval(c, b); },
                                      [&](const IntVector& b) -> Rational {
                                        return Rational(oracle_count_pointed(inst.matrix, b, inst.h));
                                      }) == 0,
                    "trial ", trial);
    }
  }

  TEST_CASE("swapping columns keeps C_A") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 4; ++trial) {
      auto a = random_pointed(rng, 2, 3);
      IntMatrix s = a;
      for (auto& row : s) std::swap(row[0], row[1]);
      auto c1 = build_CA(DMInstance::make(a));
      auto c2 = build_CA(DMInstance::make(s));
      CHECK(count_differences(2, -8, 8, [&](const IntVector& b) -> Rational { return bs_eval(c1, b); },
                              [&](const IntVector& b) -> Rational { return bs_eval(c2, b); }) == 0);
    }
  }
}
